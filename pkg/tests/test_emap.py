import pytest

from tauseq.errors import Incompatible
from tauseq.emap import engine_for
from tauseq.universe import ModuleUniverse, StrIndec, StrObj, ZERO_OBJ
from tauseq.wide import ambient_context, compatible_in_context, context_of, rel_str_indecs


@pytest.fixture(scope="module")
def u2(a2):
    return ModuleUniverse(a2)


@pytest.fixture(scope="module")
def u3r(a3rad2):
    return ModuleUniverse(a3rad2)


def ids(u, *labels):
    return tuple(u.id_of_label(x) for x in labels)


def test_e_map_module_case(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    amb = ambient_context(u2)
    e = engine_for(u2)
    # P1 not generated by S2: quotient by the socle is S1
    assert e.e_map(amb, StrObj.make([s2]), StrIndec(p1, 0)) == StrIndec(s1, 0)
    # trace of S1 in P1 is zero, so P1 passes through unchanged
    assert e.e_map(amb, StrObj.make([s1]), StrIndec(p1, 0)) == StrIndec(p1, 0)


def test_e_map_shifted_case(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    amb = ambient_context(u2)
    e = engine_for(u2)
    # S1 lies in Gen P1, so it reduces to a shifted relative projective
    assert e.e_map(amb, StrObj.make([p1]), StrIndec(s1, 0)) == StrIndec(s2, 1)
    # shifted arguments always take the matching route
    assert e.e_map(amb, StrObj.make([s1]), StrIndec(s2, 1)) == StrIndec(p1, 1)


def test_e_map_zero_object_is_identity(u2):
    amb = ambient_context(u2)
    e = engine_for(u2)
    for x in rel_str_indecs(u2, amb):
        assert e.e_map(amb, ZERO_OBJ, x) == x


def test_e_map_incompatible(u2):
    s1, s2 = ids(u2, "S1", "S2")
    amb = ambient_context(u2)
    e = engine_for(u2)
    with pytest.raises(Incompatible):
        e.e_map(amb, StrObj.make([s1]), StrIndec(s2, 0))
    with pytest.raises(Incompatible):
        e.e_map(amb, StrObj.make([s1]), StrIndec(s1, 0))


def test_e_inverse_round_trips(u2):
    amb = ambient_context(u2)
    e = engine_for(u2)
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    assert e.e_inverse(amb, StrObj.make([s2]), StrIndec(s1, 0)) == StrIndec(p1, 0)
    assert e.e_inverse(amb, StrObj.make([p1]), StrIndec(s2, 1)) == StrIndec(s1, 0)
    assert e.e_inverse(amb, ZERO_OBJ, StrIndec(p1, 0)) == StrIndec(p1, 0)


def test_e_map_is_bijective_onto_target(u2, u3r):
    # for every support object T, E is a bijection from the compatible
    # indecomposables onto the indecomposable support objects of J(T)
    for u in (u2, u3r):
        amb = ambient_context(u)
        e = engine_for(u)
        for t in u.all_support_objects():
            target = context_of(u, amb, t)
            domain = [x for x in rel_str_indecs(u, amb)
                      if compatible_in_context(u, amb, t, x)]
            image = [e.e_map(amb, t, x) for x in domain]
            assert len(set(image)) == len(image)
            assert sorted(image) == sorted(rel_str_indecs(u, target))


def test_fault_injection_changes_output(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    amb = ambient_context(u2)
    e = engine_for(u2)
    key = e.key(amb, StrObj.make([s2]), StrIndec(p1, 0))
    honest = e.e_map(amb, StrObj.make([s2]), StrIndec(p1, 0))
    e.inject_fault(key, StrIndec(s2, 1))
    try:
        assert e.e_map(amb, StrObj.make([s2]), StrIndec(p1, 0)) == StrIndec(s2, 1)
    finally:
        e.clear_faults()
    assert e.e_map(amb, StrObj.make([s2]), StrIndec(p1, 0)) == honest
