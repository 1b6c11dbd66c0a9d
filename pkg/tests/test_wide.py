import pytest

from tauseq.errors import NotTauRigid
from tauseq.universe import ModuleUniverse, StrObj
from tauseq.wide import (
    all_torsion_classes, all_wide_subcategories, ambient_context, bongartz,
    co_bongartz, context_of, is_gen_minimal_summandwise, j_in_context,
    j_set_ambient_direct, rel_str_indecs, rel_tau_rigid, torsion_handle,
    torsion_t_f,
)


@pytest.fixture(scope="module")
def u2(a2):
    return ModuleUniverse(a2)


@pytest.fixture(scope="module")
def u3(a3):
    return ModuleUniverse(a3)


@pytest.fixture(scope="module")
def u3r(a3rad2):
    return ModuleUniverse(a3rad2)


def ids(u, *labels):
    return tuple(u.id_of_label(x) for x in labels)


def test_a2_torsion_class_count(u2):
    assert len(all_torsion_classes(u2)) == 5


def test_a3_torsion_class_count(u3):
    assert len(all_torsion_classes(u3)) == 14


def test_wide_counts_match_torsion_counts(u2, u3r):
    # over a tau-tilting finite algebra the two families biject
    assert len(all_wide_subcategories(u2)) == len(all_torsion_classes(u2)) == 5
    assert len(all_wide_subcategories(u3r)) == len(all_torsion_classes(u3r))


def test_ext_projectives_of_gen_p1(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    members = u2.gen_set({p1})
    assert members == frozenset({p1, s1})
    h = torsion_handle(u2, members)
    assert set(h.ext_proj) == {p1, s1}
    assert h.split == (p1,)
    assert h.nonsplit == (s1,)
    # P1 + S1 is tilting-size, so no projective is orthogonal to Gen P1:
    # Hom(P2, P1) is the socle embedding
    assert h.orthogonal_proj == ()


def test_ext_projectives_of_extremes(u2):
    everything = frozenset(range(len(u2.modules)))
    h = torsion_handle(u2, everything)
    assert set(h.split) == {u2.id_of_label("P1"), u2.id_of_label("S2")}
    assert h.orthogonal_proj == ()
    h0 = torsion_handle(u2, frozenset())
    assert h0.ext_proj == ()
    assert len(h0.orthogonal_proj) == 2


def test_torsion_t_f(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    t, f = torsion_t_f(u2, {s2}, u2.modules[p1])
    assert t.dims == (0, 1) and f.dims == (1, 0)
    t, f = torsion_t_f(u2, u2.gen_set({p1}), u2.modules[p1])
    assert f.total_dim == 0
    t, f = torsion_t_f(u2, {s1}, u2.modules[s2])
    assert t.total_dim == 0 and f.dims == (0, 1)


def test_bongartz_a2(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    assert set(bongartz(u2, (s1,))) == {s1, p1}
    assert set(bongartz(u2, (p1, s2))) == {p1, s2}
    ext_proj, orth = co_bongartz(u2, (s1,))
    assert set(ext_proj) == {s1} and set(orth) == {s2}


def test_bongartz_rejects_non_rigid(u3):
    s1, s2 = ids(u3, "S1", "S2")
    with pytest.raises(NotTauRigid):
        bongartz(u3, (s1, s2))  # Hom(S2, tau S1) != 0


def test_j_category_a2(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    amb = ambient_context(u2)
    ctx = context_of(u2, amb, StrObj.make([s1]))
    assert ctx.members == frozenset({p1})
    assert ctx.rank == 1
    # J of the whole algebra is zero
    ctx0 = context_of(u2, amb, StrObj.make([p1, s2]))
    assert ctx0.members == frozenset() and ctx0.rank == 0
    # Serre subcategory J(0, P2)
    serre = context_of(u2, amb, StrObj.make([], [s2]))
    assert serre.members == frozenset({s1})


def test_j_relative_matches_direct_ambient(u2, u3, u3r):
    for u in (u2, u3, u3r):
        amb = ambient_context(u)
        for t in u.all_support_objects():
            assert j_in_context(u, amb, t) == j_set_ambient_direct(u, t)


def test_rank_formula_everywhere(u2, u3, u3r):
    for u in (u2, u3, u3r):
        amb = ambient_context(u)
        for t in u.all_support_objects():
            ctx = context_of(u, amb, t)  # raises RankMismatch on failure
            assert ctx.rank == u.n - t.delta


def test_rel_tau_rigid_degenerate_case(u2):
    amb = ambient_context(u2)
    for i in range(len(u2.modules)):
        assert rel_tau_rigid(u2, amb, (i,)) == u2.tau_rigid[i]


def test_rel_str_indecs_of_serre_context(u3r):
    # J(S3) over the rad-square algebra: modules vanishing at vertex 3
    amb = ambient_context(u3r)
    s3 = u3r.id_of_label("S3")
    ctx = context_of(u3r, amb, StrObj.make([s3]))
    labels = sorted(u3r.labels[i] for i in ctx.members)
    assert labels == ["S1", "S2", "110#1"] or len(ctx.members) == 3
    xs = rel_str_indecs(u3r, ctx)
    assert len([x for x in xs if x.shift == 0]) == 3
    assert len([x for x in xs if x.shift == 1]) == 2


def test_gen_minimality_summandwise(u2):
    s1, s2, p1 = ids(u2, "S1", "S2", "P1")
    assert is_gen_minimal_summandwise(u2, (p1, s2))
    assert not is_gen_minimal_summandwise(u2, (p1, s1))
    assert is_gen_minimal_summandwise(u2, (s1,))
    assert is_gen_minimal_summandwise(u2, ())
