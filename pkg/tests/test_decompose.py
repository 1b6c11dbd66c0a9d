from tauseq.decompose import decompose, delta, is_isomorphic, indecomposable_parts
from tauseq.fields import FieldSpec
from tauseq.linalg import Mat
from tauseq.modules import Rep, direct_sum, projective, simple
from tauseq.quiver import Quiver, build_algebra


def test_block_diagonal_splits(a2):
    p1, s2 = projective(a2, 0), simple(a2, 1)
    m, _, _ = direct_sum([p1, s2])
    dec = decompose(m)
    assert delta(m) == 2
    dims = sorted(part.dims for part, _ in dec for _ in range(1))
    assert dims == [(0, 1), (1, 1)]


def test_indecomposable_with_nonzero_arrow(a2):
    m = Rep(a2, (1, 1), (Mat.from_rows(a2.field, [[1]]),))
    assert delta(m) == 1


def test_zero_arrow_module_splits(a2):
    m = Rep(a2, (1, 1), (Mat.from_rows(a2.field, [[0]]),))
    dec = decompose(m)
    assert delta(m) == 2
    assert sorted(part.dims for part, _ in dec) == [(0, 1), (1, 0)]


def test_square_of_simple_splits(a2):
    s1 = simple(a2, 0)
    m, _, _ = direct_sum([s1, s1])
    dec = decompose(m)
    assert len(dec) == 1
    part, mult = dec[0]
    assert mult == 2 and part.dims == (1, 0)


def test_twisted_double_splits(a2):
    # dims (2,2), arrow acting by an invertible non-diagonal matrix: P1 + P1
    m = Rep(a2, (2, 2), (Mat.from_rows(a2.field, [[1, 1], [0, 1]]),))
    dec = decompose(m)
    assert len(dec) == 1 and dec[0][1] == 2
    assert is_isomorphic(dec[0][0], projective(a2, 0))


def test_rank_one_arrow_on_two_two(a2):
    # arrow of rank 1 on dims (2,2): P1 + S1 + S2
    m = Rep(a2, (2, 2), (Mat.from_rows(a2.field, [[1, 0], [0, 0]]),))
    parts = sorted(p.dims for p in indecomposable_parts(m))
    assert parts == [(0, 1), (1, 0), (1, 1)]


def test_decompose_over_prime_field():
    q = Quiver(["1", "2"], [("a", "1", "2")])
    alg = build_algebra(q, FieldSpec(3))
    m = Rep(alg, (2, 2), (Mat.from_rows(alg.field, [[1, 2], [0, 1]]),))
    dec = decompose(m)
    assert len(dec) == 1 and dec[0][1] == 2


def test_iso_invariance_under_base_change(a2):
    f = a2.field
    m = Rep(a2, (2, 2), (Mat.from_rows(f, [[1, 1], [0, 1]]),))
    # conjugated copy: replace arrow matrix A by Q A P^-1 for invertible P, Q
    p = Mat.from_rows(f, [[1, 2], [1, 3]])
    qm = Mat.from_rows(f, [[2, 1], [1, 1]])
    from tauseq import linalg
    a = qm.mul(m.mats[0]).mul(linalg.inverse(p))
    m2 = Rep(a2, (2, 2), (a,))
    assert is_isomorphic(m, m2)
    d1 = sorted(part.dims for part in indecomposable_parts(m))
    d2 = sorted(part.dims for part in indecomposable_parts(m2))
    assert d1 == d2


def test_not_isomorphic_different_structure(a2):
    m = Rep(a2, (1, 1), (Mat.from_rows(a2.field, [[1]]),))
    n = Rep(a2, (1, 1), (Mat.from_rows(a2.field, [[0]]),))
    assert not is_isomorphic(m, n)


def test_kronecker_style_end_ring():
    # two arrows between two vertices; the module with actions (1, lambda)
    # for distinct lambda are pairwise non-isomorphic indecomposables
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    alg = build_algebra(q, FieldSpec(0))
    f = alg.field

    def reg(lam):
        return Rep(alg, (1, 1), (Mat.from_rows(f, [[1]]), Mat.from_rows(f, [[lam]])))

    assert delta(reg(0)) == 1
    assert not is_isomorphic(reg(0), reg(1))
    m, _, _ = direct_sum([reg(0), reg(1)])
    assert delta(m) == 2
