"""Finite-dimensional representations of a bound quiver algebra.

A Rep assigns a vector space dimension to each vertex and an exact matrix to
each arrow (target-dim x source-dim, acting on column vectors).  Morphisms
are tuples of vertex matrices satisfying the commuting-square condition.
All constructions here (kernels, images, traces, covers) return explicit
representations together with the structural morphisms.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from tauseq import linalg
from tauseq.errors import AlgebraMismatch, UnknownVertex
from tauseq.linalg import Mat
from tauseq.quiver import BoundQuiverAlgebra, Path, opposite


class Rep:
    """A representation: per-vertex dimensions plus one matrix per arrow."""

    __slots__ = ("algebra", "dims", "mats")

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int],
                 mats: Sequence[Mat], validate: bool = True):
        self.algebra = algebra
        self.dims: Tuple[int, ...] = tuple(dims)
        self.mats: Tuple[Mat, ...] = tuple(mats)
        if validate:
            self._validate()

    def _validate(self):
        q = self.algebra.quiver
        if len(self.dims) != q.num_vertices or len(self.mats) != len(q.arrows):
            raise ValueError("dimension vector / arrow matrix count mismatch")
        for i, a in enumerate(q.arrows):
            m = self.mats[i]
            if m.rows != self.dims[a.target] or m.cols != self.dims[a.source]:
                raise ValueError("arrow %r matrix has shape %dx%d, expected %dx%d"
                                 % (a.name, m.rows, m.cols,
                                    self.dims[a.target], self.dims[a.source]))
        for rel in self.algebra.relations:
            if not self.path_action_arrows(rel).is_zero():
                raise ValueError("relation %r does not act by zero" % (rel,))

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def path_action_arrows(self, arrows: Tuple[int, ...]) -> Mat:
        q = self.algebra.quiver
        src = q.arrows[arrows[0]].source
        m = Mat.identity(self.algebra.field, self.dims[src])
        for ai in arrows:
            m = self.mats[ai].mul(m)
        return m

    def path_action(self, p: Path) -> Mat:
        if not p.arrows:
            return Mat.identity(self.algebra.field, self.dims[p.vertex])
        return self.path_action_arrows(p.arrows)

    def __eq__(self, other):
        # structural equality, not isomorphism
        return (isinstance(other, Rep) and self.algebra is other.algebra
                and self.dims == other.dims and list(self.mats) == list(other.mats))

    def __repr__(self):
        return "Rep(dims=%r)" % (self.dims,)


class RepMorphism:
    """A morphism of representations: one matrix per vertex, squares commute."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source: Rep, target: Rep, maps: Sequence[Mat], validate: bool = True):
        self.source = source
        self.target = target
        self.maps: Tuple[Mat, ...] = tuple(maps)
        if validate:
            self._validate()

    def _validate(self):
        if self.source.algebra is not self.target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        q = self.source.algebra.quiver
        for v in range(q.num_vertices):
            m = self.maps[v]
            if m.rows != self.target.dims[v] or m.cols != self.source.dims[v]:
                raise ValueError("vertex %d map has wrong shape" % v)
        for i, a in enumerate(q.arrows):
            lhs = self.target.mats[i].mul(self.maps[a.source])
            rhs = self.maps[a.target].mul(self.source.mats[i])
            if lhs != rhs:
                raise ValueError("square at arrow %r does not commute" % a.name)

    def compose(self, first: "RepMorphism") -> "RepMorphism":
        """self after first."""
        if first.target is not self.source and first.target != self.source:
            raise ValueError("composition mismatch")
        return RepMorphism(first.source, self.target,
                           [s.mul(f) for s, f in zip(self.maps, first.maps)],
                           validate=False)

    def add(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           [a.add(b) for a, b in zip(self.maps, other.maps)], validate=False)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           [m.scale(c) for m in self.maps], validate=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.maps)

    def is_iso(self) -> bool:
        return (self.source.dims == self.target.dims
                and all(linalg.is_invertible(m) for m in self.maps))

    def __repr__(self):
        return "RepMorphism(%r -> %r)" % (self.source.dims, self.target.dims)


# -- basic constructors --

def zero_rep(algebra: BoundQuiverAlgebra) -> Rep:
    q = algebra.quiver
    return Rep(algebra, [0] * q.num_vertices,
               [Mat.zeros(algebra.field, 0, 0) for _ in q.arrows], validate=False)


def simple(algebra: BoundQuiverAlgebra, v: int) -> Rep:
    q = algebra.quiver
    if not 0 <= v < q.num_vertices:
        raise UnknownVertex("no vertex with index %d" % v)
    dims = [1 if w == v else 0 for w in range(q.num_vertices)]
    mats = [Mat.zeros(algebra.field, dims[a.target], dims[a.source]) for a in q.arrows]
    return Rep(algebra, dims, mats, validate=False)


def projective(algebra: BoundQuiverAlgebra, v: int) -> Rep:
    """The indecomposable projective at v, with basis the paths leaving v.

    The basis at vertex w is paths_between(v, w) in global path order; the
    stationary path e_v sorts first, so the generator is basis vector 0 of
    the vertex-v block.
    """
    q = algebra.quiver
    if not 0 <= v < q.num_vertices:
        raise UnknownVertex("no vertex with index %d" % v)
    cache = algebra._cache.setdefault("projectives", {})
    if v in cache:
        return cache[v]
    basis = {w: algebra.paths_between(v, w) for w in range(q.num_vertices)}
    pos = {w: {p: i for i, p in enumerate(basis[w])} for w in range(q.num_vertices)}
    dims = [len(basis[w]) for w in range(q.num_vertices)]
    mats = []
    for a in q.arrows:
        m = Mat.zeros(algebra.field, dims[a.target], dims[a.source])
        arrow_path = Path((q.arrow_index(a.name),))
        for j, p in enumerate(basis[a.source]):
            comp = algebra.compose(p, arrow_path)
            if comp is not None:
                m.data[pos[a.target][comp]][j] = algebra.field.one
        mats.append(m)
    rep = Rep(algebra, dims, mats)
    cache[v] = rep
    return rep


def direct_sum(reps: Sequence[Rep]) -> Tuple[Rep, List[RepMorphism], List[RepMorphism]]:
    """Direct sum with the block embeddings and projections."""
    if not reps:
        raise ValueError("empty direct sum needs an algebra; use zero_rep")
    algebra = reps[0].algebra
    f = algebra.field
    q = algebra.quiver
    nv = q.num_vertices
    dims = [sum(r.dims[v] for r in reps) for v in range(nv)]
    mats = []
    for i in range(len(q.arrows)):
        mats.append(linalg.block_diag(f, [r.mats[i] for r in reps]))
    total = Rep(algebra, dims, mats, validate=False)
    embeds, projs = [], []
    offsets = [0] * nv
    for r in reps:
        emb, prj = [], []
        for v in range(nv):
            e = Mat.zeros(f, dims[v], r.dims[v])
            p = Mat.zeros(f, r.dims[v], dims[v])
            for k in range(r.dims[v]):
                e.data[offsets[v] + k][k] = f.one
                p.data[k][offsets[v] + k] = f.one
            emb.append(e)
            prj.append(p)
        embeds.append(RepMorphism(r, total, emb, validate=False))
        projs.append(RepMorphism(total, r, prj, validate=False))
        for v in range(nv):
            offsets[v] += r.dims[v]
    return total, embeds, projs


# -- hom spaces --

def hom_basis(m: Rep, n: Rep) -> List[RepMorphism]:
    """A basis of Hom(m, n), solved from the commuting-square linear system."""
    if m.algebra is not n.algebra:
        raise AlgebraMismatch("hom between modules over different algebras")
    algebra = m.algebra
    f = algebra.field
    q = algebra.quiver
    nv = q.num_vertices
    # unknowns: row-major entries of each vertex map f_v (n.dims[v] x m.dims[v])
    offsets = []
    total = 0
    for v in range(nv):
        offsets.append(total)
        total += n.dims[v] * m.dims[v]
    if total == 0:
        return []

    def var(v: int, i: int, j: int) -> int:
        return offsets[v] + i * m.dims[v] + j

    rows: List[list] = []
    zero_row = [f.zero] * total
    for ai, a in enumerate(q.arrows):
        s, t = a.source, a.target
        na, ma = n.mats[ai], m.mats[ai]
        # (n_a f_s - f_t m_a)[i][j] = 0 for all i < n.dims[t], j < m.dims[s]
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                row = zero_row[:]
                for k in range(n.dims[s]):
                    c = na.data[i][k]
                    if c != 0:
                        row[var(s, k, j)] = f.add(row[var(s, k, j)], c)
                for k in range(m.dims[t]):
                    c = ma.data[k][j]
                    if c != 0:
                        row[var(t, i, k)] = f.sub(row[var(t, i, k)], c)
                if any(x != 0 for x in row):
                    rows.append(row)
    if rows:
        ker = linalg.solve_kernel(Mat(f, len(rows), total, rows))
    else:
        ker = Mat.identity(f, total)
    out = []
    for c in range(ker.cols):
        maps = []
        for v in range(nv):
            mv = Mat.zeros(f, n.dims[v], m.dims[v])
            for i in range(n.dims[v]):
                for j in range(m.dims[v]):
                    mv.data[i][j] = ker.data[var(v, i, j)][c]
            maps.append(mv)
        out.append(RepMorphism(m, n, maps, validate=False))
    return out


def hom_dim(m: Rep, n: Rep) -> int:
    return len(hom_basis(m, n))


# -- submodules, quotients, kernels, images --

def submodule_from_spans(x: Rep, spans: List[Mat]) -> Tuple[Rep, RepMorphism]:
    """The submodule of x spanned vertexwise by the given column spans.

    The spans must be arrow stable; the induced arrow actions are solved
    exactly and an inconsistency raises.
    """
    algebra = x.algebra
    f = algebra.field
    q = algebra.quiver
    bases = [linalg.column_space_basis(s) for s in spans]
    dims = [b.cols for b in bases]
    mats = []
    for ai, a in enumerate(q.arrows):
        rhs = x.mats[ai].mul(bases[a.source])
        sol = linalg.solve(bases[a.target], rhs)
        if sol is None:
            raise ValueError("spans are not arrow stable")
        mats.append(sol)
    sub = Rep(algebra, dims, mats, validate=False)
    incl = RepMorphism(sub, x, bases, validate=False)
    return sub, incl


def quotient(x: Rep, incl: RepMorphism) -> Tuple[Rep, RepMorphism]:
    """Quotient of x by the image of incl, with the projection morphism."""
    algebra = x.algebra
    f = algebra.field
    q = algebra.quiver
    projs = []
    dims = []
    for v in range(q.num_vertices):
        _, _, qv = linalg.rank_image_cokernel(incl.maps[v])
        projs.append(qv)
        dims.append(qv.rows)
    mats = []
    for ai, a in enumerate(q.arrows):
        # induced map c with c q_s = q_t x_a; solve via a right inverse of q_s
        qs, qt = projs[a.source], projs[a.target]
        rhs = qt.mul(x.mats[ai])
        if qs.rows == 0:
            mats.append(Mat.zeros(f, dims[a.target], 0))
            continue
        rinv = linalg.solve(qs, Mat.identity(f, qs.rows))
        if rinv is None:
            raise ValueError("cokernel projection is not surjective")
        mats.append(rhs.mul(rinv))
    quo = Rep(algebra, dims, mats, validate=False)
    proj = RepMorphism(x, quo, projs, validate=False)
    return quo, proj


def kernel(f_mor: RepMorphism) -> Tuple[Rep, RepMorphism]:
    spans = [linalg.solve_kernel(m) for m in f_mor.maps]
    return submodule_from_spans(f_mor.source, spans)


def image(f_mor: RepMorphism) -> Tuple[Rep, RepMorphism, RepMorphism]:
    """Image as a submodule of the target, plus the co-restricted surjection."""
    img, incl = submodule_from_spans(f_mor.target, list(f_mor.maps))
    maps = []
    for v in range(len(incl.maps)):
        sol = linalg.solve(incl.maps[v], f_mor.maps[v])
        if sol is None:
            raise ValueError("image factorization failed")
        maps.append(sol)
    onto = RepMorphism(f_mor.source, img, maps, validate=False)
    return img, incl, onto


def cokernel(f_mor: RepMorphism) -> Tuple[Rep, RepMorphism]:
    img, incl = submodule_from_spans(f_mor.target, list(f_mor.maps))
    return quotient(f_mor.target, incl)


def trace(generators: Sequence[Rep], x: Rep) -> Tuple[Rep, RepMorphism]:
    """The trace of the generators in x: the sum of all morphism images.

    This is the largest submodule of x generated by the given modules.
    """
    algebra = x.algebra
    f = algebra.field
    q = algebra.quiver
    spans = [Mat.zeros(f, x.dims[v], 0) for v in range(q.num_vertices)]
    for g in generators:
        if g.algebra is not algebra:
            raise AlgebraMismatch("trace with modules over different algebras")
        for mor in hom_basis(g, x):
            for v in range(q.num_vertices):
                spans[v] = spans[v].hstack(mor.maps[v])
    return submodule_from_spans(x, spans)


# -- radical, top, projective cover, presentations --

def radical_spans(m: Rep) -> List[Mat]:
    """Vertexwise spanning sets of rad(m) = sum of all arrow images."""
    algebra = m.algebra
    f = algebra.field
    q = algebra.quiver
    spans = [Mat.zeros(f, m.dims[v], 0) for v in range(q.num_vertices)]
    for ai, a in enumerate(q.arrows):
        spans[a.target] = spans[a.target].hstack(m.mats[ai])
    return spans


def top_dims(m: Rep) -> List[int]:
    spans = radical_spans(m)
    return [m.dims[v] - linalg.rank(spans[v]) for v in range(len(m.dims))]


class Presentation:
    """A fixed-layout projective presentation p1 -> p0 -> m -> 0.

    p0_vertices / p1_vertices list the projective summands in block order, so
    generators and path coefficients can be read off positionally.
    """

    __slots__ = ("p0", "p1", "p0_vertices", "p1_vertices", "map", "cover")

    def __init__(self, p0, p1, p0_vertices, p1_vertices, map_mor, cover):
        self.p0 = p0
        self.p1 = p1
        self.p0_vertices = p0_vertices
        self.p1_vertices = p1_vertices
        self.map = map_mor          # p1 -> p0
        self.cover = cover          # p0 -> m


def projective_sum(algebra: BoundQuiverAlgebra, vertices: Sequence[int]) -> Rep:
    if not vertices:
        return zero_rep(algebra)
    total, _, _ = direct_sum([projective(algebra, v) for v in vertices])
    return total


def morphism_from_generator_images(p: Rep, p_vertices: Sequence[int],
                                   target: Rep, images: Sequence[list]) -> RepMorphism:
    """The module map out of a direct sum of projectives with the given
    generator images (one target vector, at the block vertex, per block).

    The block layout must be the one produced by projective_sum.
    """
    algebra = target.algebra
    f = algebra.field
    q = algebra.quiver
    nv = q.num_vertices
    maps = [Mat.zeros(f, target.dims[w], p.dims[w]) for w in range(nv)]
    offsets = [0] * nv
    for v, vec in zip(p_vertices, images):
        img_col = Mat.column(f, vec)
        for path in algebra.paths_from(v):
            w = path.target(q)
            col = target.path_action(path).mul(img_col)
            for i in range(target.dims[w]):
                maps[w].data[i][offsets[w]] = col.data[i][0]
            offsets[w] += 1
    return RepMorphism(p, target, maps)


def projective_cover(m: Rep) -> Tuple[Rep, RepMorphism, List[int]]:
    """Projective cover p ->> m; returns (p, cover map, summand vertices).

    The cover is assembled from lifts of a basis of top(m): complement
    vectors are chosen deterministically against the radical spans.
    """
    algebra = m.algebra
    f = algebra.field
    q = algebra.quiver
    nv = q.num_vertices
    rad = radical_spans(m)
    summand_vertices: List[int] = []
    lifts: List[list] = []
    for v in range(nv):
        basis = linalg.column_space_basis(rad[v])
        # standard complement: unit vectors at the non-pivot coordinates of basis^T
        _, pivots = linalg.rref(basis.transpose())
        for i in range(m.dims[v]):
            if i not in pivots:
                vec = [f.zero] * m.dims[v]
                vec[i] = f.one
                summand_vertices.append(v)
                lifts.append(vec)
    if not summand_vertices:
        p = zero_rep(algebra)
        cover = RepMorphism(p, m, [Mat.zeros(f, m.dims[v], 0) for v in range(nv)],
                            validate=False)
        return p, cover, []
    p = projective_sum(algebra, summand_vertices)
    cover = morphism_from_generator_images(p, summand_vertices, m, lifts)
    # Nakayama guarantees surjectivity; keep the check as an internal guard
    for v in range(nv):
        if linalg.rank(cover.maps[v]) != m.dims[v]:
            raise AssertionError("projective cover failed to surject")
    return p, cover, summand_vertices


def min_presentation(m: Rep) -> Presentation:
    p0, cover, v0 = projective_cover(m)
    k, incl = kernel(cover)
    p1, cover_k, v1 = projective_cover(k)
    f_mor = incl.compose(cover_k)
    return Presentation(p0, p1, v0, v1, f_mor, cover)


# -- duality --

def dualize(m: Rep) -> Rep:
    """The dual module over the opposite algebra (transpose all actions)."""
    algebra = m.algebra
    op = opposite(algebra)
    # arrow with the same name in op runs backwards; its action is the transpose
    mats = []
    for a_op in op.quiver.arrows:
        ai = algebra.quiver.arrow_index(a_op.name)
        mats.append(m.mats[ai].transpose())
    return Rep(op, m.dims, mats)
