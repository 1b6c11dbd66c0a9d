"""Torsion classes, Ext-projectives, completions, and wide subcategories.

A wide subcategory is carried around as a Context: its indecomposable member
ids, its relative projectives, and its rank.  Every operation in this module
takes a context, so the ambient category is just the largest context and the
relative machinery needs no second code path.

Relative tau-rigidity never constructs a relative translate.  A module M in
a wide subcategory W is tau-rigid there exactly when Ext^1(M, -) vanishes on
Gen M intersected with W; vanishing of Hom(Z, tau_W M) is likewise read off
as Ext^1(M, -) vanishing on Gen Z intersected with W.  Both use honest Ext
groups, which agree with the relative ones because W is extension closed.
"""

from __future__ import annotations

import itertools
from typing import FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from tauseq.ar import extension_cocycle_space, extension_middle
from tauseq.errors import (
    Mismatch, NotInW, NotTauRigid, RankMismatch, TauSeqError,
)
from tauseq.modules import Rep, RepMorphism, hom_dim, kernel, cokernel, quotient, trace
from tauseq.universe import ModuleUniverse, StrIndec, StrObj


class Context(NamedTuple):
    """A wide subcategory: member ids, relative projective ids, rank."""
    members: FrozenSet[int]
    rel_proj: Tuple[int, ...]
    rank: int

    def key(self) -> FrozenSet[int]:
        return self.members


def ambient_context(u: ModuleUniverse) -> Context:
    key = "ambient_context"
    if key not in u.cache:
        members = frozenset(range(len(u.modules)))
        u.cache[key] = Context(members, tuple(sorted(u.proj_of_vertex)), u.n)
    return u.cache[key]


def rel_ext_projectives(u: ModuleUniverse, members: Iterable[int]) -> Tuple[int, ...]:
    """Ids in the set whose Ext^1 vanishes against the whole set."""
    ms = sorted(members)
    return tuple(q for q in ms if all(u.ext[q][y] == 0 for y in ms))


def context_from_members(u: ModuleUniverse, members: Iterable[int],
                         expected_rank: Optional[int] = None) -> Context:
    cache = u.cache.setdefault("contexts", {})
    key = frozenset(members)
    ctx = cache.get(key)
    if ctx is None:
        rel = rel_ext_projectives(u, key)
        ctx = Context(key, rel, len(rel))
        cache[key] = ctx
    if expected_rank is not None and ctx.rank != expected_rank:
        raise RankMismatch("wide subcategory has %d relative projectives, expected "
                           "rank %d" % (ctx.rank, expected_rank))
    return ctx


# --------------------------------------------------------------------------
# Gen, FiltGen and torsion classes
# --------------------------------------------------------------------------

def gen_in(u: ModuleUniverse, ctx: Context, ids: Iterable[int]) -> FrozenSet[int]:
    """Gen of the sum, intersected with the context."""
    return u.gen_set(ids) & ctx.members


def filtgen_in(u: ModuleUniverse, ctx: Context, ids: Iterable[int]) -> FrozenSet[int]:
    """Smallest torsion class of the context containing the given modules."""
    return frozenset(j for j in ctx.members if u.filtgen_contains(ids, j))


class TorsionHandle(NamedTuple):
    members: FrozenSet[int]
    ext_proj: Tuple[int, ...]
    split: Tuple[int, ...]
    nonsplit: Tuple[int, ...]
    orthogonal_proj: Tuple[int, ...]  # projectives with no maps into the class


def torsion_handle(u: ModuleUniverse, members: Iterable[int]) -> TorsionHandle:
    cache = u.cache.setdefault("torsion_handles", {})
    key = frozenset(members)
    if key in cache:
        return cache[key]
    ext_proj = rel_ext_projectives(u, key)
    split, nonsplit = [], []
    for q in ext_proj:
        others = key - {q}
        generated_by_others = bool(others) and u.gen_contains(others, q)
        (nonsplit if generated_by_others else split).append(q)
    orth = tuple(p for p in sorted(u.proj_of_vertex)
                 if all(u.hom[p][y] == 0 for y in sorted(key)))
    handle = TorsionHandle(key, ext_proj, tuple(split), tuple(nonsplit), orth)
    cache[key] = handle
    return handle


def torsion_t_f(u: ModuleUniverse, members: Iterable[int], m: Rep):
    """The canonical sequence 0 -> tM -> M -> fM -> 0 for the torsion class
    with the given indecomposable members; verified on return."""
    gens = [u.modules[i] for i in sorted(members)]
    if not gens:
        from tauseq.modules import zero_rep
        t = zero_rep(u.algebra)
        f_part = m
        return t, f_part
    t, incl = trace(gens, m)
    f_part, _ = quotient(m, incl)
    t_ids = u.identify_parts(t)
    if t_ids is None or not set(t_ids) <= set(members):
        raise Mismatch("torsion part fell outside the torsion class")
    for g in gens:
        if f_part.total_dim and hom_dim(g, f_part) != 0:
            raise Mismatch("torsion-free part receives maps from the class")
    return t, f_part


def perp_tau_members(u: ModuleUniverse, ids: Sequence[int]) -> FrozenSet[int]:
    """Members of the torsion class of modules with no maps into tau of the sum."""
    out = []
    for x in range(len(u.modules)):
        ok = True
        for m in ids:
            tm = u.tau_of[m]
            if tm is not None and u.hom[x][tm] != 0:
                ok = False
                break
        if ok:
            out.append(x)
    return frozenset(out)


def bongartz(u: ModuleUniverse, ids: Sequence[int]) -> Tuple[int, ...]:
    """Completion of a tau-rigid module via the Ext-projectives of the
    torsion class of everything not mapping into its translate."""
    for m in ids:
        if not u.tau_rigid[m]:
            raise NotTauRigid("module %s is not tau-rigid" % u.labels[m])
    if not rel_tau_rigid(u, ambient_context(u), tuple(ids)):
        raise NotTauRigid("the sum is not tau-rigid")
    members = perp_tau_members(u, ids)
    completion = rel_ext_projectives(u, members)
    if len(completion) != u.n or not set(ids) <= set(completion):
        raise Mismatch("completion is not a full tilting-size module containing "
                       "the input")
    return completion


def co_bongartz(u: ModuleUniverse, ids: Sequence[int]):
    """Ext-projectives of Gen of the sum, plus the orthogonal projectives."""
    for m in ids:
        if not u.tau_rigid[m]:
            raise NotTauRigid("module %s is not tau-rigid" % u.labels[m])
    members = u.gen_set(ids)
    handle = torsion_handle(u, members)
    if not set(ids) <= set(handle.ext_proj):
        raise Mismatch("input is not Ext-projective in its own Gen class")
    if len(handle.ext_proj) + len(handle.orthogonal_proj) != u.n:
        raise Mismatch("support-completion count violates the rank formula")
    return handle.ext_proj, handle.orthogonal_proj


# --------------------------------------------------------------------------
# relative rigidity and relative perpendicular categories
# --------------------------------------------------------------------------

def require_in_context(u: ModuleUniverse, ctx: Context, ids: Iterable[int]):
    for i in ids:
        if i not in ctx.members:
            raise NotInW("module %s lies outside the wide subcategory" % u.labels[i])


def rel_tau_rigid(u: ModuleUniverse, ctx: Context, ids: Sequence[int]) -> bool:
    """Relative tau-rigidity of the sum of the given modules in the context."""
    if not ids:
        return True
    require_in_context(u, ctx, ids)
    cache = u.cache.setdefault("rel_rigid", {})
    key = (ctx.members, tuple(sorted(ids)))
    if key in cache:
        return cache[key]
    targets = gen_in(u, ctx, ids)
    ok = all(u.ext[m][y] == 0 for m in ids for y in targets)
    cache[key] = ok
    return ok


def rel_perp_tau(u: ModuleUniverse, ctx: Context, ids: Sequence[int]) -> FrozenSet[int]:
    """Members z of the context with Hom(z, tau of the sum) = 0 relatively,
    detected as Ext^1(sum, Gen z within the context) = 0."""
    cache = u.cache.setdefault("rel_perp_tau", {})
    key = (ctx.members, tuple(sorted(ids)))
    if key in cache:
        return cache[key]
    out = []
    for z in sorted(ctx.members):
        targets = gen_in(u, ctx, (z,))
        if all(u.ext[m][y] == 0 for m in ids for y in targets):
            out.append(z)
    result = frozenset(out)
    cache[key] = result
    return result


def valid_rel_str_obj(u: ModuleUniverse, ctx: Context, t: StrObj) -> bool:
    """Is t a basic support object of the context?"""
    if len(set(t.mods)) != len(t.mods) or len(set(t.shifts)) != len(t.shifts):
        return False
    if not set(t.mods) <= ctx.members or not set(t.shifts) <= set(ctx.rel_proj):
        return False
    if not rel_tau_rigid(u, ctx, t.mods):
        return False
    for p in t.shifts:
        for m in t.mods:
            if u.hom[p][m] != 0:
                return False
    return True


def j_in_context(u: ModuleUniverse, ctx: Context, t: StrObj) -> FrozenSet[int]:
    """Members of the perpendicular wide subcategory of t inside the context."""
    perp = rel_perp_tau(u, ctx, t.mods)
    out = []
    for x in perp:
        if all(u.hom[m][x] == 0 for m in t.mods) and \
           all(u.hom[p][x] == 0 for p in t.shifts):
            out.append(x)
    return frozenset(out)


def context_of(u: ModuleUniverse, ctx: Context, t: StrObj,
               check_rank: bool = True) -> Context:
    """The wide subcategory J(t) relative to the context, with the rank check."""
    if not valid_rel_str_obj(u, ctx, t):
        raise NotTauRigid("object %s is not support tau-rigid in the context"
                          % u.label_of_obj(t))
    members = j_in_context(u, ctx, t)
    expected = ctx.rank - t.delta if check_rank else None
    return context_from_members(u, members, expected)


def j_set_ambient_direct(u: ModuleUniverse, t: StrObj) -> FrozenSet[int]:
    """Ambient J(M, P) straight from the hom and translate tables; used to
    cross-check the relative route."""
    out = []
    for x in range(len(u.modules)):
        if any(u.hom[m][x] != 0 for m in t.mods):
            continue
        if any(u.hom[p][x] != 0 for p in t.shifts):
            continue
        ok = True
        for m in t.mods:
            tm = u.tau_of[m]
            if tm is not None and u.hom[x][tm] != 0:
                ok = False
                break
        if ok:
            out.append(x)
    return frozenset(out)


def rel_str_indecs(u: ModuleUniverse, ctx: Context) -> List[StrIndec]:
    """Indecomposable support objects of the context: relatively rigid modules
    plus shifted relative projectives."""
    cache = u.cache.setdefault("rel_str_indecs", {})
    key = ctx.members
    if key in cache:
        return cache[key]
    out = [StrIndec(i, 0) for i in sorted(ctx.members) if rel_tau_rigid(u, ctx, (i,))]
    out += [StrIndec(p, 1) for p in ctx.rel_proj]
    cache[key] = out
    return out


def compatible_in_context(u: ModuleUniverse, ctx: Context, t: StrObj,
                          x: StrIndec) -> bool:
    return valid_rel_str_obj(u, ctx, t.with_indec(x))


# --------------------------------------------------------------------------
# gen-minimality (summand definition; the characterization lives in sequences)
# --------------------------------------------------------------------------

def is_gen_minimal_summandwise(u: ModuleUniverse, ids: Sequence[int]) -> bool:
    """No summand is generated by the others."""
    idset = tuple(sorted(ids))
    for i in idset:
        others = frozenset(j for j in idset if j != i)
        if others and u.gen_contains(others, i):
            return False
    return True


# --------------------------------------------------------------------------
# brute-force closure enumeration (torsion classes and wide subcategories)
# --------------------------------------------------------------------------

def all_torsion_classes(u: ModuleUniverse) -> List[FrozenSet[int]]:
    """Every torsion class.

    The smallest torsion class containing a subset is its filtration closure,
    decided exactly by the iterated trace-quotient test; every torsion class
    is its own closure, so the image of that operator over all subsets is the
    complete list.
    """
    key = "all_torsion_classes"
    if key in u.cache:
        return u.cache[key]
    count = len(u.modules)
    if count > 16:
        raise TauSeqError("torsion-class brute force is guarded at 16 indecomposables")
    seen = set()
    for bits in range(2 ** count):
        members = frozenset(i for i in range(count) if bits >> i & 1)
        seen.add(u.filtgen_set(members))
    out = sorted(seen, key=lambda s: (len(s), sorted(s)))
    u.cache[key] = out
    return out


def _sum_with_maps(u: ModuleUniverse, ids: Tuple[int, ...]):
    cache = u.cache.setdefault("sum_with_maps", {})
    if ids not in cache:
        from tauseq.modules import direct_sum
        reps = [u.modules[i] for i in ids]
        cache[ids] = direct_sum(reps)
    return cache[ids]


def _sum_hom_basis(u: ModuleUniverse, src_ids: Tuple[int, ...],
                   tgt_ids: Tuple[int, ...]):
    """Basis of Hom between two sums, assembled blockwise from the cached
    pairwise bases (no fresh linear solving)."""
    cache = u.cache.setdefault("sum_hom_basis", {})
    key = (src_ids, tgt_ids)
    if key in cache:
        return cache[key]
    src, _, src_projs = _sum_with_maps(u, src_ids)
    tgt, tgt_embeds, _ = _sum_with_maps(u, tgt_ids)
    basis = []
    for i, si in enumerate(src_ids):
        for j, tj in enumerate(tgt_ids):
            for g in u._hom_bases[(si, tj)]:
                basis.append(tgt_embeds[j].compose(
                    RepMorphism(u.modules[si], u.modules[tj], g.maps, validate=False)
                ).compose(src_projs[i]))
    cache[key] = (src, tgt, basis)
    return cache[key]


def _pairwise_cocycles(u: ModuleUniverse, quot_id: int, sub_id: int):
    cache = u.cache.setdefault("pairwise_cocycles", {})
    key = (quot_id, sub_id)
    if key not in cache:
        cache[key] = extension_cocycle_space(u.modules[quot_id], u.modules[sub_id])[0]
    return cache[key]


def _extension_parts_single(u: ModuleUniverse, quot_id: int, sub_id: int) -> FrozenSet[int]:
    """Ids among middles of extensions of one indecomposable by another,
    over small integer cocycle combinations."""
    cache = u.cache.setdefault("extension_parts", {})
    key = (quot_id, sub_id)
    if key in cache:
        return cache[key]
    b = u.modules[quot_id]
    a = u.modules[sub_id]
    cocycles = _pairwise_cocycles(u, quot_id, sub_id)
    e = len(cocycles)
    seen = set()
    if e:
        if e > 6:
            raise TauSeqError("extension sweep guard: cocycle basis of size %d" % e)
        coeff_range = (0, 1, -1) if e <= 3 else (0, 1)
        for coeffs in itertools.product(coeff_range, repeat=e):
            if not any(coeffs):
                continue
            blocks = None
            for c, z in zip(coeffs, cocycles):
                if c == 0:
                    continue
                term = [m.scale(c) for m in z]
                blocks = term if blocks is None else \
                    [x.add(y) for x, y in zip(blocks, term)]
            mid = extension_middle(b, a, blocks)
            parts = u.identify_parts(mid)
            if parts is None:
                raise Mismatch("extension middle fell outside the enumeration")
            seen.update(parts)
    result = frozenset(seen)
    cache[key] = result
    return result


def _is_extension_closed_singles(u: ModuleUniverse, members: FrozenSet[int]) -> bool:
    for quot in members:
        for sub in members:
            if u.ext[quot][sub] == 0:
                continue
            if not _extension_parts_single(u, quot, sub) <= members:
                return False
    return True


def _kernel_cokernel_parts(u: ModuleUniverse, src_ids: Tuple[int, ...],
                           tgt_ids: Tuple[int, ...]) -> FrozenSet[int]:
    """Ids among kernels and cokernels of swept morphisms between two sums."""
    cache = u.cache.setdefault("kernel_cokernel_parts", {})
    key = (src_ids, tgt_ids)
    if key in cache:
        return cache[key]
    _, _, basis = _sum_hom_basis(u, src_ids, tgt_ids)
    e = len(basis)
    seen = set()
    if e:
        if e > 8:
            raise TauSeqError("morphism sweep guard: hom basis of size %d" % e)
        coeff_range = (0, 1, -1) if e <= 3 else (0, 1)
        for coeffs in itertools.product(coeff_range, repeat=e):
            if not any(coeffs):
                continue
            f = None
            for c, g in zip(coeffs, basis):
                if c == 0:
                    continue
                term = g.scale(c)
                f = term if f is None else f.add(term)
            k, _ = kernel(f)
            parts = u.identify_parts(k)
            if parts is None:
                raise Mismatch("kernel fell outside the enumeration")
            seen.update(parts)
            c_rep, _ = cokernel(f)
            parts = u.identify_parts(c_rep)
            if parts is None:
                raise Mismatch("cokernel fell outside the enumeration")
            seen.update(parts)
    result = frozenset(seen)
    cache[key] = result
    return result


def _is_kernel_cokernel_closed(u: ModuleUniverse, members: FrozenSet[int]) -> bool:
    ms = sorted(members)
    singles = [(x,) for x in ms]
    pairs = [tuple(sorted(p)) for p in itertools.combinations_with_replacement(ms, 2)]
    shapes = [(s, t) for s in singles for t in singles] + \
             [(p, t) for p in pairs for t in singles] + \
             [(s, p) for s in singles for p in pairs]
    for src, tgt in shapes:
        if all(u.hom[a][b] == 0 for a in src for b in tgt):
            continue
        if not _kernel_cokernel_parts(u, src, tgt) <= members:
            return False
    return True


def all_wide_subcategories(u: ModuleUniverse) -> List[FrozenSet[int]]:
    """Every wide subcategory, by brute-force closure testing over subsets.

    Closure is tested against swept morphisms and extension cocycles with
    small integer coefficients; true wide subcategories always pass, and any
    false positive is caught downstream by the comparison against the
    perpendicular-category list.
    """
    key = "all_wide_subcategories"
    if key in u.cache:
        return u.cache[key]
    count = len(u.modules)
    if count > 14:
        raise TauSeqError("wide-subcategory brute force is guarded at 14 indecomposables")
    out = []
    for bits in range(2 ** count):
        members = frozenset(i for i in range(count) if bits >> i & 1)
        if not _is_extension_closed_singles(u, members):
            continue
        if not _is_kernel_cokernel_closed(u, members):
            continue
        out.append(members)
    out.sort(key=lambda s: (len(s), sorted(s)))
    u.cache[key] = out
    return out
