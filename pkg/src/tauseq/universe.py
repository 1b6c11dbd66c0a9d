"""Enumeration of indecomposables and the cached tables built on them.

The enumeration builds every indecomposable as the middle of an extension of
a simple by a smaller module, sweeping small integer combinations of an
extension cocycle basis, and is certified afterwards: the count must be
stable one layer above the dimension cap, no indecomposable may touch the
cap, and the found set must be closed under tau, tau-minus, radicals of
projectives and socle quotients of injectives.  Counts pinned downstream all
sit on top of this certificate.

Canonical ids are indices into the sorted module list (total dimension, then
dimension vector, then discovery order); labels are dimension vectors plus a
disambiguating ordinal, for example "11#1".
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from tauseq import linalg
from tauseq.ar import (
    ext1_dim, extension_cocycle_space, extension_middle, is_injective_rep,
    is_projective_rep, tau, tau_minus,
)
from tauseq.decompose import indecomposable_parts, is_isomorphic
from tauseq.errors import BoundTooSmall, Mismatch, NotCertifiablyComplete
from tauseq.linalg import Mat
from tauseq.modules import (
    Rep, direct_sum, hom_basis, projective, quotient, radical_spans, simple,
    submodule_from_spans, trace,
)


class StrIndec(NamedTuple):
    """An indecomposable object: a module id, possibly shifted (projectives only)."""
    mod: int
    shift: int


class StrObj(NamedTuple):
    """A basic support object: sorted module ids plus sorted shifted projective ids."""
    mods: Tuple[int, ...]
    shifts: Tuple[int, ...]

    @staticmethod
    def make(mods: Sequence[int] = (), shifts: Sequence[int] = ()) -> "StrObj":
        return StrObj(tuple(sorted(mods)), tuple(sorted(shifts)))

    def combine(self, other: "StrObj") -> "StrObj":
        return StrObj.make(self.mods + other.mods, self.shifts + other.shifts)

    def with_indec(self, x: StrIndec) -> "StrObj":
        if x.shift:
            return StrObj.make(self.mods, self.shifts + (x.mod,))
        return StrObj.make(self.mods + (x.mod,), self.shifts)

    def indecs(self) -> List[StrIndec]:
        return [StrIndec(i, 0) for i in self.mods] + [StrIndec(i, 1) for i in self.shifts]

    @property
    def delta(self) -> int:
        return len(self.mods) + len(self.shifts)


ZERO_OBJ = StrObj((), ())


def _dims_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _label(dims: Sequence[int], ordinal: int) -> str:
    if all(d <= 9 for d in dims):
        body = "".join(str(d) for d in dims)
    else:
        body = ".".join(str(d) for d in dims)
    return "%s#%d" % (body, ordinal)


class _Budget:
    # guard rails so a runaway enumeration fails loudly instead of hanging
    MAX_MODULES = 400
    MAX_COCYCLE_BASIS = 6


class ModuleUniverse:
    """All indecomposables of a representation-finite bound quiver algebra,
    with hom, extension and translate tables keyed by canonical id."""

    def __init__(self, algebra, dim_bound: Optional[Sequence[int]] = None,
                 require_certificate: bool = True):
        self.algebra = algebra
        self.n = algebra.n
        self.field = algebra.field
        projs = [projective(algebra, v) for v in range(self.n)]
        if dim_bound is None:
            peak = max(max(p.dims) for p in projs)
            dim_bound = tuple(3 * max(peak, 1) for _ in range(self.n))
        self.dim_bound: Tuple[int, ...] = tuple(dim_bound)
        for p in projs:
            if not _dims_leq(p.dims, self.dim_bound):
                raise BoundTooSmall("projective with dimension vector %r exceeds the cap %r"
                                    % (p.dims, self.dim_bound))
        found, complete, reason = self._enumerate(tuple(b + 1 for b in self.dim_bound))
        inside = [m for m in found if _dims_leq(m.dims, self.dim_bound)]
        self.certificate: Dict[str, object] = {
            "dim_bound": list(self.dim_bound),
            "sweep_completed": complete,
            "stable_under_cap_plus_one": complete and len(inside) == len(found),
            "no_indecomposable_on_boundary": all(
                all(d < b for d, b in zip(m.dims, self.dim_bound)) for m in inside),
        }
        if reason:
            self.certificate["sweep_aborted_because"] = reason
        order = sorted(range(len(inside)), key=lambda i: (inside[i].total_dim,
                                                          inside[i].dims, i))
        self.modules: List[Rep] = [inside[i] for i in order]
        self.labels: List[str] = []
        seen: Dict[tuple, int] = {}
        for m in self.modules:
            seen[m.dims] = seen.get(m.dims, 0) + 1
            self.labels.append(_label(m.dims, seen[m.dims]))
        self._by_dims: Dict[tuple, List[int]] = {}
        for i, m in enumerate(self.modules):
            self._by_dims.setdefault(m.dims, []).append(i)
        self._build_tables()
        self._check_closure()
        self.certified = all(bool(v) for k, v in self.certificate.items()
                             if k not in ("dim_bound", "sweep_aborted_because"))
        if require_certificate and not self.certified:
            raise NotCertifiablyComplete(
                "enumeration not certified: %r; raise --dim-bound" % (self.certificate,))
        self._gen_cache: Dict[FrozenSet[int], FrozenSet[int]] = {}
        self._filtgen_cache: Dict[Tuple[FrozenSet[int], int], bool] = {}
        self.cache: Dict = {}  # shared memo space for the layers above

    # ------------------------------------------------------------------
    # enumeration
    # ------------------------------------------------------------------

    def _enumerate(self, cap: Tuple[int, ...]) -> Tuple[List[Rep], bool, str]:
        """Sweep up to the cap; returns (found, sweep completed, abort reason).

        The sweep aborts as soon as an indecomposable enters the shell above
        dim_bound, since at that point the stability certificate is already
        forfeit and further work cannot restore it.
        """
        algebra = self.algebra
        found: List[Rep] = []
        buckets: Dict[tuple, List[Rep]] = {}

        class _Abort(Exception):
            pass

        abort_reason = [""]

        def add(rep: Rep) -> bool:
            key = rep.dims
            for other in buckets.get(key, []):
                if is_isomorphic(rep, other):
                    return False
            buckets.setdefault(key, []).append(rep)
            found.append(rep)
            if len(found) > _Budget.MAX_MODULES:
                abort_reason[0] = ("more than %d indecomposables"
                                   % _Budget.MAX_MODULES)
                raise _Abort
            if not _dims_leq(rep.dims, self.dim_bound):
                abort_reason[0] = ("indecomposable with dimension vector %r "
                                   "above the cap %r" % (rep.dims, self.dim_bound))
                raise _Abort
            return True

        # A new indecomposable E of total dimension t is the middle of some
        # 0 -> U -> E -> S -> 0 with S simple and U its maximal submodule;
        # indecomposability forces a nonzero class against every summand of
        # U, with multiplicity at most dim Ext^1(S, that summand).
        simples = [simple(algebra, v) for v in range(self.n)]
        ext_cache: Dict[Tuple[int, int], int] = {}

        def ext_to(sv: int, idx: int) -> int:
            key = (sv, idx)
            if key not in ext_cache:
                ext_cache[key] = ext1_dim(simples[sv], found[idx])
            return ext_cache[key]

        try:
            for s in simples:
                add(s)
            for v in range(self.n):
                p = projective(algebra, v)
                if _dims_leq(p.dims, cap):
                    for part in indecomposable_parts(p):
                        add(part)
            total_cap = sum(cap)
            for t in range(2, total_cap + 1):
                for sv, s in enumerate(simples):
                    allowed = [(idx, ext_to(sv, idx)) for idx in range(len(found))
                               if found[idx].total_dim <= t - 1]
                    allowed = [(idx, e) for idx, e in allowed if e > 0]
                    for combo in self._bounded_multisets(found, allowed, t - 1):
                        parts = [found[idx] for idx in combo]
                        u = parts[0] if len(parts) == 1 else direct_sum(parts)[0]
                        if not _dims_leq([a + b for a, b in zip(u.dims, s.dims)], cap):
                            continue
                        cocycles, _ = extension_cocycle_space(s, u)
                        e = len(cocycles)
                        if e == 0:
                            continue
                        if e > _Budget.MAX_COCYCLE_BASIS:
                            abort_reason[0] = ("extension space of dimension %d "
                                               "exceeds the sweep guard" % e)
                            raise _Abort
                        for coeffs in itertools.product((0, 1, -1), repeat=e):
                            if not any(coeffs):
                                continue
                            blocks = None
                            for c, z in zip(coeffs, cocycles):
                                if c == 0:
                                    continue
                                term = [m.scale(c) for m in z]
                                blocks = term if blocks is None else \
                                    [x.add(y) for x, y in zip(blocks, term)]
                            middle = extension_middle(s, u, blocks)
                            for part in indecomposable_parts(middle):
                                if part.total_dim == t and _dims_leq(part.dims, cap):
                                    add(part)
        except _Abort:
            return found, False, abort_reason[0]
        return found, True, ""

    @staticmethod
    def _bounded_multisets(found: List[Rep], allowed: List[Tuple[int, int]], total: int):
        """Multisets of module indices with prescribed total dimension and
        per-index multiplicity bounds (deterministic order)."""
        out: List[Tuple[int, ...]] = []

        def rec(pos: int, remaining: int, acc: List[int]):
            if remaining == 0:
                if acc:
                    out.append(tuple(acc))
                return
            for k in range(pos, len(allowed)):
                idx, bound = allowed[k]
                d = found[idx].total_dim
                for mult in range(1, bound + 1):
                    if mult * d > remaining:
                        break
                    rec(k + 1, remaining - mult * d, acc + [idx] * mult)

        rec(0, total, [])
        return out

    # ------------------------------------------------------------------
    # tables
    # ------------------------------------------------------------------

    def _build_tables(self):
        mods = self.modules
        count = len(mods)
        self.hom: List[List[int]] = [[0] * count for _ in range(count)]
        self._hom_bases: Dict[Tuple[int, int], list] = {}
        for i in range(count):
            for j in range(count):
                basis = hom_basis(mods[i], mods[j])
                self._hom_bases[(i, j)] = basis
                self.hom[i][j] = len(basis)
        self.is_proj: List[bool] = [is_projective_rep(m) for m in mods]
        self.is_inj: List[bool] = [is_injective_rep(m) for m in mods]
        self.proj_of_vertex: List[int] = []
        for v in range(self.n):
            pid = self.identify(projective(self.algebra, v))
            if pid is None:
                raise Mismatch("projective at vertex %d missing from the enumeration" % v)
            self.proj_of_vertex.append(pid)
        self.tau_of: List[Optional[int]] = []
        self.tau_unresolved: List[bool] = []
        for i, m in enumerate(mods):
            if self.is_proj[i]:
                self.tau_of.append(None)
                self.tau_unresolved.append(False)
                continue
            t = tau(m)
            parts = self.identify_parts(t)
            if parts is None or len(parts) != 1:
                # tolerated only on an uncertified sweep; recorded and the
                # module is treated as not rigid
                self.tau_of.append(None)
                self.tau_unresolved.append(True)
                continue
            self.tau_of.append(parts[0])
            self.tau_unresolved.append(False)
        self.tau_rigid: List[bool] = []
        for i in range(count):
            if self.tau_unresolved[i]:
                self.tau_rigid.append(False)
                continue
            ti = self.tau_of[i]
            self.tau_rigid.append(ti is None or self.hom[i][ti] == 0)
        if any(self.tau_unresolved):
            self.certificate["translate_table_complete"] = False
        self.ext: List[List[int]] = [[ext1_dim(mods[i], mods[j]) for j in range(count)]
                                     for i in range(count)]
        # per-vertex column spans of trace(M_i, M_j)
        self._trace_spans: Dict[Tuple[int, int], List[Mat]] = {}
        f = self.field
        for i in range(count):
            for j in range(count):
                spans = [Mat.zeros(f, mods[j].dims[v], 0) for v in range(self.n)]
                for mor in self._hom_bases[(i, j)]:
                    for v in range(self.n):
                        spans[v] = spans[v].hstack(mor.maps[v])
                self._trace_spans[(i, j)] = [linalg.column_space_basis(s) for s in spans]
        self.str_indecs: List[StrIndec] = \
            [StrIndec(i, 0) for i in range(count) if self.tau_rigid[i]] + \
            [StrIndec(i, 1) for i in range(count) if self.is_proj[i]]

    def _check_closure(self):
        ok_tau = ok_rad = True
        for i, m in enumerate(self.modules):
            if not self.is_proj[i]:
                if self.identify_parts(tau(m)) is None:
                    ok_tau = False
            if not self.is_inj[i]:
                if self.identify_parts(tau_minus(m)) is None:
                    ok_tau = False
        for v in range(self.n):
            p = projective(self.algebra, v)
            rad, _ = submodule_from_spans(p, radical_spans(p))
            if self.identify_parts(rad) is None:
                ok_rad = False
        for i, m in enumerate(self.modules):
            if self.is_inj[i]:
                soc_spans = []
                q = self.algebra.quiver
                for v in range(self.n):
                    outgoing = [ai for ai, a in enumerate(q.arrows) if a.source == v]
                    if outgoing:
                        stacked = m.mats[outgoing[0]]
                        for ai in outgoing[1:]:
                            stacked = stacked.vstack(m.mats[ai])
                        soc_spans.append(linalg.solve_kernel(stacked))
                    else:
                        soc_spans.append(Mat.identity(self.field, m.dims[v]))
                soc, incl = submodule_from_spans(m, soc_spans)
                quo, _ = quotient(m, incl)
                if self.identify_parts(quo) is None:
                    ok_rad = False
        self.certificate["closed_under_translates"] = ok_tau
        self.certificate["closed_under_radical_and_socle_quotients"] = ok_rad

    # ------------------------------------------------------------------
    # identification
    # ------------------------------------------------------------------

    def identify(self, rep: Rep) -> Optional[int]:
        """Canonical id of an indecomposable rep, or None if unknown."""
        for i in self._by_dims.get(rep.dims, []):
            if is_isomorphic(rep, self.modules[i]):
                return i
        return None

    def identify_parts(self, rep: Rep) -> Optional[List[int]]:
        """Sorted canonical ids (with multiplicity) of the summands, or None."""
        if rep.total_dim == 0:
            return []
        out = []
        for part in indecomposable_parts(rep):
            i = self.identify(part)
            if i is None:
                return None
            out.append(i)
        return sorted(out)

    def module_of(self, i: int) -> Rep:
        return self.modules[i]

    def label_of_indec(self, x: StrIndec) -> str:
        return self.labels[x.mod] + ("[1]" if x.shift else "")

    def label_of_obj(self, t: StrObj) -> str:
        parts = [self.labels[i] for i in t.mods] + \
                ["%s[1]" % self.labels[i] for i in t.shifts]
        return "(" + ",".join(parts) + ")" if parts else "(0)"

    def id_of_label(self, label: str) -> int:
        label = label.strip()
        if label in ("", "0"):
            raise KeyError("empty label")
        if label in self.labels:
            return self.labels.index(label)
        # accept a bare dimension vector when it is unambiguous
        body = label.split("#")[0]
        matches = [i for i, lab in enumerate(self.labels)
                   if lab.split("#")[0] == body]
        if "#" not in label and len(matches) == 1:
            return matches[0]
        # aliases S<v> and P<v> for simples and projectives (1-based vertex)
        if label[:1] in ("S", "P") and label[1:].isdigit():
            v = int(label[1:]) - 1
            if 0 <= v < self.n:
                rep = simple(self.algebra, v) if label[0] == "S" \
                    else projective(self.algebra, v)
                i = self.identify(rep)
                if i is not None:
                    return i
        raise KeyError("unknown module label %r" % label)

    # ------------------------------------------------------------------
    # Gen and FiltGen membership
    # ------------------------------------------------------------------

    def trace_rank_full(self, gens: FrozenSet[int], j: int) -> bool:
        m = self.modules[j]
        if m.total_dim == 0:
            return True
        f = self.field
        for v in range(self.n):
            if m.dims[v] == 0:
                continue
            stacked = Mat.zeros(f, m.dims[v], 0)
            for i in gens:
                stacked = stacked.hstack(self._trace_spans[(i, j)][v])
            if linalg.rank(stacked) < m.dims[v]:
                return False
        return True

    def gen_set(self, ids) -> FrozenSet[int]:
        """Indecomposable members of Gen of the direct sum of the given ids."""
        key = frozenset(ids)
        cached = self._gen_cache.get(key)
        if cached is not None:
            return cached
        members = frozenset(j for j in range(len(self.modules))
                            if self.trace_rank_full(key, j))
        self._gen_cache[key] = members
        return members

    def gen_contains(self, ids, j: int) -> bool:
        return j in self.gen_set(ids)

    def filtgen_contains(self, ids, j: int) -> bool:
        """Membership in the smallest torsion class containing the given ids,
        by the iterated trace-quotient test."""
        key = (frozenset(ids), j)
        cached = self._filtgen_cache.get(key)
        if cached is not None:
            return cached
        gens = [self.modules[i] for i in sorted(key[0])]
        x = self.modules[j]
        result = True
        while x.total_dim > 0:
            if not gens:
                result = False
                break
            t, incl = trace(gens, x)
            if t.total_dim == 0:
                result = False
                break
            x, _ = quotient(x, incl)
        self._filtgen_cache[key] = result
        return result

    def filtgen_set(self, ids) -> FrozenSet[int]:
        return frozenset(j for j in range(len(self.modules))
                         if self.filtgen_contains(ids, j))

    # ------------------------------------------------------------------
    # support objects
    # ------------------------------------------------------------------

    def tau_hom_vanishes(self, a: int, b: int) -> bool:
        """Hom(M_a, tau M_b) == 0, from the tables."""
        tb = self.tau_of[b]
        return tb is None or self.hom[a][tb] == 0

    def indec_compatible(self, x: StrIndec, y: StrIndec) -> bool:
        """Whether x + y is a basic support object (ambient test)."""
        if x == y:
            return False
        if x.shift and y.shift:
            return x.mod != y.mod
        if x.shift:
            return self.hom[x.mod][y.mod] == 0  # Hom(P, M) = 0
        if y.shift:
            return self.hom[y.mod][x.mod] == 0
        return self.tau_hom_vanishes(x.mod, y.mod) and self.tau_hom_vanishes(y.mod, x.mod)

    def valid_str_obj(self, t: StrObj) -> bool:
        xs = t.indecs()
        for x in xs:
            if x.shift and not self.is_proj[x.mod]:
                return False
            if not x.shift and not self.tau_rigid[x.mod]:
                return False
        for i in range(len(xs)):
            for j in range(i + 1, len(xs)):
                if not self.indec_compatible(xs[i], xs[j]):
                    return False
        return True

    def summand_rep(self, ids: Sequence[int]) -> Rep:
        if not ids:
            from tauseq.modules import zero_rep
            return zero_rep(self.algebra)
        if len(ids) == 1:
            return self.modules[ids[0]]
        return direct_sum([self.modules[i] for i in ids])[0]

    def all_tau_rigid_subsets(self) -> List[Tuple[int, ...]]:
        """All basic tau-rigid modules, as sorted id tuples (including ())."""
        key = "tau_rigid_subsets"
        if key in self.cache:
            return self.cache[key]
        rigid_ids = [i for i in range(len(self.modules)) if self.tau_rigid[i]]
        out: List[Tuple[int, ...]] = [()]

        def compatible_pair(a: int, b: int) -> bool:
            return self.tau_hom_vanishes(a, b) and self.tau_hom_vanishes(b, a)

        def rec(start: int, acc: List[int]):
            for k in range(start, len(rigid_ids)):
                c = rigid_ids[k]
                if all(compatible_pair(c, a) for a in acc):
                    acc.append(c)
                    out.append(tuple(acc))
                    rec(k + 1, acc)
                    acc.pop()

        rec(0, [])
        out.sort()
        self.cache[key] = out
        return out

    def all_support_objects(self) -> List[StrObj]:
        """All basic support objects (tau-rigid module plus shifted projectives)."""
        key = "support_objects"
        if key in self.cache:
            return self.cache[key]
        out: List[StrObj] = []
        projs = [i for i in range(len(self.modules)) if self.is_proj[i]]
        for mods in self.all_tau_rigid_subsets():
            free = [p for p in projs if all(self.hom[p][m] == 0 for m in mods)]
            for r in range(len(free) + 1):
                for shifts in itertools.combinations(free, r):
                    out.append(StrObj.make(mods, shifts))
        out.sort()
        self.cache[key] = out
        return out
