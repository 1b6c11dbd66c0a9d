"""The reduction bijection E and its inverse.

For a support object T in a context V, E sends the indecomposable support
objects compatible with T to those of the perpendicular subcategory J(T).
Modules not generated by the module part of T go to their torsion-free
quotient; everything else lands on a shifted relative projective, pinned
down by matching perpendicular subcategories: the result R[1] is the unique
relative projective R of J(T) with R-perp inside J(T) equal to J(T + X).

All values are memoized per (context, T, X); the table is exposed so the
verification suites can inject a corrupted entry and prove they notice.
"""

from __future__ import annotations

from typing import Dict, Optional

from tauseq.errors import (
    Incompatible, Mismatch, MultiplePreimages, NoPreimage, NoUniqueMatch,
)
from tauseq.modules import quotient, trace
from tauseq.universe import ModuleUniverse, StrIndec, StrObj
from tauseq.wide import (
    Context, compatible_in_context, context_of, gen_in, j_in_context,
    rel_str_indecs, rel_tau_rigid,
)


class EMapEngine:
    """Computes and memoizes E and its inverse; supports fault injection."""

    def __init__(self, u: ModuleUniverse):
        self.u = u
        self.memo: Dict[tuple, StrIndec] = {}
        self.faults: Dict[tuple, StrIndec] = {}

    @staticmethod
    def key(ctx: Context, t: StrObj, x: StrIndec) -> tuple:
        return (ctx.members, t, x)

    def inject_fault(self, key: tuple, value: StrIndec):
        self.faults[key] = value

    def clear_faults(self):
        self.faults.clear()

    def e_map(self, ctx: Context, t: StrObj, x: StrIndec) -> StrIndec:
        u = self.u
        if not compatible_in_context(u, ctx, t, x):
            raise Incompatible("%s + %s is not support tau-rigid in the context"
                               % (u.label_of_obj(t), u.label_of_indec(x)))
        k = self.key(ctx, t, x)
        if k in self.faults:
            return self.faults[k]
        if k in self.memo:
            return self.memo[k]
        target = context_of(u, ctx, t)
        if x.shift == 0 and not (t.mods and x.mod in gen_in(u, ctx, t.mods)):
            result = self._module_case(ctx, t, x, target)
        else:
            result = self._shifted_case(ctx, t, x, target)
        self.memo[k] = result
        return result

    def _module_case(self, ctx: Context, t: StrObj, x: StrIndec,
                     target: Context) -> StrIndec:
        u = self.u
        rep = u.modules[x.mod]
        if t.mods:
            gens = [u.modules[i] for i in t.mods]
            _, incl = trace(gens, rep)
            quo, _ = quotient(rep, incl)
        else:
            quo = rep
        parts = u.identify_parts(quo)
        if parts is None or len(parts) != 1:
            raise Mismatch("torsion-free quotient of %s is not indecomposable"
                           % u.label_of_indec(x))
        y = parts[0]
        if y not in target.members or not rel_tau_rigid(u, target, (y,)):
            raise Mismatch("reduction image %s is not support tau-rigid in J(T)"
                           % u.labels[y])
        return StrIndec(y, 0)

    def _shifted_case(self, ctx: Context, t: StrObj, x: StrIndec,
                      target: Context) -> StrIndec:
        u = self.u
        combined = t.with_indec(x)
        wanted = j_in_context(u, ctx, combined)
        matches = []
        for r in target.rel_proj:
            r_perp = frozenset(z for z in target.members if u.hom[r][z] == 0)
            if r_perp == wanted:
                matches.append(r)
        if len(matches) != 1:
            raise NoUniqueMatch(
                "%d relative projectives of J(%s) match J(T + %s)"
                % (len(matches), u.label_of_obj(t), u.label_of_indec(x)))
        return StrIndec(matches[0], 1)

    def e_inverse(self, ctx: Context, t: StrObj, y: StrIndec) -> StrIndec:
        u = self.u
        target = context_of(u, ctx, t)
        if y.shift:
            if y.mod not in target.rel_proj:
                raise NoPreimage("%s is not a shifted relative projective of J(T)"
                                 % u.label_of_indec(y))
        else:
            if y.mod not in target.members or not rel_tau_rigid(u, target, (y.mod,)):
                raise NoPreimage("%s is not support tau-rigid in J(T)"
                                 % u.label_of_indec(y))
        found: Optional[StrIndec] = None
        for x in rel_str_indecs(u, ctx):
            if not compatible_in_context(u, ctx, t, x):
                continue
            if self.e_map(ctx, t, x) == y:
                if found is not None:
                    raise MultiplePreimages(
                        "both %s and %s reduce to %s" %
                        (u.label_of_indec(found), u.label_of_indec(x),
                         u.label_of_indec(y)))
                found = x
        if found is None:
            raise NoPreimage("nothing reduces to %s over %s"
                             % (u.label_of_indec(y), u.label_of_obj(t)))
        return found


def engine_for(u: ModuleUniverse) -> EMapEngine:
    if "emap_engine" not in u.cache:
        u.cache["emap_engine"] = EMapEngine(u)
    return u.cache["emap_engine"]
