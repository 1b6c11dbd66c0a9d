"""Named verification suites with counterexample certificates.

Every suite runs a family of exhaustive desk-scale checks and returns the
pass/fail counts together with a reproducible certificate (labels plus an
operation trace) for each failure.  Diagnostics raised by the engine are
caught and converted into failures, so a corrupted internal table surfaces
here instead of crashing the run.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from tauseq.emap import engine_for
from tauseq.errors import TauSeqError
from tauseq.sequences import (
    apply_steps, enumerate_tau_es, enumerate_tau_es_recursive, first_position,
    is_gen_minimal, is_tf_ordered, mutate, mutation_graph, mutation_table,
    normalize, omega, omega_inverse, transposition_word, transitivity_path,
)
from tauseq.universe import ModuleUniverse, StrIndec, StrObj
from tauseq.wide import (
    all_torsion_classes, all_wide_subcategories, ambient_context,
    compatible_in_context, context_of, j_in_context, rel_str_indecs,
    rel_tau_rigid, torsion_handle,
)


class Check:
    def __init__(self, name: str):
        self.name = name
        self.total = 0
        self.failures: List[dict] = []

    def count(self, ok: bool, certificate: Optional[dict] = None):
        self.total += 1
        if not ok:
            self.failures.append(certificate or {})

    def guard(self, fn: Callable[[], bool], certificate: dict):
        try:
            self.count(fn(), certificate)
        except TauSeqError as exc:
            self.total += 1
            cert = dict(certificate)
            cert["diagnostic"] = "%s: %s" % (type(exc).__name__, exc)
            self.failures.append(cert)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"name": self.name, "total": self.total,
                "failed": len(self.failures), "failures": self.failures}


class SuiteReport:
    def __init__(self, name: str, checks: List[Check]):
        self.name = name
        self.checks = checks

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {"suite": self.name, "passed": self.ok,
                "checks": [c.as_dict() for c in self.checks]}

    def lines(self) -> List[str]:
        out = []
        for c in self.checks:
            status = "OK" if c.ok else "FAIL"
            out.append("%-42s %4d/%-4d %s"
                       % (c.name, c.total - len(c.failures), c.total, status))
        return out


def _labels(u: ModuleUniverse, ids) -> List[str]:
    return [u.labels[i] for i in sorted(ids)]


def _obj_label(u: ModuleUniverse, t: StrObj) -> str:
    return u.label_of_obj(t)


# --------------------------------------------------------------------------
# enumeration suite
# --------------------------------------------------------------------------

def suite_enumeration(u: ModuleUniverse) -> SuiteReport:
    cert = Check("certificate flags")
    for key, val in u.certificate.items():
        if key == "dim_bound":
            continue
        cert.count(bool(val), {"flag": key})

    translate = Check("translate of non-projective is indecomposable non-injective")
    for i in range(len(u.modules)):
        if u.is_proj[i]:
            continue
        ti = u.tau_of[i]
        translate.count(ti is not None and not u.is_inj[ti],
                        {"module": u.labels[i]})

    bridge = Check("hom-into-translate vanishing matches Ext vanishing on Gen")
    for m in range(len(u.modules)):
        for n in range(len(u.modules)):
            tm = u.tau_of[m]
            lhs = tm is None or u.hom[n][tm] == 0
            rhs = all(u.ext[m][y] == 0 for y in u.gen_set((n,)))
            bridge.count(lhs == rhs, {"m": u.labels[m], "n": u.labels[n],
                                      "hom_vanishes": lhs, "ext_vanishes": rhs})

    surrogate = Check("presentation cokernel equals hom into the translate")
    from tauseq.ar import tau_hom_dim
    for m in range(len(u.modules)):
        for n in range(len(u.modules)):
            tm = u.tau_of[m]
            expected = 0 if tm is None else u.hom[n][tm]
            surrogate.count(tau_hom_dim(u.modules[m], u.modules[n]) == expected,
                            {"m": u.labels[m], "n": u.labels[n]})

    counts = Check("tilting-size support objects match torsion classes")
    support_tilting = [t for t in u.all_support_objects() if t.delta == u.n]
    counts.count(len(support_tilting) == len(all_torsion_classes(u)),
                 {"support_tilting": len(support_tilting),
                  "torsion_classes": len(all_torsion_classes(u))})

    return SuiteReport("enumeration", [cert, translate, bridge, surrogate, counts])


# --------------------------------------------------------------------------
# bijection suite
# --------------------------------------------------------------------------

def suite_bijections(u: ModuleUniverse) -> SuiteReport:
    amb = ambient_context(u)
    torsion = all_torsion_classes(u)
    wides = all_wide_subcategories(u)

    genmin_check = Check("gen-minimal definition matches characterization")
    genmin: List[Tuple[int, ...]] = []
    for ids in u.all_tau_rigid_subsets():
        def _run(ids=ids):
            g = is_gen_minimal(u, ids)
            if g:
                genmin.append(ids)
            return True
        genmin_check.guard(_run, {"module": _labels(u, ids)})

    to_torsion = Check("gen-minimal modules biject onto torsion classes via Gen")
    images = [u.gen_set(ids) for ids in genmin]
    to_torsion.count(len(set(images)) == len(images), {"issue": "not injective"})
    to_torsion.count(sorted(images, key=lambda s: (len(s), sorted(s)))
                     == list(torsion),
                     {"issue": "image differs from the torsion-class list"})
    back = Check("split projectives invert Gen")
    for ids in genmin:
        h = torsion_handle(u, u.gen_set(ids))
        back.count(set(h.split) == set(ids),
                   {"module": _labels(u, ids), "split": _labels(u, h.split)})

    closure = Check("torsion classes are closed under quotients and extensions")
    from tauseq.wide import _extension_parts_single
    for t in torsion:
        def _run(t=t):
            if not u.gen_set(t) <= t:
                return False
            for quot in t:
                for sub in t:
                    if u.ext[quot][sub] == 0:
                        continue
                    if not _extension_parts_single(u, quot, sub) <= t:
                        return False
            return True
        closure.guard(_run, {"torsion": _labels(u, t)})

    tw = Check("torsion classes biject onto wide subcategories")
    wide_of_torsion = {}
    for t in torsion:
        h = torsion_handle(u, t)
        w = j_in_context(u, amb, StrObj.make(h.nonsplit,
                                             [p for p in h.orthogonal_proj]))
        wide_of_torsion[t] = w
        tw.count(w in set(wides), {"torsion": _labels(u, t), "image": _labels(u, w)})
    tw.count(len(set(wide_of_torsion.values())) == len(torsion),
             {"issue": "torsion-to-wide map is not injective"})
    back_tw = Check("filtration closure inverts the wide map")
    for t, w in wide_of_torsion.items():
        back_tw.count(u.filtgen_set(w) == t,
                      {"torsion": _labels(u, t), "wide": _labels(u, w)})

    wide_are_perp = Check("every wide subcategory is a perpendicular category")
    perp_sets = {}
    for t in u.all_support_objects():
        perp_sets.setdefault(j_in_context(u, amb, t), t)
    for w in wides:
        wide_are_perp.count(w in perp_sets, {"wide": _labels(u, w)})
    perp_are_wide = Check("every perpendicular category is a wide subcategory")
    for w in perp_sets:
        perp_are_wide.count(w in set(wides), {"members": _labels(u, w)})

    rigid_unique = Check("two of Gen, perp-translate, J determine the third and the module")
    rigid_sets = u.all_tau_rigid_subsets()
    for a in rigid_sets:
        for b in rigid_sets:
            gen_eq = u.gen_set(a) == u.gen_set(b)
            perp_a = frozenset(x for x in range(len(u.modules))
                               if all(u.tau_of[m] is None or u.hom[x][u.tau_of[m]] == 0
                                      for m in a))
            perp_b = frozenset(x for x in range(len(u.modules))
                               if all(u.tau_of[m] is None or u.hom[x][u.tau_of[m]] == 0
                                      for m in b))
            perp_eq = perp_a == perp_b
            j_eq = j_in_context(u, amb, StrObj.make(a)) == \
                j_in_context(u, amb, StrObj.make(b))
            votes = [gen_eq, perp_eq, j_eq]
            two_imply_third = not (sum(votes) == 2)
            all_iff_equal = (all(votes) == (a == b))
            rigid_unique.count(two_imply_third and all_iff_equal,
                               {"a": _labels(u, a), "b": _labels(u, b),
                                "gen": gen_eq, "perp": perp_eq, "j": j_eq})

    jasso = Check("perp-translate class factors as Gen followed by J")
    from tauseq.modules import quotient, trace
    for ids in rigid_sets:
        if not ids:
            continue
        perp = frozenset(x for x in range(len(u.modules))
                         if all(u.tau_of[m] is None or u.hom[x][u.tau_of[m]] == 0
                                for m in ids))
        jm = j_in_context(u, amb, StrObj.make(ids))
        gens = [u.modules[i] for i in ids]
        for x in sorted(perp):
            def _run(x=x, gens=gens, jm=jm, ids=ids):
                t, incl = trace(gens, u.modules[x])
                q, _ = quotient(u.modules[x], incl)
                t_ids = u.identify_parts(t)
                q_ids = u.identify_parts(q)
                return (t_ids is not None and q_ids is not None
                        and set(t_ids) <= u.gen_set(ids) and set(q_ids) <= jm)
            jasso.guard(_run, {"module": _labels(u, ids), "member": u.labels[x]})

    return SuiteReport("bijections", [
        genmin_check, to_torsion, back, closure, tw, back_tw, wide_are_perp,
        perp_are_wide, rigid_unique, jasso,
    ])


# --------------------------------------------------------------------------
# reduction-map suite
# --------------------------------------------------------------------------

def suite_emap(u: ModuleUniverse) -> SuiteReport:
    amb = ambient_context(u)
    e = engine_for(u)
    xs = rel_str_indecs(u, amb)

    bijective = Check("reduction is a bijection onto each perpendicular category")
    for t in u.all_support_objects():
        def _run(t=t):
            target = context_of(u, amb, t)
            domain = [x for x in xs if compatible_in_context(u, amb, t, x)]
            image = [e.e_map(amb, t, x) for x in domain]
            return (len(set(image)) == len(image)
                    and sorted(image) == sorted(rel_str_indecs(u, target)))
        bijective.guard(_run, {"T": _obj_label(u, t)})

    composition = Check("reduction composes across sums")
    for z in xs:
        tz = StrObj.make([z.mod] if not z.shift else [],
                         [z.mod] if z.shift else [])
        for y in xs:
            if not compatible_in_context(u, amb, tz, y):
                continue
            tyz = tz.with_indec(y)
            for x in xs:
                if not compatible_in_context(u, amb, tyz, x):
                    continue

                def _run(x=x, y=y, z=z, tz=tz, tyz=tyz):
                    lhs = e.e_map(amb, tyz, x)
                    sub = context_of(u, amb, tz)
                    ey = e.e_map(amb, tz, y)
                    ex = e.e_map(amb, tz, x)
                    t2 = StrObj.make([ey.mod] if not ey.shift else [],
                                     [ey.mod] if ey.shift else [])
                    rhs = e.e_map(sub, t2, ex)
                    return lhs == rhs
                composition.guard(_run, {"X": u.label_of_indec(x),
                                         "Y": u.label_of_indec(y),
                                         "Z": u.label_of_indec(z)})

    jsum = Check("perpendicular category of a sum by reduction")
    for y in xs:
        ty = StrObj.make([y.mod] if not y.shift else [], [y.mod] if y.shift else [])
        for x in xs:
            if not compatible_in_context(u, amb, ty, x):
                continue

            def _run(x=x, y=y, ty=ty):
                lhs = j_in_context(u, amb, ty.with_indec(x))
                sub = context_of(u, amb, ty)
                ex = e.e_map(amb, ty, x)
                t2 = StrObj.make([ex.mod] if not ex.shift else [],
                                 [ex.mod] if ex.shift else [])
                rhs = j_in_context(u, sub, t2)
                return lhs == rhs
            jsum.guard(_run, {"X": u.label_of_indec(x), "Y": u.label_of_indec(y)})

    passdown = Check("generation passes down the reduction")
    mods = [x.mod for x in xs if not x.shift]
    for z in mods:
        for y in mods:
            for x in mods:
                if len({x, y, z}) != 3:
                    continue
                if not rel_tau_rigid(u, amb, tuple(sorted({x, y, z}))):
                    continue
                if u.gen_contains((z,), y) or u.gen_contains((z,), x):
                    continue
                if not u.gen_contains((y, z), x):
                    continue

                def _run(x=x, y=y, z=z):
                    tz = StrObj.make([z])
                    ex = e.e_map(amb, tz, StrIndec(x, 0))
                    ey = e.e_map(amb, tz, StrIndec(y, 0))
                    return (ex.shift == 0 and ey.shift == 0
                            and ex.mod in u.gen_set((ey.mod,)))
                passdown.guard(_run, {"X": u.labels[x], "Y": u.labels[y],
                                      "Z": u.labels[z]})

    projbij = Check("torsion-free functor matches projectives across reduction")
    for ids in u.all_tau_rigid_subsets():
        if not ids:
            continue

        def _run(ids=ids):
            perp = frozenset(x for x in range(len(u.modules))
                             if all(u.tau_of[m] is None or u.hom[x][u.tau_of[m]] == 0
                                    for m in ids))
            sources = [q for q in torsion_handle(u, perp).ext_proj
                       if q not in ids]
            sub = context_of(u, amb, StrObj.make(ids))
            images = []
            for q in sources:
                img = e.e_map(amb, StrObj.make(ids), StrIndec(q, 0))
                if img.shift:
                    return False
                images.append(img.mod)
            return (len(set(images)) == len(images)
                    and sorted(images) == sorted(sub.rel_proj))
        projbij.guard(_run, {"module": _labels(u, ids)})

    roundtrip = Check("ordered preimages invert the sequence map")
    pair_unique = Check("pairs over one subcategory are determined entrywise")
    tf_unique = Check("ordered rigid pairs with equal perpendicular agree")
    for w in all_wide_subcategories(u):
        seqs = enumerate_tau_es(u, w)
        for s in seqs:
            def _run(s=s):
                return omega(u, omega_inverse(u, s)) == s
            roundtrip.guard(_run, {"sequence": _labels(u, s)})
    # pair uniqueness within each pair context cell
    try:
        table = mutation_table(u, amb)
    except TauSeqError as exc:
        pair_unique.total += 1
        pair_unique.failures.append({"diagnostic": "%s: %s"
                                     % (type(exc).__name__, exc)})
        table = None
    if table is not None:
        for cell, members in table.cells.items():
            firsts = [p[0] for p in members]
            seconds = [p[1] for p in members]
            pair_unique.count(len(set(firsts)) == len(firsts)
                              and len(set(seconds)) == len(seconds),
                              {"cell": _labels(u, cell)})
    # TF-uniqueness on ordered pairs
    rigid_pairs = [ids for ids in u.all_tau_rigid_subsets() if len(ids) == 2]
    tf_pairs = []
    for a, b in rigid_pairs:
        for x, y in ((a, b), (b, a)):
            if is_tf_ordered(u, (x, y)):
                tf_pairs.append((x, y))
    for (x, y) in tf_pairs:
        for (z, y2) in tf_pairs:
            if y2 != y or x == z:
                continue
            same_j = j_in_context(u, amb, StrObj.make((x, y))) == \
                j_in_context(u, amb, StrObj.make((z, y)))
            tf_unique.count(not same_j,
                            {"X": u.labels[x], "Z": u.labels[z], "Y": u.labels[y]})

    filt_bridge = Check("filtration closure of a sequence equals Gen of its preimage")
    for w in all_wide_subcategories(u):
        for s in enumerate_tau_es(u, w):
            def _run(s=s):
                return u.filtgen_set(frozenset(s)) == u.gen_set(omega_inverse(u, s))
            filt_bridge.guard(_run, {"sequence": _labels(u, s)})

    return SuiteReport("emap", [
        bijective, composition, jsum, passdown, projbij, roundtrip,
        pair_unique, tf_unique, filt_bridge,
    ])


# --------------------------------------------------------------------------
# mutation suite
# --------------------------------------------------------------------------

def _sequence_contexts(u: ModuleUniverse) -> List:
    amb = ambient_context(u)
    out = [amb]
    for x in rel_str_indecs(u, amb):
        if x.shift:
            continue
        out.append(context_of(u, amb, StrObj.make([x.mod])))
    return out


def suite_mutation(u: ModuleUniverse) -> SuiteReport:
    inverse = Check("left and right mutation are mutually inverse")
    preserve = Check("mutation preserves the perpendicular subcategory")
    census = Check("at most one irregular pair per group, each side")
    for ctx in _sequence_contexts(u):
        def _build(ctx=ctx):
            table = mutation_table(u, ctx)
            for p, q in table.phi.items():
                if table.psi[q] != p:
                    return False
            return True
        inverse.guard(_build, {"context_rank": ctx.rank})
        try:
            table = mutation_table(u, ctx)
        except TauSeqError as exc:
            census.total += 1
            census.failures.append({"diagnostic": str(exc)})
            continue
        for cell, members in table.cells.items():
            left_irr = [p for p in table.left_irregular if p in members]
            right_irr = [p for p in table.right_irregular if p in members]
            census.count(len(left_irr) <= 1 and len(right_irr) <= 1,
                         {"cell": _labels(u, cell)})
            for p in members:
                preserve.count(table.phi[p] in members,
                               {"pair": _labels(u, p)})

    local = Check("mutation changes exactly the chosen adjacent pair")
    for w in all_wide_subcategories(u):
        for s in enumerate_tau_es(u, w):
            k = first_position(u, s)
            for off in range(len(s) - 1):
                def _run(s=s, off=off, k=k):
                    t = mutate(u, s, "phi", k + off)
                    back = mutate(u, t, "psi", k + off)
                    untouched = all(t[i] == s[i] for i in range(len(s))
                                    if i not in (off, off + 1))
                    return untouched and back == s
                local.guard(_run, {"sequence": _labels(u, s), "position": k + off})

    return SuiteReport("mutation", [inverse, preserve, census, local])


# --------------------------------------------------------------------------
# transitivity suite
# --------------------------------------------------------------------------

def suite_transitivity(u: ModuleUniverse, pair_budget: int = 40000) -> SuiteReport:
    amb = ambient_context(u)
    counts = Check("sequence enumeration matches the recursive definition")
    connected = Check("mutation graph is connected")
    words = Check("normalization words connect all pairs of sequences")
    monotone = Check("normalization strictly grows the torsion class")
    unique_min = Check("one gen-minimal preimage sum per wide subcategory")

    for w in all_wide_subcategories(u):
        seqs = enumerate_tau_es(u, w)
        oracle = enumerate_tau_es_recursive(u, w)
        counts.count(seqs == oracle, {"wide": _labels(u, w),
                                      "primary": len(seqs), "oracle": len(oracle)})
        g = mutation_graph(u, w)
        connected.count(g.is_connected(), {"wide": _labels(u, w)})
        def _unique(w=w, seqs=seqs):
            minimal_sums = set()
            for s in seqs:
                tf = omega_inverse(u, s)
                if is_gen_minimal(u, tf):
                    minimal_sums.add(tuple(sorted(tf)))
            return len(minimal_sums) <= 1
        unique_min.guard(_unique, {"wide": _labels(u, w)})
        if len(seqs) ** 2 > pair_budget:
            continue
        bound = len(all_torsion_classes(u))
        for s in seqs:
            trace: List = []
            def _run(s=s, trace=trace, bound=bound):
                normalize(u, s, trace=trace)
                sizes = [len(t) for t in trace]
                return (all(a < b for a, b in zip(sizes, sizes[1:]))
                        and len(trace) <= bound)
            monotone.guard(_run, {"sequence": _labels(u, s)})
        for s1 in seqs:
            for s2 in seqs:
                def _run(s1=s1, s2=s2):
                    word = transitivity_path(u, s1, s2)
                    return apply_steps(u, s1, word.steps) == s2
                words.guard(_run, {"from": _labels(u, s1), "to": _labels(u, s2)})

    corank2 = Check("rank n-2 subcategories come from a gen-minimal pair")
    serre_chain = Check("right mutation chain descends through the split pair")
    for w in all_wide_subcategories(u):
        ctx_w = None
        for t in u.all_support_objects():
            if j_in_context(u, amb, t) == w:
                ctx_w = context_of(u, amb, t)
                break
        if ctx_w is None or ctx_w.rank != u.n - 2:
            continue
        perp = frozenset(x for x in range(len(u.modules))
                         if all(u.hom[x][m] == 0 for m in w))
        handle = torsion_handle(u, perp)
        def _run(w=w, handle=handle):
            if len(handle.split) != 2:
                return False
            pair = tuple(sorted(handle.split))
            return (is_gen_minimal(u, pair)
                    and j_in_context(u, amb, StrObj.make(pair)) == w)
        corank2.guard(_run, {"wide": _labels(u, w), "split": _labels(u, handle.split)})
        if len(handle.split) == 2:
            uu, vv = handle.split
            if u.is_proj[uu] and u.is_proj[vv]:
                for first, second in ((uu, vv), (vv, uu)):
                    def _run_chain(first=first, second=second, w=w):
                        return _check_serre_chain(u, w, first, second)
                    serre_chain.guard(_run_chain,
                                      {"V": u.labels[first], "U": u.labels[second]})

    swaps = Check("adjacent transpositions are powers of one mutation")
    table_bounds = {}
    for ids in u.all_tau_rigid_subsets():
        if len(ids) < 2:
            continue
        for perm in itertools.permutations(ids):
            if not is_tf_ordered(u, perm):
                continue
            for pos in range(len(perm) - 1):
                swapped = list(perm)
                swapped[pos], swapped[pos + 1] = swapped[pos + 1], swapped[pos]
                if not is_tf_ordered(u, tuple(swapped)):
                    continue

                def _run(perm=perm, swapped=tuple(swapped), pos=pos):
                    s1 = omega(u, perm)
                    s2 = omega(u, swapped)
                    k = first_position(u, s1)
                    word = transposition_word(u, s1, k + pos, s2)
                    tail = s1[pos + 2:]
                    ctx = amb
                    for i in range(len(tail) - 1, -1, -1):
                        ctx = context_of(u, ctx, StrObj.make([tail[i]]))
                    cell = mutation_table(u, ctx).cell_size((s1[pos], s1[pos + 1]))
                    return word.length <= cell
                swaps.guard(_run, {"ordering": _labels(u, perm), "position": pos})

    return SuiteReport("transitivity", [
        counts, connected, monotone, words, unique_min, corank2, serre_chain,
        swaps,
    ])


def _check_serre_chain(u: ModuleUniverse, w: FrozenSet[int],
                       v_mod: int, u_mod: int) -> bool:
    """Iterate the right mutation from the sequence of (V, U); the second
    entries must strictly descend in Gen until they hit V, and the chain must
    end at the sequence of (U, V)."""
    if not is_tf_ordered(u, (v_mod, u_mod)):
        return True  # not an ordering; nothing to trace
    seq = omega(u, (v_mod, u_mod))
    target = omega(u, (u_mod, v_mod))
    k = first_position(u, seq)
    prev_gen = None
    for _ in range(len(enumerate_tau_es(u, w)) + 1):
        tf = omega_inverse(u, seq)
        u_l = tf[1]
        if u_l == v_mod:
            return tf[0] == u_mod and seq == target
        g = u.gen_set((u_l,))
        if prev_gen is not None and not (g < prev_gen):
            return False
        prev_gen = g
        seq = mutate(u, seq, "psi", k)
    return False


SUITES: Dict[str, Callable[[ModuleUniverse], SuiteReport]] = {
    "enumeration": suite_enumeration,
    "bijections": suite_bijections,
    "emap": suite_emap,
    "mutation": suite_mutation,
    "transitivity": suite_transitivity,
}


def run_suites(u: ModuleUniverse, names: Sequence[str]) -> List[SuiteReport]:
    if "all" in names:
        names = list(SUITES)
    out = []
    for n in names:
        if n not in SUITES:
            raise KeyError("unknown suite %r" % n)
        out.append(SUITES[n](u))
    return out
