"""Ordered rigid modules, their sequences, and left/right mutation.

Sequences are tuples of canonical module ids, written left to right; a
sequence of length L over an algebra of rank n occupies positions
n-L+1, ..., n, and mutation indices are the absolute positions, matching the
usual indexing of complete sequences by 1..n.

Mutation is computed per pair context: all pairs of a context are grouped by
their perpendicular subcategory, the left formula is evaluated on every
left-regular pair, and in each group the (at most one) remaining pair is
matched to the (at most one) remaining value, since mutation restricts to a
bijection on each group.  The right operation is built the same way from the
right formula and checked to be the exact inverse.  Any ambiguity or
formula output landing in the wrong group aborts loudly.
"""

from __future__ import annotations

import itertools
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from tauseq.emap import engine_for
from tauseq.errors import (
    CharacterizationMismatch, DifferentJ, IndexOutOfRange, IrregularAmbiguity,
    Mismatch, NoStrictIncrease, NotAPair, NotTauRigid, NotTFOrdered,
    OrbitExhausted,
)
from tauseq.universe import ModuleUniverse, StrIndec, StrObj
from tauseq.wide import (
    Context, all_torsion_classes, ambient_context, context_of, gen_in,
    is_gen_minimal_summandwise, j_in_context, rel_ext_projectives, rel_perp_tau,
    rel_str_indecs, rel_tau_rigid, torsion_handle,
)

Seq = Tuple[int, ...]
Pair = Tuple[int, int]


# --------------------------------------------------------------------------
# orderings and the correspondence with sequences
# --------------------------------------------------------------------------

def is_tf_ordered(u: ModuleUniverse, ids: Sequence[int],
                  ctx: Optional[Context] = None) -> bool:
    """No entry is generated by the ones after it (and the sum is rigid)."""
    ctx = ctx or ambient_context(u)
    if len(set(ids)) != len(ids):
        return False
    if not rel_tau_rigid(u, ctx, tuple(ids)):
        return False
    for i in range(len(ids)):
        tail = frozenset(ids[i + 1:])
        if tail and u.gen_contains(tail, ids[i]):
            return False
    return True


def omega(u: ModuleUniverse, tf: Sequence[int],
          ctx: Optional[Context] = None) -> Seq:
    """The sequence attached to an ordered rigid module: each entry is the
    reduction of itself against the sum of its successors."""
    ctx = ctx or ambient_context(u)
    if not is_tf_ordered(u, tf, ctx):
        raise NotTFOrdered("%r is not TF-ordered" % (list(tf),))
    e = engine_for(u)
    out = []
    for i in range(len(tf)):
        t = StrObj.make(tf[i + 1:])
        y = e.e_map(ctx, t, StrIndec(tf[i], 0))
        if y.shift:
            raise Mismatch("omega produced a shifted object")
        out.append(y.mod)
    return tuple(out)


def omega_inverse(u: ModuleUniverse, seq: Seq,
                  ctx: Optional[Context] = None) -> Tuple[int, ...]:
    """Right-to-left preimages under the reduction maps."""
    ctx = ctx or ambient_context(u)
    e = engine_for(u)
    ys: List[int] = []
    for i in range(len(seq) - 1, -1, -1):
        t = StrObj.make(ys)
        x = e.e_inverse(ctx, t, StrIndec(seq[i], 0))
        if x.shift:
            raise Mismatch("omega inverse produced a shifted object")
        ys.insert(0, x.mod)
    return tuple(ys)


def context_chain(u: ModuleUniverse, seq: Seq,
                  ctx: Optional[Context] = None) -> List[Context]:
    """chain[i] is the wide subcategory in which seq[i] must be rigid."""
    ctx = ctx or ambient_context(u)
    chain: List[Optional[Context]] = [None] * len(seq)
    c = ctx
    for i in range(len(seq) - 1, -1, -1):
        chain[i] = c
        if i > 0:
            c = context_of(u, c, StrObj.make([seq[i]]))
    return chain  # type: ignore[return-value]


def is_tau_es(u: ModuleUniverse, seq: Seq, ctx: Optional[Context] = None) -> bool:
    ctx = ctx or ambient_context(u)
    c = ctx
    try:
        for i in range(len(seq) - 1, -1, -1):
            c = context_of(u, c, StrObj.make([seq[i]]))
    except (NotTauRigid, Mismatch):
        return False
    return True


def j_of_sequence(u: ModuleUniverse, seq: Seq,
                  ctx: Optional[Context] = None) -> Context:
    """The perpendicular subcategory of the whole sequence, computed
    recursively and cross-checked against the unordered preimage sum."""
    ctx = ctx or ambient_context(u)
    c = ctx
    for i in range(len(seq) - 1, -1, -1):
        c = context_of(u, c, StrObj.make([seq[i]]))
    tf = omega_inverse(u, seq, ctx)
    direct = j_in_context(u, ctx, StrObj.make(tf))
    if direct != c.members:
        raise Mismatch("recursive and preimage routes to J disagree")
    return c


# --------------------------------------------------------------------------
# pairs, regularity, and the mutation tables
# --------------------------------------------------------------------------

def enumerate_pairs(u: ModuleUniverse, ctx: Context) -> List[Pair]:
    out = []
    for c in rel_str_indecs(u, ctx):
        if c.shift:
            continue
        sub = context_of(u, ctx, StrObj.make([c.mod]))
        for b in rel_str_indecs(u, sub):
            if b.shift == 0:
                out.append((b.mod, c.mod))
    return out


def pair_cell(u: ModuleUniverse, ctx: Context, pair: Pair) -> FrozenSet[int]:
    sub = context_of(u, ctx, StrObj.make([pair[1]]))
    return context_of(u, sub, StrObj.make([pair[0]])).members


def regularity(u: ModuleUniverse, ctx: Context, pair: Pair) -> Tuple[bool, bool]:
    """(left regular, right regular) for a pair in the given context."""
    b, c = pair
    if pair not in set(enumerate_pairs(u, ctx)):
        raise NotAPair("%s is not a pair in the context"
                       % (tuple(u.labels[i] for i in pair),))
    e = engine_for(u)
    # left: second entry relatively projective, or not Ext-projective in the
    # class of everything perpendicular to the translate of the lifted first
    if c in ctx.rel_proj:
        left = True
    else:
        lifted = e.e_inverse(ctx, StrObj.make([c]), StrIndec(b, 0))
        if lifted.shift:
            raise Mismatch("module should lift to a module")
        perp = rel_perp_tau(u, ctx, (lifted.mod,))
        left = c not in rel_ext_projectives(u, perp)
    # right: the lift of the first entry is Ext-projective against the
    # translate class of the second, or the second is not generated by it
    lifted = e.e_inverse(ctx, StrObj.make([c]), StrIndec(b, 0))
    if lifted.shift:
        raise Mismatch("module should lift to a module")
    perp_c = rel_perp_tau(u, ctx, (c,))
    right = (lifted.mod in rel_ext_projectives(u, perp_c)
             or c not in gen_in(u, ctx, (lifted.mod,)))
    return left, right


def _left_formula(u: ModuleUniverse, ctx: Context, pair: Pair) -> Pair:
    b, c = pair
    e = engine_for(u)
    if c in ctx.rel_proj:
        c_plus = StrIndec(c, 1)
        t = StrObj.make([], [c])
    else:
        c_plus = StrIndec(c, 0)
        t = StrObj.make([c])
    b_up = e.e_inverse(ctx, t, StrIndec(b, 0))
    if b_up.shift:
        raise Mismatch("lift of a module across the left formula is shifted")
    first = e.e_map(ctx, StrObj.make([b_up.mod]), c_plus)
    return (first.mod, b_up.mod)


def _right_formula(u: ModuleUniverse, ctx: Context, pair: Pair) -> Pair:
    x, y = pair
    e = engine_for(u)
    sub = context_of(u, ctx, StrObj.make([y]))
    x_plus = StrIndec(x, 1) if x in sub.rel_proj else StrIndec(x, 0)
    x_up = e.e_inverse(ctx, StrObj.make([y]), x_plus)
    t = StrObj.make([x_up.mod]) if x_up.shift == 0 else StrObj.make([], [x_up.mod])
    first = e.e_map(ctx, t, StrIndec(y, 0))
    if first.shift:
        raise Mismatch("right formula produced a shifted first entry")
    return (first.mod, x_up.mod)


class MutationTable:
    """The left and right mutation bijections on all pairs of one context."""

    def __init__(self, u: ModuleUniverse, ctx: Context):
        self.u = u
        self.ctx = ctx
        self.pairs = enumerate_pairs(u, ctx)
        self.cells: Dict[FrozenSet[int], List[Pair]] = {}
        for p in self.pairs:
            self.cells.setdefault(pair_cell(u, ctx, p), []).append(p)
        self.phi: Dict[Pair, Pair] = {}
        self.psi: Dict[Pair, Pair] = {}
        self.left_irregular: List[Pair] = []
        self.right_irregular: List[Pair] = []
        for cell, members in sorted(self.cells.items(),
                                    key=lambda kv: sorted(kv[0])):
            self._build_cell(cell, members)
        for p, q in self.phi.items():
            if self.psi[q] != p:
                raise Mismatch("left and right mutation are not mutually inverse")

    def _build_cell(self, cell: FrozenSet[int], members: List[Pair]):
        u, ctx = self.u, self.ctx
        member_set = set(members)
        phi_known: Dict[Pair, Pair] = {}
        psi_known: Dict[Pair, Pair] = {}
        left_irr, right_irr = [], []
        for p in members:
            left, right = regularity(u, ctx, p)
            if left:
                q = _left_formula(u, ctx, p)
                if q not in member_set:
                    raise Mismatch("left mutation left its group: %r -> %r"
                                   % (p, q))
                phi_known[p] = q
            else:
                left_irr.append(p)
            if right:
                q = _right_formula(u, ctx, p)
                if q not in member_set:
                    raise Mismatch("right mutation left its group: %r -> %r"
                                   % (p, q))
                psi_known[p] = q
            else:
                right_irr.append(p)
        if len(left_irr) > 1 or len(right_irr) > 1:
            raise IrregularAmbiguity("more than one irregular pair in a group")
        self.left_irregular.extend(left_irr)
        self.right_irregular.extend(right_irr)
        for known, irregular in ((phi_known, left_irr), (psi_known, right_irr)):
            image = set(known.values())
            if len(image) != len(known):
                raise Mismatch("regular mutation formula is not injective")
            missing_src = [p for p in members if p not in known]
            missing_tgt = [q for q in members if q not in image]
            if len(missing_src) != len(missing_tgt) or len(missing_src) > 1:
                raise IrregularAmbiguity(
                    "leftover matching found %d sources and %d targets"
                    % (len(missing_src), len(missing_tgt)))
            if missing_src:
                known[missing_src[0]] = missing_tgt[0]
        self.phi.update(phi_known)
        self.psi.update(psi_known)

    def apply(self, op: str, pair: Pair) -> Pair:
        table = self.phi if op == "phi" else self.psi
        if pair not in table:
            raise NotAPair("%r is not a pair of this context" % (pair,))
        return table[pair]

    def cell_size(self, pair: Pair) -> int:
        for cell, members in self.cells.items():
            if pair in members:
                return len(members)
        raise NotAPair("%r is not a pair of this context" % (pair,))


def mutation_table(u: ModuleUniverse, ctx: Context) -> MutationTable:
    cache = u.cache.setdefault("mutation_tables", {})
    if ctx.members not in cache:
        cache[ctx.members] = MutationTable(u, ctx)
    return cache[ctx.members]


def phi_pair(u: ModuleUniverse, ctx: Context, pair: Pair) -> Pair:
    return mutation_table(u, ctx).apply("phi", pair)


def psi_pair(u: ModuleUniverse, ctx: Context, pair: Pair) -> Pair:
    return mutation_table(u, ctx).apply("psi", pair)


# --------------------------------------------------------------------------
# mutation of sequences
# --------------------------------------------------------------------------

def first_position(u: ModuleUniverse, seq: Seq) -> int:
    return u.n - len(seq) + 1


def mutate(u: ModuleUniverse, seq: Seq, op: str, index: int) -> Seq:
    """Apply a left or right mutation at an absolute position."""
    k = first_position(u, seq)
    offset = index - k
    if not 0 <= offset <= len(seq) - 2:
        raise IndexOutOfRange("position %d not mutable in a sequence at "
                              "positions %d..%d" % (index, k, u.n))
    tail = seq[offset + 2:]
    ctx = ambient_context(u)
    for i in range(len(tail) - 1, -1, -1):
        ctx = context_of(u, ctx, StrObj.make([tail[i]]))
    pair = (seq[offset], seq[offset + 1])
    new_pair = mutation_table(u, ctx).apply(op, pair)
    out = seq[:offset] + new_pair + tail
    return out


class MutationWord:
    """A composition of mutation steps, re-verified against its endpoints."""

    def __init__(self, u: ModuleUniverse, steps: Sequence[Tuple[str, int, int]],
                 source: Seq, target: Seq, verify: bool = True):
        self.steps = tuple(steps)
        self.source = source
        self.target = target
        if verify and apply_steps(u, source, self.steps) != target:
            raise Mismatch("mutation word does not carry its source to its target")

    @property
    def length(self) -> int:
        return sum(power for _, _, power in self.steps)

    def inverse_steps(self) -> Tuple[Tuple[str, int, int], ...]:
        flip = {"phi": "psi", "psi": "phi"}
        return tuple((flip[op], i, power) for op, i, power in reversed(self.steps))

    def display(self) -> str:
        if not self.steps:
            return "(empty)"
        bits = []
        for op, i, power in self.steps:
            s = "%s_%d" % (op, i)
            if power > 1:
                s += "^%d" % power
            bits.append(s)
        return ".".join(bits)


def apply_steps(u: ModuleUniverse, seq: Seq,
                steps: Sequence[Tuple[str, int, int]]) -> Seq:
    for op, i, power in steps:
        for _ in range(power):
            seq = mutate(u, seq, op, i)
    return seq


# --------------------------------------------------------------------------
# gen-minimality
# --------------------------------------------------------------------------

def is_gen_minimal(u: ModuleUniverse, ids: Sequence[int]) -> bool:
    """Summand definition, re-derived through the split-projective
    characterization; any disagreement aborts."""
    idset = tuple(sorted(ids))
    for i in idset:
        if not u.tau_rigid[i]:
            raise NotTauRigid("gen-minimality is only defined for rigid modules")
    if not rel_tau_rigid(u, ambient_context(u), idset):
        raise NotTauRigid("the sum is not tau-rigid")
    by_definition = is_gen_minimal_summandwise(u, idset)
    j_members = j_in_context(u, ambient_context(u), StrObj.make(idset))
    perp = frozenset(x for x in range(len(u.modules))
                     if all(u.hom[x][w] == 0 for w in j_members))
    by_characterization = set(torsion_handle(u, perp).split) == set(idset)
    if by_definition != by_characterization:
        raise CharacterizationMismatch(
            "summand test %r vs split-projective test %r on %r"
            % (by_definition, by_characterization,
               [u.labels[i] for i in idset]))
    return by_definition


# --------------------------------------------------------------------------
# transpositions, normalization, transitivity
# --------------------------------------------------------------------------

def transposition_word(u: ModuleUniverse, seq: Seq, index: int,
                       target: Seq) -> MutationWord:
    """The minimal power of a single mutation at one position carrying seq to
    target; exponents are searched in the order +1, -1, +2, -2, ..."""
    if seq == target:
        return MutationWord(u, (), seq, target)
    k = first_position(u, seq)
    offset = index - k
    tail = seq[offset + 2:]
    ctx = ambient_context(u)
    for i in range(len(tail) - 1, -1, -1):
        ctx = context_of(u, ctx, StrObj.make([tail[i]]))
    bound = mutation_table(u, ctx).cell_size((seq[offset], seq[offset + 1])) + 1
    forward = backward = seq
    for power in range(1, bound + 1):
        forward = mutate(u, forward, "phi", index)
        if forward == target:
            return MutationWord(u, (("phi", index, power),), seq, target)
        backward = mutate(u, backward, "psi", index)
        if backward == target:
            return MutationWord(u, (("psi", index, power),), seq, target)
    raise OrbitExhausted("no power of the mutation at position %d connects the "
                         "two sequences" % index)


def _insertion(tf: Sequence[int], from_pos: int, to_slot: int) -> Tuple[int, ...]:
    ys = list(tf)
    y = ys.pop(from_pos)
    ys.insert(to_slot, y)
    return tuple(ys)


def normalize(u: ModuleUniverse, seq: Seq,
              trace: Optional[list] = None) -> Tuple[Seq, MutationWord]:
    """Mutate a sequence until the preimage sum is gen-minimal.

    Loop: take the ordered preimage; if its sum is gen-minimal, stop.
    Otherwise pick a non-split Ext-projective entry, move it leftward by
    single-position transpositions to the last slot where inserting it
    breaks the ordering, and apply one left mutation there.  Each round
    strictly enlarges the torsion class of the sequence, which bounds the
    number of rounds by the number of torsion classes.

    When a list is passed as ``trace`` it receives the indecomposable member
    set of the torsion class after every round.
    """
    steps: List[Tuple[str, int, int]] = []
    cur = seq
    rounds = len(all_torsion_classes(u)) + 1
    for _ in range(rounds):
        tf = omega_inverse(u, cur)
        if trace is not None:
            trace.append(u.gen_set(tf))
        if is_gen_minimal(u, tf):
            return cur, MutationWord(u, steps, seq, cur)
        members = u.gen_set(tf)
        handle = torsion_handle(u, members)
        k = first_position(u, cur)
        candidates = [pos for pos, y in enumerate(tf) if y in handle.nonsplit]
        if not candidates:
            raise Mismatch("no non-split projective entry in a non-minimal sum")
        r_pos = min(candidates, key=lambda pos: tf[pos])
        bad_slots = [t for t in range(r_pos)
                     if not is_tf_ordered(u, _insertion(tf, r_pos, t))]
        if not bad_slots:
            raise Mismatch("expected a non-ordered insertion slot")
        s0 = max(bad_slots)
        # every insertion strictly right of s0 keeps the ordering, so each
        # adjacent move is a transposition between two valid orderings
        work_tf = list(tf)
        p = r_pos
        while p > s0 + 1:
            swapped = _insertion(tuple(work_tf), p, p - 1)
            target_seq = omega(u, swapped)
            w = transposition_word(u, cur, k + p - 1, target_seq)
            steps.extend(w.steps)
            cur = target_seq
            work_tf = list(swapped)
            p -= 1
        before = u.filtgen_set(frozenset(cur))
        if before != members:
            raise Mismatch("torsion class drifted during transpositions")
        cur2 = mutate(u, cur, "phi", k + s0)
        steps.append(("phi", k + s0, 1))
        after = u.gen_set(omega_inverse(u, cur2))
        if not (members < after):
            raise NoStrictIncrease("left mutation failed to enlarge the "
                                   "torsion class")
        cur = cur2
    raise NoStrictIncrease("normalization exceeded the torsion-class bound")


def transitivity_path(u: ModuleUniverse, seq1: Seq, seq2: Seq) -> MutationWord:
    """A mutation word carrying seq1 to seq2, built from the two
    normalizations and a bridge of transpositions between the orderings of
    the shared gen-minimal preimage sum."""
    if len(seq1) != len(seq2):
        raise DifferentJ("sequences of different lengths")
    j1 = j_of_sequence(u, seq1)
    j2 = j_of_sequence(u, seq2)
    if j1.members != j2.members:
        raise DifferentJ("the sequences determine different wide subcategories")
    n1, w1 = normalize(u, seq1)
    n2, w2 = normalize(u, seq2)
    tf1 = omega_inverse(u, n1)
    tf2 = omega_inverse(u, n2)
    if sorted(tf1) != sorted(tf2):
        raise Mismatch("gen-minimal preimage sums differ")
    steps: List[Tuple[str, int, int]] = list(w1.steps)
    cur_seq, cur_tf = n1, list(tf1)
    k = first_position(u, seq1)
    for pos in range(len(cur_tf)):
        want = tf2[pos]
        p = cur_tf.index(want)
        while p > pos:
            swapped = _insertion(tuple(cur_tf), p, p - 1)
            target_seq = omega(u, swapped)
            w = transposition_word(u, cur_seq, k + p - 1, target_seq)
            steps.extend(w.steps)
            cur_seq = target_seq
            cur_tf = list(swapped)
            p -= 1
    if cur_seq != n2:
        raise Mismatch("bridge did not reach the second normal form")
    steps.extend(w2.inverse_steps())
    return MutationWord(u, steps, seq1, seq2)


# --------------------------------------------------------------------------
# enumeration of sequences and the mutation graph
# --------------------------------------------------------------------------

def enumerate_tau_es(u: ModuleUniverse, w_members: FrozenSet[int]) -> List[Seq]:
    """All sequences whose perpendicular subcategory is the given one, by
    running the orderings of suitable rigid modules through omega."""
    amb = ambient_context(u)
    out = []
    for subset in u.all_tau_rigid_subsets():
        if j_in_context(u, amb, StrObj.make(subset)) != w_members:
            continue
        for perm in itertools.permutations(subset):
            if is_tf_ordered(u, perm):
                out.append(omega(u, perm))
    return sorted(set(out))


def enumerate_tau_es_recursive(u: ModuleUniverse,
                               w_members: FrozenSet[int]) -> List[Seq]:
    """Independent enumeration straight from the recursive definition: pick a
    relatively rigid last entry, recurse into its perpendicular subcategory.
    No reduction maps or orderings are used."""
    amb = ambient_context(u)

    def rec(ctx: Context) -> List[Seq]:
        out: List[Seq] = []
        if ctx.members == w_members:
            out.append(())
        for x in sorted(ctx.members):
            if not rel_tau_rigid(u, ctx, (x,)):
                continue
            sub = context_of(u, ctx, StrObj.make([x]))
            if not w_members <= sub.members:
                continue
            for prefix in rec(sub):
                out.append(prefix + (x,))
        return out

    if not w_members <= amb.members:
        return []
    return sorted(set(rec(amb)))


class MutationGraph:
    def __init__(self, vertices: List[Seq], edges: List[Tuple[int, int, str, int]]):
        self.vertices = vertices
        self.edges = edges

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: Dict[int, List[int]] = {i: [] for i in range(len(self.vertices))}
        for a, b, _, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def bfs_distances(self, start: int) -> Dict[int, int]:
        dist = {start: 0}
        frontier = [start]
        adj: Dict[int, List[int]] = {i: [] for i in range(len(self.vertices))}
        for a, b, _, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        while frontier:
            nxt = []
            for v in frontier:
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist


def mutation_graph(u: ModuleUniverse, w_members: FrozenSet[int]) -> MutationGraph:
    """Vertices are the sequences over the given wide subcategory, edges the
    single left mutations (each doubling as its inverse right mutation)."""
    vertices = enumerate_tau_es(u, w_members)
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for v in vertices:
        k = first_position(u, v)
        for offset in range(len(v) - 1):
            w = mutate(u, v, "phi", k + offset)
            if w not in index:
                raise Mismatch("mutation left the sequence family")
            edges.append((index[v], index[w], "phi", k + offset))
    return MutationGraph(vertices, edges)
