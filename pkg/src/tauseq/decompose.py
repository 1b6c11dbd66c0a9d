"""Direct sum decomposition and isomorphism testing, fully exact.

Strategy: compute End(M), its radical (trace form of the regular
representation in characteristic 0, the iterated p-power trace chain over a
prime field), then hunt for a nontrivial idempotent in the semisimple
quotient and lift it.  A module is certified indecomposable when the
semisimple quotient is one-dimensional, or commutative with a primitive
element (a field).  Anything the deterministic search cannot decide raises
IdempotentSplitFailure loudly instead of guessing.
"""

from __future__ import annotations

import itertools
from typing import List, Optional, Tuple

import sympy

from tauseq import linalg
from tauseq.errors import IdempotentSplitFailure, InconclusiveTest
from tauseq.fields import FieldSpec
from tauseq.linalg import Mat
from tauseq.modules import Rep, RepMorphism, hom_basis, submodule_from_spans


# --------------------------------------------------------------------------
# exact polynomial helpers (coefficient lists, low degree first)
# --------------------------------------------------------------------------

def _poly_trim(field: FieldSpec, p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(field: FieldSpec, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y != 0:
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return _poly_trim(field, out)


def _poly_sub(field: FieldSpec, a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append(field.sub(x, y))
    return _poly_trim(field, out)


def _poly_divmod(field: FieldSpec, a: list, b: list) -> Tuple[list, list]:
    a = a[:]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [field.zero] * max(0, len(a) - len(b) + 1)
    binv = field.inv(b[-1])
    while len(a) >= len(b) and a:
        c = field.mul(a[-1], binv)
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = field.sub(a[d + i], field.mul(c, y))
        _poly_trim(field, a)
    return _poly_trim(field, q), a


def _poly_gcdex(field: FieldSpec, a: list, b: list) -> Tuple[list, list, list]:
    """Return (g, u, v) with u a + v b = g = gcd(a, b), g monic."""
    r0, r1 = a[:], b[:]
    s0, s1 = [field.one], []
    t0, t1 = [], [field.one]
    while r1:
        q, r = _poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(field, s0, _poly_mul(field, q, s1))
        t0, t1 = t1, _poly_sub(field, t0, _poly_mul(field, q, t1))
    if r0:
        lead = field.inv(r0[-1])
        r0 = [field.mul(lead, c) for c in r0]
        s0 = [field.mul(lead, c) for c in s0]
        t0 = [field.mul(lead, c) for c in t0]
    return r0, s0, t0


def factor_poly(field: FieldSpec, coeffs: list) -> List[Tuple[list, int]]:
    """Irreducible factorization via sympy; monic factors, coefficients low first."""
    x = sympy.Symbol("x")
    if field.characteristic == 0:
        sympy_coeffs = [sympy.Rational(c.numerator, c.denominator)
                        for c in reversed(coeffs)]
        poly = sympy.Poly(sympy_coeffs, x, domain=sympy.QQ)
    else:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x,
                          domain=sympy.GF(field.characteristic))
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = list(reversed(fac.all_coeffs()))
        if field.characteristic == 0:
            cs = [field.coerce(sympy.Rational(c)) for c in cs]
        else:
            cs = [field.coerce(int(c)) for c in cs]
        lead = field.inv(cs[-1])
        cs = [field.mul(lead, c) for c in cs]
        out.append((cs, int(mult)))
    return out


# --------------------------------------------------------------------------
# structure-constant algebras
# --------------------------------------------------------------------------

def _mat_power(m: Mat, e: int) -> Mat:
    out = Mat.identity(m.field, m.rows)
    base = m
    while e:
        if e & 1:
            out = out.mul(base)
        base = base.mul(base)
        e >>= 1
    return out


class AlgebraCore:
    """A unital associative algebra given by left multiplication matrices.

    left_mult[i] maps coordinate vectors x to the coordinates of b_i * x.
    """

    def __init__(self, field: FieldSpec, left_mult: List[Mat], unit: list):
        self.field = field
        self.dim = len(left_mult)
        self.left_mult = left_mult
        self.unit = unit

    def std_basis(self) -> List[list]:
        f = self.field
        return [[f.one if i == j else f.zero for j in range(self.dim)]
                for i in range(self.dim)]

    def mul(self, a: list, b: list) -> list:
        f = self.field
        out = [f.zero] * self.dim
        bcol = Mat.column(f, b)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            prod = self.left_mult[i].mul(bcol)
            for t in range(self.dim):
                v = prod.data[t][0]
                if v != 0:
                    out[t] = f.add(out[t], f.mul(ai, v))
        return out

    def left_mult_matrix(self, a: list) -> Mat:
        f = self.field
        m = Mat.zeros(f, self.dim, self.dim)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            li = self.left_mult[i]
            for r in range(self.dim):
                for c in range(self.dim):
                    v = li.data[r][c]
                    if v != 0:
                        m.data[r][c] = f.add(m.data[r][c], f.mul(ai, v))
        return m

    def is_scalar(self, a: list) -> bool:
        basis = linalg.from_columns(self.field, self.dim, [self.unit])
        return linalg.solve(basis, Mat.column(self.field, a)) is not None

    def is_commutative(self) -> bool:
        std = self.std_basis()
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.mul(std[i], std[j]) != self.mul(std[j], std[i]):
                    return False
        return True

    def minimal_polynomial(self, a: list) -> list:
        """Monic minimal polynomial, coefficients low degree first."""
        f = self.field
        powers = [self.unit[:]]
        cur = self.unit[:]
        while True:
            cur = self.mul(cur, a)
            stack = linalg.from_columns(f, self.dim, powers)
            sol = linalg.solve(stack, Mat.column(f, cur))
            if sol is not None:
                coeffs = [f.neg(sol.data[i][0]) for i in range(len(powers))]
                coeffs.append(f.one)
                return coeffs
            powers.append(cur[:])

    def evaluate_poly(self, coeffs: list, a: list) -> list:
        f = self.field
        out = [f.zero] * self.dim
        for c in reversed(coeffs):
            out = self.mul(out, a)
            if c != 0:
                for i in range(self.dim):
                    out[i] = f.add(out[i], f.mul(c, self.unit[i]))
        return out

    # -- radical --

    def radical_basis(self) -> List[list]:
        f = self.field
        k = self.dim
        if k == 0:
            return []
        if f.characteristic == 0:
            gram = Mat.zeros(f, k, k)
            lm = self.left_mult
            for i in range(k):
                for j in range(i, k):
                    t = lm[i].mul(lm[j]).trace()
                    gram.data[i][j] = t
                    gram.data[j][i] = t
            ker = linalg.solve_kernel(gram)
            basis = [ker.col(c) for c in range(ker.cols)]
        else:
            basis = self._radical_basis_prime_field()
        self._verify_nilpotent_ideal(basis)
        return basis

    def _radical_basis_prime_field(self) -> List[list]:
        # iterated p-power trace chain: refine R by the kernels of
        # x -> tr((L_x L_y)^(p^m)) until p^m exceeds the dimension
        f = self.field
        p = f.characteristic
        k = self.dim
        current = self.std_basis()
        q = 1
        while True:
            if not current:
                return []
            lms = [self.left_mult_matrix(x) for x in current]
            rows = []
            for ly in lms:
                row = []
                for lx in lms:
                    row.append(_mat_power(lx.mul(ly), q).trace())
                rows.append(row)
            ker = linalg.solve_kernel(Mat(f, len(rows), len(current), rows))
            new_basis = []
            for c in range(ker.cols):
                vec = [f.zero] * k
                for i in range(len(current)):
                    ci = ker.data[i][c]
                    if ci != 0:
                        for t in range(k):
                            vec[t] = f.add(vec[t], f.mul(ci, current[i][t]))
                new_basis.append(vec)
            current = new_basis
            if q > k:
                return current
            q *= p

    def _verify_nilpotent_ideal(self, basis: List[list]):
        if not basis:
            return
        f = self.field
        std = self.std_basis()
        span = linalg.from_columns(f, self.dim, basis)
        for b in std:
            for n in basis:
                for prod in (self.mul(b, n), self.mul(n, b)):
                    if linalg.solve(span, Mat.column(f, prod)) is None:
                        raise IdempotentSplitFailure("radical candidate is not an ideal")
        current = [v[:] for v in basis]
        for _ in range(self.dim + 1):
            nxt = []
            for x in current:
                for y in basis:
                    prod = self.mul(x, y)
                    if any(c != 0 for c in prod):
                        nxt.append(prod)
            if not nxt:
                return
            cb = linalg.column_space_basis(linalg.from_columns(f, self.dim, nxt))
            current = [cb.col(c) for c in range(cb.cols)]
        raise IdempotentSplitFailure("radical candidate is not nilpotent")

    def quotient_by(self, ideal_basis: List[list]) -> Tuple["AlgebraCore", List[list]]:
        """Quotient algebra by a nilpotent ideal.

        Returns the quotient core and a complement basis (vectors in self
        coordinates representing the quotient basis).
        """
        f = self.field
        k = self.dim
        if not ideal_basis:
            return self, self.std_basis()
        base = linalg.column_space_basis(linalg.from_columns(f, k, ideal_basis))
        _, pivots = linalg.rref(base.transpose())
        comp = []
        for i in range(k):
            if i not in pivots:
                v = [f.zero] * k
                v[i] = f.one
                comp.append(v)
        full = linalg.from_columns(
            f, k, [base.col(c) for c in range(base.cols)] + comp)
        full_inv = linalg.inverse(full)
        qdim = len(comp)

        def project(vec: list) -> list:
            col = full_inv.mul(Mat.column(f, vec))
            return [col.data[base.cols + i][0] for i in range(qdim)]

        left = []
        for r in range(qdim):
            m = Mat.zeros(f, qdim, qdim)
            for c in range(qdim):
                pv = project(self.mul(comp[r], comp[c]))
                for t in range(qdim):
                    m.data[t][c] = pv[t]
            left.append(m)
        return AlgebraCore(f, left, project(self.unit)), comp


# --------------------------------------------------------------------------
# idempotent search in a semisimple core
# --------------------------------------------------------------------------

def _candidate_stream(core: AlgebraCore):
    f = core.field
    k = core.dim
    std = core.std_basis()
    for b in std:
        yield b
    for i in range(k):
        for j in range(k):
            if i != j:
                yield core.mul(std[i], std[j])
    for i in range(k):
        for j in range(i + 1, k):
            yield [f.add(x, y) for x, y in zip(std[i], std[j])]
    if k <= 10:
        for mask in range(3, 2 ** k):
            if mask & (mask - 1) == 0:
                continue
            vec = [f.zero] * k
            for i in range(k):
                if mask >> i & 1:
                    vec = [f.add(x, y) for x, y in zip(vec, std[i])]
            yield vec
    limit = 2 * k + 6 if f.characteristic == 0 else min(f.characteristic, 2 * k + 6)
    for c in range(2, limit):
        cc = f.coerce(c)
        vec = [f.zero] * k
        power = f.one
        for i in range(k):
            vec = [f.add(x, f.mul(power, y)) for x, y in zip(vec, std[i])]
            power = f.mul(power, cc)
        yield vec


def _idempotent_from_coprime_split(core: AlgebraCore, x: list, m: list,
                                   factors: List[Tuple[list, int]]) -> list:
    f = core.field
    a = [f.one]
    g0, e0 = factors[0]
    for _ in range(e0):
        a = _poly_mul(f, a, g0)
    b = [f.one]
    for g, e in factors[1:]:
        for _ in range(e):
            b = _poly_mul(f, b, g)
    g, u, _v = _poly_gcdex(f, a, b)
    if len(g) != 1:
        raise IdempotentSplitFailure("expected coprime factor split")
    ua = _poly_divmod(f, _poly_mul(f, u, a), m)[1]
    return core.evaluate_poly(ua, x)


def _idempotent_from_nilpotent(core: AlgebraCore, y: list) -> Optional[list]:
    """In a semisimple algebra the right ideal yA is eA for an idempotent e
    acting as a left identity on it; solve for e linearly."""
    f = core.field
    k = core.dim
    gens = [core.mul(y, b) for b in core.std_basis()]
    span = linalg.column_space_basis(linalg.from_columns(f, k, gens))
    idim = span.cols
    if idim == 0:
        return None
    ideal = [span.col(c) for c in range(idim)]
    rows: List[list] = []
    rhs_rows: List[list] = []
    for z in ideal:
        prods = [core.mul(w, z) for w in ideal]
        for coord in range(k):
            rows.append([p[coord] for p in prods])
            rhs_rows.append([z[coord]])
    sol = linalg.solve(Mat(f, len(rows), idim, rows),
                       Mat(f, len(rhs_rows), 1, rhs_rows))
    if sol is None:
        raise IdempotentSplitFailure(
            "right ideal has no left identity; the radical must be wrong")
    e = [f.zero] * k
    for t in range(idim):
        c = sol.data[t][0]
        if c != 0:
            for coord in range(k):
                e[coord] = f.add(e[coord], f.mul(c, ideal[t][coord]))
    return e


def find_idempotent_semisimple(core: AlgebraCore) -> Optional[list]:
    """A nontrivial idempotent of a semisimple core, or None when the core is
    certified to be a division algebra (one-dimensional, or a commutative
    field).  Raises IdempotentSplitFailure when the search is inconclusive.
    """
    f = core.field
    k = core.dim
    if k <= 1:
        return None
    max_minpoly_degree = 0
    for x in _candidate_stream(core):
        if all(c == 0 for c in x) or core.is_scalar(x):
            continue
        m = core.minimal_polynomial(x)
        max_minpoly_degree = max(max_minpoly_degree, len(m) - 1)
        factors = factor_poly(f, m)
        e = None
        if len(factors) >= 2:
            e = _idempotent_from_coprime_split(core, x, m, factors)
        elif factors[0][1] >= 2:
            y = core.evaluate_poly(factors[0][0], x)
            e = _idempotent_from_nilpotent(core, y)
        if e is not None:
            if core.mul(e, e) != e:
                raise IdempotentSplitFailure("constructed element is not idempotent")
            if all(c == 0 for c in e) or core.is_scalar(e):
                raise IdempotentSplitFailure("constructed idempotent is trivial")
            return e
    if core.is_commutative() and max_minpoly_degree == k:
        return None  # primitive element certifies a field
    if f.characteristic and f.characteristic ** k <= 200000:
        for coeffs in itertools.product(range(f.characteristic), repeat=k):
            x = [f.coerce(c) for c in coeffs]
            if all(c == 0 for c in x) or core.is_scalar(x):
                continue
            if core.mul(x, x) == x:
                return x
        return None
    raise IdempotentSplitFailure(
        "cannot decide whether the semisimple quotient is a division algebra")


# --------------------------------------------------------------------------
# End(M) and the decomposition of representations
# --------------------------------------------------------------------------

def _flatten(morphism: RepMorphism) -> list:
    out = []
    for m in morphism.maps:
        for row in m.data:
            out.extend(row)
    return out


class EndAlgebra:
    """End(M) with structure constants, built from a hom basis."""

    def __init__(self, m: Rep):
        self.module = m
        self.field = m.algebra.field
        self.basis = hom_basis(m, m)
        self.dim = len(self.basis)
        flat = [_flatten(b) for b in self.basis]
        veclen = len(flat[0]) if flat else 0
        self._basis_mat = linalg.from_columns(self.field, veclen, flat) if flat else None

    def coords_of(self, morphism: RepMorphism) -> list:
        sol = linalg.solve(self._basis_mat, Mat.column(self.field, _flatten(morphism)))
        if sol is None:
            raise ValueError("morphism does not lie in End(M)")
        return [sol.data[i][0] for i in range(self.dim)]

    def morphism_of(self, coords: list) -> RepMorphism:
        out = None
        for c, b in zip(coords, self.basis):
            if c == 0:
                continue
            term = b.scale(c)
            out = term if out is None else out.add(term)
        if out is None:
            m = self.module
            z = [Mat.zeros(self.field, d, d) for d in m.dims]
            return RepMorphism(m, m, z, validate=False)
        return out

    def core(self) -> AlgebraCore:
        f = self.field
        left = []
        for bi in self.basis:
            cols = [self.coords_of(bi.compose(bj)) for bj in self.basis]
            left.append(linalg.from_columns(f, self.dim, cols))
        ident = RepMorphism(self.module, self.module,
                            [Mat.identity(f, d) for d in self.module.dims],
                            validate=False)
        return AlgebraCore(f, left, self.coords_of(ident))


def _split_by_idempotent(m: Rep, e: RepMorphism) -> Tuple[Rep, Rep]:
    spans_im = [e.maps[v] for v in range(len(m.dims))]
    spans_ker = [linalg.solve_kernel(e.maps[v]) for v in range(len(m.dims))]
    a, _ = submodule_from_spans(m, spans_im)
    b, _ = submodule_from_spans(m, spans_ker)
    if a.total_dim + b.total_dim != m.total_dim or a.total_dim == 0 or b.total_dim == 0:
        raise IdempotentSplitFailure("idempotent did not split the module")
    return a, b


def indecomposable_parts(m: Rep) -> List[Rep]:
    """All indecomposable direct summands of m, with repetition."""
    if m.total_dim == 0:
        return []
    end = EndAlgebra(m)
    if end.dim == 1:
        return [m]
    core = end.core()
    rad = core.radical_basis()
    quot, comp = core.quotient_by(rad)
    if quot.dim == 1:
        return [m]
    ebar = find_idempotent_semisimple(quot)
    if ebar is None:
        return [m]
    f = core.field
    e = [f.zero] * core.dim
    for t, c in enumerate(ebar):
        if c != 0:
            for coord in range(core.dim):
                e[coord] = f.add(e[coord], f.mul(c, comp[t][coord]))
    # lift through the nilpotent ideal: e <- 3e^2 - 2e^3 squares the error
    for _ in range(60):
        if core.mul(e, e) == e:
            break
        e2 = core.mul(e, e)
        e3 = core.mul(e2, e)
        e = [f.sub(f.mul(f.coerce(3), a), f.mul(f.coerce(2), b)) for a, b in zip(e2, e3)]
    else:
        raise IdempotentSplitFailure("idempotent lifting did not converge")
    a, b = _split_by_idempotent(m, end.morphism_of(e))
    return indecomposable_parts(a) + indecomposable_parts(b)


def decompose(m: Rep) -> List[Tuple[Rep, int]]:
    """Decomposition into indecomposables with multiplicities."""
    parts = indecomposable_parts(m)
    groups: List[Tuple[Rep, int]] = []
    for p in parts:
        for i, (q, mult) in enumerate(groups):
            if is_isomorphic(p, q):
                groups[i] = (q, mult + 1)
                break
        else:
            groups.append((p, 1))
    return groups


def delta(m: Rep) -> int:
    """Number of indecomposable direct summands."""
    return len(indecomposable_parts(m))


def is_isomorphic(m: Rep, n: Rep) -> bool:
    """Exact isomorphism test.

    Sweeps 0/1 coefficient combinations of the hom basis, then a full grid
    whose size certifies a negative answer: over the rationals, a nonzero
    product of vertex determinants has degree at most the total dimension,
    so it cannot vanish on the whole (degree+1)-point grid.
    """
    if m.algebra is not n.algebra or m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    basis = hom_basis(m, n)
    if not basis:
        return False
    k = len(basis)

    def invertible(coeffs) -> bool:
        f = None
        for c, b in zip(coeffs, basis):
            if c == 0:
                continue
            term = b.scale(c)
            f = term if f is None else f.add(term)
        if f is None:
            return False
        return all(linalg.is_invertible(mm) for mm in f.maps)

    if k <= 12:
        for mask in range(1, 2 ** k):
            if invertible([1 if mask >> i & 1 else 0 for i in range(k)]):
                return True
    degree = sum(m.dims)
    field = m.algebra.field
    if field.characteristic and field.characteristic <= degree:
        grid = list(range(field.characteristic))
        certifies = False  # a small prime field grid may be too coarse
    else:
        grid = list(range(degree + 1))
        certifies = True
    if len(grid) ** k > 300000:
        raise InconclusiveTest("isomorphism grid of size %d exceeds the guard"
                               % len(grid) ** k)
    for coeffs in itertools.product(grid, repeat=k):
        if any(coeffs) and invertible(coeffs):
            return True
    if not certifies:
        raise InconclusiveTest("prime field too small to certify non-isomorphism")
    return False
