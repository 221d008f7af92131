"""Dense univariate polynomials over a cyclotomic field.

Polynomials are lists of CycloNum, lowest degree first, with no trailing
zeros (the zero polynomial is the empty list).  These helpers back the
elimination routines in curvegeom.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .cyclo import CycloNum, as_cyclo, rat

Poly = list


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def deg(p: Poly) -> int:
    return len(p) - 1


def const(c, n: int = 1) -> Poly:
    c = as_cyclo(c, n)
    return [] if c.is_zero() else [c]


def add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return trim(out)


def neg(a: Poly) -> Poly:
    return [-x for x in a]


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, neg(b))


def scale(a: Poly, c) -> Poly:
    c = as_cyclo(c)
    if c.is_zero():
        return []
    return [x * c for x in a]


def mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out: list = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if y.is_zero():
                continue
            t = x * y
            k = i + j
            out[k] = t if out[k] is None else out[k] + t
    zero = rat(0, a[0].n)
    return trim([zero if v is None else v for v in out])


def monic(a: Poly) -> Poly:
    if not a:
        return []
    lc = a[-1]
    if lc == 1:
        return list(a)
    inv = lc.inverse()
    return [x * inv for x in a]


def divmod_(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = deg(b)
    if len(r) - 1 < db:
        return [], trim(r)
    inv = b[-1].inverse()
    q: list = [rat(0, b[0].n)] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c.is_zero():
            continue
        c = c * inv
        q[k] = c
        for i, y in enumerate(b):
            if not y.is_zero():
                r[k + i] = r[k + i] - c * y
    return trim(q), trim(r[:db])


def rem(a: Poly, b: Poly) -> Poly:
    return divmod_(a, b)[1]


def exact_div(a: Poly, b: Poly) -> Poly:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def gcd(a: Poly, b: Poly) -> Poly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, monic(rem(a, b))
    return monic(a)


def derivative(a: Poly) -> Poly:
    return trim([x * i for i, x in enumerate(a)][1:])


def squarefree(a: Poly) -> Poly:
    """Product of the distinct irreducible factors (characteristic zero)."""
    a = trim(a)
    if deg(a) <= 0:
        return monic(a)
    g = gcd(a, derivative(a))
    return monic(exact_div(a, g)) if deg(g) > 0 else monic(a)


def evaluate(a: Poly, x) -> CycloNum:
    x = as_cyclo(x)
    acc = rat(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def compose_linear(a: Poly, shift, n: int = 1) -> Poly:
    """a(y + shift)."""
    s = const(shift, n)
    lin = add([rat(0, n), rat(1, n)], s) if s else [rat(0, n), rat(1, n)]
    acc: Poly = []
    for c in reversed(a):
        acc = add(mul(acc, lin), [c])
    return acc


def galois(a: Poly, j: int) -> Poly:
    return [c.galois(j) for c in a]


def promote_all(a: Poly, n: int) -> Poly:
    return [c.promote(n) for c in a]


def is_rational(a: Poly) -> bool:
    return all(c.is_rational() for c in a)


def resultant(a: Poly, b: Poly) -> CycloNum:
    """Res(a, b) by the Euclidean recursion over the field."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return rat(0)
    acc = rat(1)
    while True:
        da, db = deg(a), deg(b)
        if db == 0:
            return acc * b[0] ** da
        r = rem(a, b)
        if not r:
            return rat(0)
        dr = deg(r)
        if (da * db) % 2:
            acc = -acc
        acc = acc * b[-1] ** (da - dr)
        a, b = b, r


def interpolate(xs: Sequence[int], ys: Sequence[CycloNum]) -> Poly:
    """Newton interpolation through (x_i, y_i) with distinct integer nodes."""
    n = len(xs)
    coef = [as_cyclo(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * Fraction(1, xs[i] - xs[i - j])
    out: Poly = []
    for i in range(n - 1, -1, -1):
        out = add(mul(out, [rat(-xs[i]), rat(1)]), [coef[i]])
    return out


# -- arithmetic modulo a polynomial (possibly not irreducible) -------------------

class ZeroDivisorFound(Exception):
    """Raised when a non-unit, nonzero residue is inverted; carries a factor."""

    def __init__(self, factor: Poly):
        super().__init__("zero divisor")
        self.factor = factor


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = const(1), []
    t0, t1 = [], const(1)
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = r0[-1].inverse()
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def inv_mod(a: Poly, m: Poly) -> Poly:
    a = rem(a, m)
    if not a:
        raise ZeroDivisorFound(m)
    g, s, _ = xgcd(a, m)
    if deg(g) > 0:
        raise ZeroDivisorFound(g)
    return rem(s, m)


def mul_mod(a: Poly, b: Poly, m: Poly) -> Poly:
    return rem(mul(a, b), m)


# -- polynomials with coefficients in K[y]/(h), the variable being x ----------

def mpoly_trim(p: list, h: Poly) -> list:
    p = [rem(c, h) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def mpoly_rem(a: list, b: list, h: Poly) -> list:
    """Remainder of a by b in (K[y]/h)[x]; b's leading coefficient must be a unit."""
    inv = inv_mod(b[-1], h)
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = mul_mod(r[-1], inv, h)
        shift = len(r) - 1 - db
        for i, y in enumerate(b):
            r[shift + i] = rem(sub(r[shift + i], mul(c, y)), h)
        r = mpoly_trim(r, h)
    return r


def mpoly_monic(a: list, h: Poly) -> list:
    inv = inv_mod(a[-1], h)
    return [mul_mod(c, inv, h) for c in a]


def mpoly_gcd(a: list, b: list, h: Poly) -> list:
    a, b = mpoly_trim(a, h), mpoly_trim(b, h)
    while b:
        a, b = b, mpoly_rem(a, b, h)
    return mpoly_monic(a, h) if a else []


def mpoly_derivative(a: list, h: Poly) -> list:
    return mpoly_trim([scale(c, i) for i, c in enumerate(a)][1:], h)


def mpoly_eval(a: list, x) -> Poly:
    """Evaluate at a K constant x, returning a polynomial in y."""
    acc: Poly = []
    xc = as_cyclo(x)
    for c in reversed(a):
        acc = add(scale(acc, xc), c)
    return acc


def split_modulus(h: Poly, f: Poly) -> tuple[Poly, Poly]:
    g = gcd(h, f)
    return g, exact_div(h, g)


# -- roots in a cyclotomic field -----------------------------------------------

def _to_sympy(a: Poly):
    import sympy
    y = sympy.Symbol("y")
    coeffs = [sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator) for c in reversed(a)]
    return sympy.Poly(coeffs, y, domain="QQ")


def _from_sympy(p) -> Poly:
    out = []
    for c in reversed(p.all_coeffs()):
        out.append(rat(Fraction(int(c.p), int(c.q))))
    return trim(out)


def factor_rational(a: Poly) -> list[Poly]:
    """Monic irreducible factors over Q of a rational polynomial (via sympy)."""
    if deg(a) <= 0:
        return []
    _, facs = _to_sympy(a).factor_list()
    return [monic(_from_sympy(f)) for f, _ in facs]


def norm_poly(g: Poly, m: int) -> Poly:
    """Norm from Q(zeta_m)[y] down to Q[y]: the product of all conjugates."""
    from math import gcd as igcd
    g = promote_all(g, m)
    out = const(1, m)
    for j in range(1, m + 1):
        if igcd(j, m) == 1:
            out = mul(out, galois(g, j))
    if not is_rational(out):
        raise ArithmeticError("norm is not rational")
    return [rat(c.to_fraction()) for c in out]


def factor_in_field(f: Poly, m: int, max_shift: int = 12) -> list[Poly]:
    """Monic irreducible factors over Q(zeta_m) of a squarefree f (Trager's method)."""
    from .cyclo import zeta
    f = monic(trim(f))
    if deg(f) <= 0:
        return []
    if deg(f) == 1:
        return [promote_all(f, m)]
    if is_rational(f) and m > 1:
        parts = factor_rational(f)
        if len(parts) > 1:
            out = []
            for p in parts:
                out.extend(factor_in_field(p, m, max_shift))
            return out
    z = zeta(m)
    for s in range(max_shift + 1):
        shift = -(z * s) if s else rat(0, m)
        g = compose_linear(f, shift, m)          # g(y) = f(y - s z)
        nrm = norm_poly(g, m)
        if deg(gcd(nrm, derivative(nrm))) > 0:
            continue
        out = []
        for q in factor_rational(nrm):
            h = gcd(promote_all(g, m), promote_all(q, m))
            if deg(h) > 0:
                out.append(compose_linear(h, -shift, m) if s else h)
        return [monic(h) for h in out]
    raise ArithmeticError("no squarefree norm found for the allowed shifts")


def roots_in_field(f: Poly, m: int) -> tuple[list[CycloNum], list[Poly]]:
    """Roots of a squarefree f lying in Q(zeta_m), and the remaining factors."""
    roots, rest = [], []
    for h in factor_in_field(f, m):
        if deg(h) == 1:
            roots.append(-h[0] / h[1])
        else:
            rest.append(h)
    return roots, rest


def mpoly_divexact(a: list, b: list, h: Poly) -> list:
    """Quotient of a by b in (K[y]/h)[x]; b's leading coefficient must be a unit."""
    inv = inv_mod(b[-1], h)
    r = mpoly_trim(a, h)
    db = len(b) - 1
    q = [[] for _ in range(max(len(r) - db, 0))]
    while r and len(r) - 1 >= db:
        c = mul_mod(r[-1], inv, h)
        shift = len(r) - 1 - db
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] = rem(sub(r[shift + i], mul(c, y)), h)
        r = mpoly_trim(r, h)
    if r:
        raise ArithmeticError("division in the residue ring is not exact")
    return mpoly_trim(q, h)


def min_poly_mod(alpha: Poly, h: Poly) -> Poly:
    """Minimal polynomial over K of multiplication by alpha on K[y]/(h)."""
    n = deg(h)
    basis: list = []      # reduced rows (vector, combination)
    pivots: list = []
    power = const(1, h[0].n if h else 1)
    k = 0
    while True:
        r = rem(power, h)
        vec = [r[i] if i < len(r) else rat(0) for i in range(n)]
        comb = [rat(0)] * (k + 1)
        comb[k] = rat(1)
        for (bv, bc), p in zip(basis, pivots):
            c = vec[p]
            if not c.is_zero():
                vec = [x - c * y for x, y in zip(vec, bv)]
                comb = [x - c * (bc[i] if i < len(bc) else rat(0)) for i, x in enumerate(comb)]
        p = next((i for i, x in enumerate(vec) if not x.is_zero()), None)
        if p is None:
            return monic(trim(comb))
        inv = vec[p].inverse()
        basis.append(([x * inv for x in vec], [x * inv for x in comb]))
        pivots.append(p)
        power = mul_mod(power, alpha, h)
        k += 1
