"""Singularities of plane and bidegree curves, genera, and local germ data.

Singular loci are found by elimination.  The partial derivatives are moved
by a recorded random integer change of coordinates, restricted to an affine
chart, and a generic shear makes all common zeros have distinct second
coordinates.  A squarefree eliminant h(y) is then obtained from resultants
(computed by evaluation and interpolation), and the fiberwise gcd of all
equations over K[y]/(h) is taken with dynamic splitting of h whenever a
zero divisor shows up.  Every common zero is thus described by a pair
h_j(s) = 0, point = (polynomials in s), and explicit points come from the
linear factors of h_j over the requested cyclotomic field.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence

from . import upoly as U
from .cyclo import CycloNum, as_cyclo, common_conductor, rat, _lcm
from .matgroup import PointP, mat_det
from .polyring import (Grading, MultiPoly, evaluate, gradient, monomial_content, parse_poly,
                       partial, substitute_linear)


class CurveError(ValueError):
    pass


class NonReducedCurveError(CurveError):
    """The equations share a curve component (non-reduced or singular along a curve)."""


SEED = 20240601


# -- curves ---------------------------------------------------------------------

class PlaneCurve:
    """A plane curve (3 variables, total degree) or a P1xP1 curve (4 variables, bidegree)."""

    def __init__(self, poly: MultiPoly, name: str = ""):
        if poly.is_zero():
            raise CurveError("the zero polynomial does not define a curve")
        if poly.grading.kind == "total":
            if poly.nvars != 3:
                raise CurveError("plane curves need 3 variables")
        elif poly.nvars != 4 or poly.grading.split != 2:
            raise CurveError("bidegree curves need 4 variables split 2+2")
        self.poly = poly
        self.name = name

    @property
    def is_bidegree(self) -> bool:
        return self.poly.grading.kind == "bi"

    @property
    def degree(self):
        return self.poly.grading.deg


def _as_curve(c) -> PlaneCurve:
    return c if isinstance(c, PlaneCurve) else PlaneCurve(c)


def is_singular_at(C, p: PointP) -> bool:
    C = _as_curve(C)
    coords = p.coords if isinstance(p, PointP) else [as_cyclo(x) for x in p]
    if len(coords) != C.poly.nvars:
        raise CurveError("point and curve live in different ambient spaces")
    return all(evaluate(d, coords).is_zero() for d in gradient(C.poly))


# -- bivariate helpers (dict {(i, j): c} for x^i y^j) ------------------------------

def _bi_total(p: dict) -> int:
    return max((i + j for i, j in p), default=0)


def _bi_xdeg(p: dict) -> int:
    return max((i for i, _ in p), default=0)


def _bi_shear(p: dict, t: int) -> dict:
    """p(x, y - t*x)."""
    if t == 0:
        return dict(p)
    out: dict = {}
    from math import comb
    for (i, j), c in p.items():
        for k in range(j + 1):
            # binom(j,k) y^(j-k) (-t x)^k
            coef = c * (comb(j, k) * (-t) ** k)
            key = (i + k, j - k)
            out[key] = out[key] + coef if key in out else coef
    return {k: v for k, v in out.items() if not v.is_zero()}


def _bi_as_xpoly(p: dict) -> list:
    """List over x-degree of y-polynomials."""
    dx = _bi_xdeg(p)
    cols: list = [dict() for _ in range(dx + 1)]
    for (i, j), c in p.items():
        cols[i][j] = c
    out = []
    for col in cols:
        dy = max(col, default=-1)
        out.append(U.trim([col.get(j, rat(0)) for j in range(dy + 1)]))
    while out and not out[-1]:
        out.pop()
    return out


def _bi_eval_y(xp: list, y0: int) -> list:
    return U.trim([U.evaluate(c, y0) if c else rat(0) for c in xp])


def _bi_combine(polys: list, coeffs: list) -> dict:
    out: dict = {}
    for p, a in zip(polys, coeffs):
        if a == 0:
            continue
        for k, v in p.items():
            t = v * a
            out[k] = out[k] + t if k in out else t
    return {k: v for k, v in out.items() if not v.is_zero()}


def resultant_x(p: dict, q: dict) -> list:
    """Res_x(p, q) as a polynomial in y, by evaluation at integers and interpolation."""
    xp, xq = _bi_as_xpoly(p), _bi_as_xpoly(q)
    if not xp or not xq:
        return []
    bound = _bi_total(p) * _bi_total(q)
    lp, lq = xp[-1], xq[-1]
    nodes, vals = [], []
    y0 = 0
    while len(nodes) < bound + 2:
        if not U.evaluate(lp, y0).is_zero() and not U.evaluate(lq, y0).is_zero():
            nodes.append(y0)
            vals.append(U.resultant(_bi_eval_y(xp, y0), _bi_eval_y(xq, y0)))
        y0 = -y0 if y0 > 0 else -y0 + 1
    r = U.interpolate(nodes[:-1], vals[:-1])
    if U.evaluate(r, nodes[-1]) != vals[-1]:
        raise ArithmeticError("resultant degree bound violated")
    return r


def _det(rows: list) -> CycloNum:
    """Determinant by elimination; plain fractions when every entry is rational."""
    n = len(rows)
    if n == 0:
        return rat(1)
    cond = common_conductor(x for r in rows for x in r)
    if all(x.is_rational() for r in rows for x in r):
        m = [[x.to_fraction() for x in r] for r in rows]
        zero = Fraction(0)
    else:
        m = [[x.promote(cond) for x in r] for r in rows]
        zero = None
    sign = 1
    acc = Fraction(1) if zero is not None else rat(1, cond)
    for c in range(n):
        piv = next((i for i in range(c, n) if (m[i][c] != zero if zero is not None else not m[i][c].is_zero())), None)
        if piv is None:
            return rat(0, cond)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        p = m[c][c]
        acc = acc * p
        inv = 1 / p if zero is not None else p.inverse()
        for i in range(c + 1, n):
            if (m[i][c] != zero) if zero is not None else not m[i][c].is_zero():
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    acc = acc if sign > 0 else -acc
    return rat(acc) if zero is not None else acc


def _subresultant1(a: list, b: list) -> tuple:
    """Coefficients (s0, s1) of the first subresultant s1*x + s0 of two univariate polynomials."""
    m, n = U.deg(a), U.deg(b)
    if m < 1 or n < 1 or m + n < 3:
        return None
    size = m + n - 1                    # columns: powers size-1 .. 0
    rows = []
    for k in range(n - 1):
        rows.append([a[p - k] if 0 <= p - k <= m else rat(0) for p in range(size - 1, -1, -1)])
    for k in range(m - 1):
        rows.append([b[p - k] if 0 <= p - k <= n else rat(0) for p in range(size - 1, -1, -1)])
    lead = [r[:size - 2] for r in rows]
    d1 = _det([l + [r[size - 2]] for l, r in zip(lead, rows)])
    d0 = _det([l + [r[size - 1]] for l, r in zip(lead, rows)])
    return d0, d1


def subresultant1_x(p: dict, q: dict) -> Optional[tuple]:
    """First subresultant of p, q in x, as (s0(y), s1(y)), by interpolation."""
    xp, xq = _bi_as_xpoly(p), _bi_as_xpoly(q)
    if len(xp) < 2 or len(xq) < 2 or len(xp) + len(xq) < 5:
        return None
    bound = _bi_total(p) * _bi_total(q)
    lp, lq = xp[-1], xq[-1]
    nodes, v0, v1 = [], [], []
    y0 = 0
    while len(nodes) < bound + 2:
        if not U.evaluate(lp, y0).is_zero() and not U.evaluate(lq, y0).is_zero():
            d0, d1 = _subresultant1(_bi_eval_y(xp, y0), _bi_eval_y(xq, y0))
            nodes.append(y0)
            v0.append(d0)
            v1.append(d1)
        y0 = -y0 if y0 > 0 else -y0 + 1
    s0 = U.interpolate(nodes[:-1], v0[:-1])
    s1 = U.interpolate(nodes[:-1], v1[:-1])
    if U.evaluate(s0, nodes[-1]) != v0[-1] or U.evaluate(s1, nodes[-1]) != v1[-1]:
        raise ArithmeticError("subresultant degree bound violated")
    return s0, s1


def _fiber_from_subresultant(xpolys: list, sub1, h: list) -> Optional[list]:
    """[(h, x - x(y))] when the subresultant pins down one common zero per fiber, else None."""
    if sub1 is None:
        return None
    s0, s1 = (U.rem(c, h) if c else [] for c in sub1)
    if not s1:
        return None
    try:
        x = U.rem(U.neg(U.mul(s0, U.inv_mod(s1, h))), h) if s0 else []
    except U.ZeroDivisorFound:
        return None
    for xp in xpolys:
        acc: list = []
        for c in reversed(xp):
            acc = U.add(U.mul_mod(acc, x, h) if acc else [], U.rem(c, h) if c else [])
        if U.rem(acc, h) if acc else []:
            return None
    one = U.const(1, h[0].n)
    return [(h, [U.neg(x) if x else [], one])]


def _binary_common_zero(forms: list) -> bool:
    """Do binary forms (coefficient lists in t for a^(d-k) b^k) share a zero in P1?"""
    forms = [(d, U.trim(f)) for d, f in forms]
    forms = [(d, f) for d, f in forms if f]
    if not forms:
        return True
    at_inf = all(U.deg(f) < d for d, f in forms)
    if at_inf:
        return True
    g: list = []
    for _, f in forms:
        g = U.gcd(g, f) if g else U.monic(f)
        if U.deg(g) == 0:
            return False
    return U.deg(g) > 0


# -- the fiberwise gcd with dynamic splitting -----------------------------------------------

def _d5_fibers(xpolys: list, h: list) -> list:
    """Split h and return [(h_j, g_j)] with g_j the squarefree fiber gcd over K[y]/h_j."""
    try:
        g: list = []
        for p in xpolys:
            g = U.mpoly_gcd(g, p, h) if g else U.mpoly_trim(p, h)
        g = U.mpoly_trim(g, h)
        if not g:
            raise NonReducedCurveError("equations vanish on a whole fiber")
        g = U.mpoly_monic(g, h)          # splits h if the leading coefficient is a zero divisor
        if len(g) == 1:
            return [(h, g)]
        dg = U.mpoly_derivative(g, h)
        gg = U.mpoly_gcd(g, dg, h) if dg else g
        if len(gg) > 1:
            g = U.mpoly_monic(U.mpoly_divexact(g, gg, h), h)
        return [(h, g)]
    except U.ZeroDivisorFound as e:
        h1 = U.gcd(h, e.factor)
        h2 = U.exact_div(h, h1)
        return _d5_fibers(xpolys, h1) + _d5_fibers(xpolys, h2)


@dataclass
class ZeroComponent:
    """Common zeros {coords(s) : h(s) = 0}; coords are polynomials in s mod h."""
    h: list
    coords: list
    chart: list = field(default_factory=list)   # affine chart coordinates before the change

    @property
    def count(self) -> int:
        return U.deg(self.h)


def _eliminant(polys: list, rng: random.Random, tries: int = 3) -> tuple:
    for _ in range(tries):
        c1 = [rng.randint(1, 9) for _ in polys]
        c2 = [rng.randint(-9, 9) for _ in polys]
        l1 = _bi_combine(polys, c1)
        l2 = _bi_combine(polys, c2)
        r1 = resultant_x(l1, l2)
        if not r1:
            continue
        h = U.squarefree(r1)
        if len(polys) > 2 and U.deg(h) > 0:
            c3 = [rng.randint(-9, 9) for _ in polys]
            r2 = resultant_x(l1, _bi_combine(polys, c3))
            if r2:
                h = U.gcd(h, r2)
        return U.monic(h), l1, l2
    raise NonReducedCurveError("resultants vanish identically: the equations share a component")


def affine_common_zeros(polys: list, rng: Optional[random.Random] = None, attempts: int = 8) -> tuple:
    """Finite common zero set of bivariate polynomials; returns (components, shear)."""
    rng = rng or random.Random(SEED)
    polys = [p for p in polys if p]
    if not polys:
        raise NonReducedCurveError("no nonzero equations")
    for _ in range(attempts):
        t = rng.choice([v for v in range(-12, 13) if v])
        sheared = [_bi_shear(p, t) for p in polys]
        h, l1, l2 = _eliminant(sheared, rng)
        if U.deg(h) <= 0:
            return [], t
        xps = [_bi_as_xpoly(p) for p in sheared]
        # splitting a rational eliminant first keeps the residue rings small
        parts = U.factor_rational(h) if U.is_rational(h) else [h]
        sub1 = subresultant1_x(l1, l2)
        fibers = []
        for part in parts:
            fb = _fiber_from_subresultant(xps, sub1, part)
            fibers.extend(fb if fb is not None else _d5_fibers(xps, part))
        if any(len(g) > 2 for _, g in fibers):
            continue
        comps = []
        for hj, g in fibers:
            if len(g) < 2:
                continue
            x = U.neg(g[0]) if g[0] else []
            y = U.sub([rat(0), rat(1)], U.scale(x, t))
            comps.append(ZeroComponent(U.monic(hj), [U.rem(x, hj), U.rem(y, hj)]))
        return comps, t
    raise CurveError("no generic shear found: several common zeros share a fiber")


# -- projective and biprojective wrappers ------------------------------------------------------

def _random_matrix(rng: random.Random, n: int) -> list:
    while True:
        m = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if mat_det(tuple(tuple(rat(x) for x in r) for r in m)) != 0:
            return m


def _dehomogenize(f: MultiPoly, drop: Sequence[int], keep: Sequence[int]) -> dict:
    """Set the variables in ``drop`` to 1; the ``keep`` variables become (x, y)."""
    out: dict = {}
    for mono, c in f.terms.items():
        key = tuple(mono[k] for k in keep)
        out[key] = out[key] + c if key in out else c
    return {k: v for k, v in out.items() if not v.is_zero()}


def _restrict_binary(f: MultiPoly, zero_var: int, one_var: int, a: int, b: int) -> tuple:
    """Restrict f to {x_zero_var = 0, x_one_var = 1}; return (degree, coeffs in t = b/a)."""
    coeffs: dict = {}
    d = None
    for mono, c in f.terms.items():
        if mono[zero_var]:
            continue
        k = mono[b]
        d = mono[a] + mono[b]
        coeffs[k] = coeffs[k] + c if k in coeffs else c
    if d is None:
        return (0, [])
    return (d, U.trim([coeffs.get(k, rat(0)) for k in range(d + 1)]))


def _apply_int_matrix(m, vec: list, h: list) -> list:
    out = []
    for row in m:
        acc: list = []
        for a, v in zip(row, vec):
            if a:
                acc = U.add(acc, U.scale(v, a))
        out.append(U.rem(acc, h) if acc else [])
    return out


@dataclass
class ZeroSet:
    components: list
    change: list          # recorded integer change of coordinates
    shear: int

    @property
    def count(self) -> int:
        return sum(c.count for c in self.components)


def projective_common_zeros(forms: Sequence[MultiPoly], seed: int = SEED, attempts: int = 8) -> ZeroSet:
    """Common zeros in P2 of ternary forms (assumed finite)."""
    rng = random.Random(seed)
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise NonReducedCurveError("all equations vanish identically")
    for _ in range(attempts):
        a = _random_matrix(rng, 3)
        am = [[rat(x) for x in r] for r in a]
        moved = [substitute_linear(f, am) for f in forms]
        line = [_restrict_binary(g, 2, 2, 0, 1) for g in moved]
        line = [(g.grading.deg, cf) for g, (_, cf) in zip(moved, line)]
        if _binary_common_zero(line):
            continue
        aff = [_dehomogenize(g, [2], [0, 1]) for g in moved]
        comps, t = affine_common_zeros(aff, rng)
        out = []
        for c in comps:
            one = U.const(1, c.h[0].n)
            vec = [c.coords[0], c.coords[1], one]
            out.append(ZeroComponent(c.h, _apply_int_matrix(a, vec, c.h), [c.coords[0], c.coords[1]]))
        return ZeroSet(out, a, t)
    raise CurveError("no coordinate change keeps the zeros off the line at infinity")


def _bidegree_line_forms(f_moved: MultiPoly, zero_var: int) -> list:
    """Binary restrictions of the four partials to {x_zero_var = 0}."""
    if zero_var == 0:
        a, b = 2, 3
    else:
        a, b = 0, 1
    out = []
    for d in gradient(f_moved):
        if d.is_zero():
            continue
        dd = d.grading.deg[1] if zero_var == 0 else d.grading.deg[0]
        _, cf = _restrict_binary(d, zero_var, 0, a, b)
        out.append((dd, cf))
    return out


def bidegree_singular_zeros(f: MultiPoly, seed: int = SEED, attempts: int = 8) -> ZeroSet:
    """Singular points of a P1xP1 curve, all in one chart after a random change."""
    rng = random.Random(seed)
    for _ in range(attempts):
        a = _random_matrix(rng, 2)
        b = _random_matrix(rng, 2)
        m = [[rat(0)] * 4 for _ in range(4)]
        for i in range(2):
            for j in range(2):
                m[i][j] = rat(a[i][j])
                m[2 + i][2 + j] = rat(b[i][j])
        g = substitute_linear(f, m)
        if _binary_common_zero(_bidegree_line_forms(g, 0)) or _binary_common_zero(_bidegree_line_forms(g, 2)):
            continue
        polys = [_dehomogenize(p, [0, 2], [1, 3]) for p in (g, partial(g, 1), partial(g, 3))]
        comps, t = affine_common_zeros(polys, rng)
        out = []
        for c in comps:
            one = U.const(1, c.h[0].n)
            z = _apply_int_matrix(a, [one, c.coords[0]], c.h)
            w = _apply_int_matrix(b, [one, c.coords[1]], c.h)
            out.append(ZeroComponent(c.h, z + w, list(c.coords)))
        return ZeroSet(out, m, t)
    raise CurveError("no coordinate change keeps the singular points in one chart")


# -- local invariants over residue fields -------------------------------------------------------

def _eval_mod(f: MultiPoly, coords: list, h: list) -> list:
    cache: dict = {}
    acc: list = []
    for mono, c in f.terms.items():
        term = U.const(c)
        for i, e in enumerate(mono):
            if not e:
                continue
            key = (i, e)
            pw = cache.get(key)
            if pw is None:
                pw = U.const(1)
                for _ in range(e):
                    pw = U.mul_mod(pw, coords[i], h)
                cache[key] = pw
            term = U.mul_mod(term, pw, h)
        acc = U.add(acc, term)
    return U.rem(acc, h) if acc else []


def _derivative(f: MultiPoly, idx: Sequence[int]) -> MultiPoly:
    for i in idx:
        f = partial(f, i)
        if f.is_zero():
            break
    return f


def _free_variables(poly: MultiPoly, coords: list, h: list) -> list:
    """Affine chart variables at the point: all coordinates except one unit per block."""
    n = poly.nvars
    blocks = [list(range(n))] if poly.grading.kind == "total" else [[0, 1], [2, 3]]
    free = []
    for blk in blocks:
        pivot = next(i for i in blk if U.rem(coords[i], h))
        free.extend(i for i in blk if i != pivot)
    return free


@dataclass
class LocalData:
    multiplicity: int
    hessian_rank: int
    classification: str


def _local_data(poly: MultiPoly, coords: list, h: list) -> LocalData:
    free = _free_variables(poly, coords, h)
    deg = poly.grading.deg if poly.grading.kind == "total" else sum(poly.grading.deg)
    mult = None
    for k in range(0, deg + 1):
        if any(_eval_mod(_derivative(poly, idx), coords, h)
               for idx in combinations_with_replacement(free, k)):
            mult = k
            break
    if mult is None:
        raise CurveError("polynomial vanishes to infinite order")
    hess = [[_eval_mod(_derivative(poly, (i, j)), coords, h) for j in free] for i in free]
    rank = _rank_mod(hess, h)
    if mult < 2:
        kind = "smooth" if mult == 1 else "not-on-curve"
    elif mult > 2:
        kind = "higher"
    elif rank == 2:
        kind = "node"
    else:
        kind = "cusp" if _cubic_nonzero(poly, free, coords, hess, h) else "higher"
    return LocalData(mult, rank, kind)


def _rank_mod(m: list, h: list) -> int:
    rows = [list(r) for r in m]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = U.inv_mod(rows[rank][c], h)
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                fac = U.mul_mod(rows[i][c], inv, h)
                rows[i] = [U.rem(U.sub(x, U.mul(fac, y)), h) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _cubic_nonzero(poly, free, coords, hess, h) -> bool:
    """For a rank-one quadratic part: is the cubic term nonzero along its kernel line?"""
    a, b = hess[0][0], hess[0][1]
    if a or b:
        v = [U.neg(b), a]
    else:
        v = [U.const(1), []]
    total: list = []
    for idx in combinations_with_replacement(range(2), 3):
        # multinomial weight for the symmetric third derivative
        from math import factorial
        counts = [idx.count(0), idx.count(1)]
        w = factorial(3) // (factorial(counts[0]) * factorial(counts[1]))
        d = _eval_mod(_derivative(poly, [free[i] for i in idx]), coords, h)
        if not d:
            continue
        term = U.scale(d, w)
        for i in idx:
            term = U.mul_mod(term, v[i], h) if v[i] else []
        total = U.add(total, term)
    return bool(U.rem(total, h)) if total else False


# -- reports ----------------------------------------------------------------------------------

@dataclass
class SingularityReport:
    point: Optional[PointP]
    multiplicity: int
    hessian_rank: int
    classification: str
    factor: Optional[list] = None      # for points outside the working field
    count: int = 1

    def describe(self) -> str:
        where = self.point.render() if self.point else f"roots of {render_upoly(self.factor)}"
        return f"{where}: mult {self.multiplicity}, rank {self.hessian_rank}, {self.classification} (x{self.count})"


@dataclass
class SingularLocus:
    curve: PlaneCurve
    reports: list
    total: int
    certificate: dict

    @property
    def is_smooth(self) -> bool:
        return self.total == 0

    @property
    def points(self) -> list:
        return [r.point for r in self.reports if r.point is not None]

    @property
    def residual(self) -> list:
        return [r for r in self.reports if r.point is None]


def render_upoly(p: list, var: str = "s") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        cs = c.render()
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        parts.append(f"({cs})*{mono}" if mono else f"({cs})")
    return " + ".join(parts)


def _resolve(zs: ZeroSet, poly: MultiPoly, conductor: int) -> list:
    split = 2 if poly.grading.kind == "bi" else None
    reports = []
    for comp in zs.components:
        m = _lcm(conductor, common_conductor(c for c in comp.h))
        for hk in U.factor_in_field(comp.h, m):
            coords = [U.rem(U.promote_all(c, _lcm(m, c[0].n)) if c else [], hk) for c in comp.coords]
            data = _local_data(poly, coords, hk)
            if U.deg(hk) == 1:
                s0 = -hk[0] / hk[1]
                pt = PointP([U.evaluate(c, s0) if c else rat(0) for c in coords], split)
                reports.append(SingularityReport(pt, data.multiplicity, data.hessian_rank, data.classification))
            else:
                reports.append(SingularityReport(None, data.multiplicity, data.hessian_rank,
                                                 data.classification, factor=hk, count=U.deg(hk)))
    reports.sort(key=lambda r: (r.point is None, r.point.render() if r.point else render_upoly(r.factor)))
    return reports


def _generic_restrictions_squarefree(f: MultiPoly, rng: random.Random, tries: int = 6) -> bool:
    """True once a random line (or fiber) meets f in distinct points.

    A multiple component shows up as a repeated root on every such
    restriction, so one squarefree restriction certifies that f is reduced.
    """
    if f.grading.kind == "bi":
        probes = [(3, 2, 0, 1, f.grading.deg[0]), (1, 0, 2, 3, f.grading.deg[1])]
        n = 4
    else:
        probes = [(2, 0, 0, 1, f.grading.deg)]
        n = 3
    for zero_var, one_var, a, b, d in probes:
        if d == 0:
            continue
        ok = False
        for _ in range(tries):
            m = _random_matrix(rng, n)
            if f.grading.kind == "bi":
                m = [[x if (i < 2) == (j < 2) else 0 for j, x in enumerate(r)] for i, r in enumerate(m)]
                if mat_det_int(m) == 0:
                    continue
            g = substitute_linear(f, [[rat(x) for x in r] for r in m])
            _, cf = _restrict_binary(g, zero_var, one_var, a, b)
            if len(cf) != d + 1:
                continue
            if U.deg(U.gcd(cf, U.derivative(cf))) == 0:
                ok = True
                break
        if not ok:
            return False
    return True


def mat_det_int(m) -> int:
    """Determinant of a small integer matrix by cofactor expansion."""
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * mat_det_int([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def singular_points_of_plane_curve(C, conductor: Optional[int] = None, seed: int = SEED) -> SingularLocus:
    """Complete singular locus by elimination on the partial derivatives.

    Explicit points are reported when they are defined over Q(zeta_conductor);
    others are listed as irreducible factors over that field with their counts.
    Raises NonReducedCurveError when the curve has a multiple component.
    """
    C = _as_curve(C)
    f = C.poly
    cond = _lcm(conductor or 1, f.conductor())
    if not _generic_restrictions_squarefree(f, random.Random(seed)):
        raise NonReducedCurveError("f shares a factor with its partials: non-reduced/reducible, singular")
    if C.is_bidegree:
        zs = bidegree_singular_zeros(f, seed)
    else:
        if f.grading.deg > 8:
            raise CurveError("plane curves of degree above 8 are not supported")
        zs = projective_common_zeros(gradient(f), seed)
    reports = _resolve(zs, f, cond)
    for r in reports:
        if r.point is not None and not is_singular_at(C, r.point):
            raise ArithmeticError("elimination produced a nonsingular point")
    cert = {"change": zs.change, "shear": zs.shear, "count": zs.count}
    return SingularLocus(C, reports, zs.count, cert)


def node_or_cusp(C, p: PointP) -> SingularityReport:
    """Classify a double point by the rank of the quadratic part of the local equation."""
    C = _as_curve(C)
    if not is_singular_at(C, p):
        raise CurveError(f"{p} is not a singular point")
    coords = [U.const(c) for c in p.coords]
    h = [rat(0), rat(1)]          # trivial residue field: constants modulo s
    data = _local_data(C.poly, coords, h)
    if data.multiplicity > 2:
        raise CurveError(f"{p} has multiplicity {data.multiplicity}")
    return SingularityReport(p, data.multiplicity, data.hessian_rank, data.classification)


# -- pencils ---------------------------------------------------------------------------------------

@dataclass
class PencilResult:
    members: list                 # explicit singular members [alpha:beta] as PointP in P1
    residual: list                # irreducible polynomials in t = alpha/beta with non-field roots
    every_member_singular: bool
    details: list


def _form_minus_content(f: MultiPoly, mono) -> MultiPoly:
    from .polyring import divide_monomial
    return divide_monomial(f, mono)


def pencil_singular_members(P: MultiPoly, Q: MultiPoly, conductor: Optional[int] = None,
                            seed: int = SEED) -> PencilResult:
    """All singular members alpha*P + beta*Q of a pencil of plane curves.

    A member is singular at q iff alpha*grad P(q) + beta*grad Q(q) = 0, so q is
    a zero of the 2x2 minors of (grad P, grad Q).  Coordinate lines dividing
    all minors are analysed on their own; the remaining zeros are finite.
    """
    if P.grading != Q.grading or P.nvars != 3:
        raise CurveError("pencil members must be ternary forms of one degree")
    cond = _lcm(conductor or 1, _lcm(P.conductor(), Q.conductor()))
    gp, gq = gradient(P), gradient(Q)
    minors = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        minors.append(gp[i] * gq[j] - gp[j] * gq[i])
    minors = [m for m in minors if not m.is_zero()]
    if not minors:
        raise CurveError("gradients are everywhere proportional")
    content = tuple(min(monomial_content(m)[k] for m in minors) for k in range(3))
    reduced = [_form_minus_content(m, content) for m in minors]
    members: dict = {}
    residual = []
    details = []
    every = False
    p_inf = PointP([1, 0])

    # coordinate lines contained in the zero set of the minors
    for k in range(3):
        if not content[k]:
            continue
        others = [i for i in range(3) if i != k]
        rp = [_restrict_binary(d, k, k, others[0], others[1]) for d in gp]
        rq = [_restrict_binary(d, k, k, others[0], others[1]) for d in gq]
        p_zero = all(not cf for _, cf in rp)
        q_zero = all(not cf for _, cf in rq)
        if p_zero or q_zero:
            member = PointP([1, 0]) if p_zero else PointP([0, 1])
            members[member] = f"singular along x{k} = 0"
            other = rq if p_zero else rp
            dd = (Q if p_zero else P).grading.deg - 1
            if _binary_common_zero([(dd, cf) for _, cf in other]):
                every = True
            details.append(f"line x{k}=0: member {member.render()} singular along it")
        else:
            raise CurveError(f"gradients proportional along x{k} = 0: infinitely many singular members")

    zs = projective_common_zeros(reduced, seed)
    for comp in zs.components:
        for kind, h, alpha in _member_values(comp, gp, gq):
            if kind == "base":
                every = True
                details.append("base point singular on every member")
            elif kind == "P":
                members.setdefault(p_inf, "gradient of the first form vanishes")
            else:
                mp = U.min_poly_mod(alpha, h)
                m = _lcm(cond, common_conductor(mp))
                roots, rest = U.roots_in_field(U.squarefree(mp), m)
                for r in roots:
                    members.setdefault(PointP([r, 1]), "from minors")
                residual.extend(rest)
    out = sorted(members, key=lambda p: p.render())
    details.append(f"minor zeros: {zs.count} points; change {zs.change}, shear {zs.shear}")
    return PencilResult(out, residual, every, details)


def _member_values(comp: ZeroComponent, gp, gq) -> list:
    def rec(h):
        try:
            vp = [_eval_mod(d, comp.coords, h) for d in gp]
            vq = [_eval_mod(d, comp.coords, h) for d in gq]
            for k in range(3):
                if vp[k]:
                    inv = U.inv_mod(vp[k], h)
                    alpha = U.rem(U.neg(U.mul(vq[k], inv)), h)
                    for i in range(3):
                        chk = U.rem(U.add(U.mul(alpha, vp[i]), vq[i]), h) if (vp[i] or vq[i]) else []
                        if chk:
                            raise ArithmeticError("gradients are not proportional at a minor zero")
                    return [("finite", h, alpha)]
            if any(vq):
                return [("P", h, None)]
            return [("base", h, None)]
        except U.ZeroDivisorFound as e:
            h1 = U.gcd(h, e.factor)
            return rec(h1) + rec(U.exact_div(h, h1))
    return rec(comp.h)


# -- genus and germs ----------------------------------------------------------------------------

def genus_plane(d: int, delta_total: int = 0) -> int:
    if d < 1:
        raise CurveError("degree must be positive")
    g = (d - 1) * (d - 2) // 2 - delta_total
    if g < 0:
        raise CurveError("delta exceeds the arithmetic genus")
    return g


def genus_bidegree(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise CurveError("bidegree entries must be positive")
    return a * b - a - b + 1


def delta_cusp_germ(m: int) -> int:
    """Delta invariant of x^(m+1) - y^m at the origin."""
    if m < 1:
        raise CurveError("m must be positive")
    return m * (m - 1) // 2


def delta_from_parametrization(m: int) -> int:
    """Independent count: gaps of the value semigroup of t -> (t^m, t^(m+1))."""
    if m == 1:
        return 0
    values = set()
    bound = m * (m + 1)
    for a in range(bound // m + 1):
        for b in range(bound // (m + 1) + 1):
            values.add(a * m + b * (m + 1))
    return sum(1 for v in range(bound) if v not in values)


@dataclass(frozen=True)
class GermClass:
    """Irreducible germ x^p - y^q (gcd(p, q) = 1), by its named family."""
    kind: str      # "smooth" (x^(m+1) - y), "cusp" (x^(m+1) - y^m), "tangent" (x^(n+3) - y^n), "triplet" (x^(k+1) - y^k)
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise CurveError("germ parameter must be positive")
        if self.kind not in ("smooth", "cusp", "tangent", "triplet"):
            raise CurveError(f"unknown germ kind {self.kind!r}")
        if self.kind == "tangent" and self.m % 3 == 0:
            raise CurveError("tangent germs need n not divisible by 3")

    @property
    def exponents(self) -> tuple:
        if self.kind == "smooth":
            return (self.m + 1, 1)
        if self.kind == "tangent":
            return (self.m + 3, self.m)
        return (self.m + 1, self.m)

    @property
    def multiplicity(self) -> int:
        p, q = self.exponents
        return min(p, q)

    def parametrization(self) -> tuple:
        p, q = self.exponents
        return (q, p)          # t -> (t^q, t^p)


def _series_pow(poly: list, e: int) -> list:
    out = [Fraction(1)]
    for _ in range(e):
        nxt = [Fraction(0)] * (len(out) + len(poly) - 1)
        for i, a in enumerate(out):
            if a:
                for j, b in enumerate(poly):
                    if b:
                        nxt[i + j] += a * b
        out = nxt
    return out


def germ_intersection_multiplicity(g1: GermClass, g2: GermClass, change) -> int:
    """Vanishing order of g2's equation, moved by ``change``, along g1's parametrization."""
    (a, b), (c, d) = [[Fraction(x) for x in row] for row in change]
    if a * d - b * c == 0:
        raise CurveError("coordinate change is not invertible")
    qx, px = g1.parametrization()
    n = max(qx, px) + 1
    X = [Fraction(0)] * n
    Y = [Fraction(0)] * n
    X[qx] = Fraction(1)
    Y[px] = Fraction(1)
    h1 = [a * x + b * y for x, y in zip(X, Y)]
    h2 = [c * x + d * y for x, y in zip(X, Y)]
    p, q = g2.exponents
    s1 = _series_pow(h1, p)
    s2 = _series_pow(h2, q)
    L = max(len(s1), len(s2))
    s1 += [Fraction(0)] * (L - len(s1))
    s2 += [Fraction(0)] * (L - len(s2))
    diff = [u - v for u, v in zip(s1, s2)]
    order = next((k for k, v in enumerate(diff) if v), None)
    if order is None:
        raise CurveError("germs share a component: intersection multiplicity is infinite")
    return order


def table_entry(g1: GermClass, g2: GermClass) -> int:
    """General-position value: the product of the multiplicities."""
    return g1.multiplicity * g2.multiplicity


# -- general position -------------------------------------------------------------------------

@dataclass
class PositionCertificate:
    ok: bool
    violation: Optional[tuple] = None
    reason: str = ""


def _veronese(p) -> list:
    x, y, z = p
    return [x * x, y * y, z * z, x * y, x * z, y * z]


def general_position(points: Sequence[PointP]) -> PositionCertificate:
    """No three points on a line and no six on a conic."""
    pts = list(points)
    if len(pts) > 8:
        raise CurveError("at most eight points are supported")
    if len(set(pts)) != len(pts):
        raise CurveError("duplicate points")
    for idx in combinations(range(len(pts)), 3):
        m = tuple(tuple(pts[i].coords) for i in idx)
        if mat_det(m).is_zero():
            return PositionCertificate(False, idx, "three points on a line")
    for idx in combinations(range(len(pts)), 6):
        m = tuple(tuple(_veronese(pts[i].coords)) for i in idx)
        if mat_det(m).is_zero():
            return PositionCertificate(False, idx, "six points on a conic")
    return PositionCertificate(True)


# -- the D16 singular family ---------------------------------------------------------------------

_BI44 = Grading.bi(4, 4)
D16_BASIS_LITERALS = (
    "x0^4*x2^4 + x1^4*x3^4",
    "x0^4*x3^4 + x1^4*x2^4",
    "x0^3*x1*x2^3*x3 - z4*x0*x1^3*x2*x3^3",
)


def d16_basis() -> list:
    return [parse_poly(s, 4, _BI44, 4) for s in D16_BASIS_LITERALS]


def _family_rows(x: CycloNum, basis) -> list:
    """Rows [f_i, d/du f_i, d/dv f_i] evaluated at ([1:x],[1:x])."""
    pt = [rat(1), x, rat(1), x]
    rows = []
    for op in (lambda f: f, lambda f: partial(f, 1), lambda f: partial(f, 3)):
        rows.append([evaluate(op(f), pt) for f in basis])
    return rows


def solve_singular_family(x, basis=None) -> Optional[tuple]:
    """(a1, a2) with a1 f1 + a2 f2 + f3 singular at ([1:x],[1:x]), or None.

    None is returned when the linear system has no solution or no unique one.
    """
    x = as_cyclo(x)
    if x.is_zero():
        raise CurveError("x must be nonzero")
    basis = basis or d16_basis()
    rows = _family_rows(x, basis)
    # solve rows[k][0] a1 + rows[k][1] a2 = -rows[k][2], k = 0..2
    aug = [[r[0], r[1], -r[2]] for r in rows]
    sol = _solve_small(aug, 2)
    return sol


def _solve_small(aug: list, nvar: int) -> Optional[tuple]:
    rows = [list(r) for r in aug]
    piv_cols = []
    r = 0
    for c in range(nvar):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                fac = rows[i][c]
                rows[i] = [u - fac * v for u, v in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(not rows[i][nvar].is_zero() for i in range(r, len(rows))):
        return None        # inconsistent
    if len(piv_cols) < nvar:
        return None        # not unique
    return tuple(rows[i][nvar] for i in range(nvar))


def family_member(a1, a2, basis=None) -> MultiPoly:
    basis = basis or d16_basis()
    return basis[0].scale(as_cyclo(a1)) + basis[1].scale(as_cyclo(a2)) + basis[2]


def _poly_in_x(f: MultiPoly) -> list:
    """Substitute ([1:x],[1:x]) into f, giving a polynomial in x."""
    out: dict = {}
    for mono, c in f.terms.items():
        k = mono[1] + mono[3]
        out[k] = out[k] + c if k in out else c
    top = max(out, default=-1)
    return U.trim([out.get(k, rat(0, 4)) for k in range(top + 1)])


@dataclass
class CuspLocus:
    numerator: list
    denominator: list

    @property
    def degree(self) -> int:
        return U.deg(self.numerator)


def cusp_locus(basis=None) -> CuspLocus:
    """Hessian determinant at p_x of the singular member, as a reduced fraction in x."""
    basis = basis or d16_basis()
    ops = (lambda f: f, lambda f: partial(f, 1), lambda f: partial(f, 3))
    rows = [[_poly_in_x(op(f)) for f in basis] for op in ops]
    if rows[1] != rows[2]:
        raise CurveError("the two affine partials differ along the diagonal")
    (p11, p12, p13), (p21, p22, p23) = rows[0], rows[1]
    det = U.sub(U.mul(p11, p22), U.mul(p12, p21))
    n1 = U.neg(U.sub(U.mul(p13, p22), U.mul(p12, p23)))       # Cramer numerators
    n2 = U.neg(U.sub(U.mul(p11, p23), U.mul(p13, p21)))
    hvars = ((1, 1), (1, 3), (3, 3))
    hs = []
    for i, j in hvars:
        parts = [_poly_in_x(partial(partial(f, i), j)) for f in basis]
        hs.append(U.add(U.add(U.mul(n1, parts[0]), U.mul(n2, parts[1])), U.mul(det, parts[2])))
    huu, huv, hvv = hs
    num = U.sub(U.mul(huu, hvv), U.mul(huv, huv))    # det(det * Hessian) = det^2 * Hess
    den = U.mul(det, det)
    g = U.gcd(num, den)
    return CuspLocus(U.exact_div(num, g), U.exact_div(den, g))


def cusp_locus_degree(basis=None) -> int:
    return cusp_locus(basis).degree
