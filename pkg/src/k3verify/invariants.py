"""Dimensions and bases of (semi-)invariant polynomial spaces.

All sums run over the linear closure of the catalog lifts.  With the
action g.f = f o g^-1 the chi-isotypic projector is

    R(f) = 1/|G| sum_g chi(g)^-1 g.f = 1/|G| sum_h chi(h) f o h

and its trace on a graded piece is the Molien-type count of semi-invariants.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cyclo import CycloNum, common_conductor, rat
from .matgroup import (Character, MatrixGroup, ProjectiveMap, kernel_basis, mat_det,
                       trivial_character)
from .polyring import Grading, MultiPoly, act, monomials_of, substitute_linear


class InvariantError(ValueError):
    pass


@dataclass
class InvariantSpace:
    group: MatrixGroup
    grading: Grading
    character: Optional[Character]
    dimension: int
    basis: list = field(default_factory=list)

    def contains(self, f: MultiPoly) -> bool:
        """True if f lies in the span of the basis."""
        monos = monomials_of(self.group.dim, self.grading)
        rows = [_coeff_vector(b, monos) for b in self.basis]
        return _rank(rows + [_coeff_vector(f, monos)]) == len(rows)

    def same_span(self, polys) -> bool:
        """True if the given polynomials span exactly this space."""
        monos = monomials_of(self.group.dim, self.grading)
        vecs = [_coeff_vector(p, monos) for p in polys]
        if _rank(vecs) != self.dimension:
            return False
        return all(self.contains(p) for p in polys)


def as_grading(nvars: int, degree=None, bidegree=None, split: int = 2) -> Grading:
    if bidegree is not None:
        a, b = bidegree
        return Grading.bi(a, b, split)
    if degree is None:
        raise InvariantError("a degree or a bidegree is required")
    return Grading.total(degree)


# -- traces -----------------------------------------------------------------

def char_coeffs(m) -> tuple:
    """Elementary symmetric functions e_1..e_n of the eigenvalues of m."""
    n = len(m)
    out = []
    from itertools import combinations
    for k in range(1, n + 1):
        acc = rat(0, m[0][0].n)
        for idx in combinations(range(n), k):
            sub = tuple(tuple(m[i][j] for j in idx) for i in idx)
            acc = acc + (sub[0][0] if k == 1 else mat_det(sub))
        out.append(acc)
    return tuple(out)


def complete_symmetric(e: tuple, d: int) -> CycloNum:
    """h_d of the eigenvalues, from e_1..e_n by the Newton-type recursion."""
    n = len(e)
    cond = common_conductor(e) if e else 1
    h = [rat(1, cond)]
    for m in range(1, d + 1):
        acc = rat(0, cond)
        for k in range(1, min(m, n) + 1):
            t = e[k - 1] * h[m - k]
            acc = acc + t if k % 2 == 1 else acc - t
        h.append(acc)
    return h[d]


def _blocks(m, split: int):
    a = tuple(tuple(r[:split]) for r in m[:split])
    b = tuple(tuple(r[split:]) for r in m[split:])
    return a, b


def direct_trace(m, grading: Grading, nvars: int) -> CycloNum:
    """Trace of f -> f o m on the monomial basis, by expanding every monomial."""
    monos = monomials_of(nvars, grading)
    acc = rat(0)
    for mono in monos:
        f = MultiPoly(nvars, grading, {mono: 1}, check=False)
        img = substitute_linear(f, m)
        if img.grading != grading:
            continue
        acc = acc + img.coefficient(mono)
    return acc


class _TraceCache:
    def __init__(self):
        self.table: dict = {}

    def trace(self, m, grading: Grading, nvars: int) -> CycloNum:
        if grading.kind == "total":
            e = char_coeffs(m)
            key = ("t", tuple(hash(x) for x in e), grading.deg)
            v = self.table.get(key)
            if v is None:
                v = complete_symmetric(e, grading.deg)
                self.table[key] = v
            return v
        a, b = _blocks(m, grading.split)
        if all(x.is_zero() for r in a for x in r):
            # block-swapping element
            if grading.deg[0] != grading.deg[1]:
                return rat(0)
            return direct_trace(m, grading, nvars)
        ea, eb = char_coeffs(a), char_coeffs(b)
        key = ("b", tuple(hash(x) for x in ea + eb), grading.deg)
        v = self.table.get(key)
        if v is None:
            v = complete_symmetric(ea, grading.deg[0]) * complete_symmetric(eb, grading.deg[1])
            self.table[key] = v
        return v


def _resolve_character(G: MatrixGroup, chi) -> Character:
    if chi is None:
        return trivial_character(G)
    if isinstance(chi, Character):
        return chi
    from .matgroup import character_from_generators
    return character_from_generators(G, chi)


def _check_grading(G: MatrixGroup, grading: Grading) -> None:
    if grading.kind == "bi":
        if G.split != grading.split:
            raise InvariantError("bidegree requires a P1xP1 group with matching block split")
    elif G.split:
        raise InvariantError("a P1xP1 group needs a bidegree, not a total degree")


def molien_dimension(G: MatrixGroup, grading: Grading, chi=None) -> int:
    """Exact dimension of the chi-semi-invariants of the given (bi)degree."""
    _check_grading(G, grading)
    chi = _resolve_character(G, chi)
    cache = _TraceCache()
    total = rat(0)
    for i, m in enumerate(G.linear_elements):
        c = chi.values[i]
        if c.is_zero():
            continue
        total = total + c * cache.trace(m, grading, G.dim)
    avg = total * Fraction(1, G.linear_order)
    if not avg.is_rational():
        raise InvariantError(f"non-rational Molien average {avg.render()}; inconsistent character?")
    q = avg.to_fraction()
    if q.denominator != 1 or q < 0:
        raise InvariantError(f"Molien average {q} is not a nonnegative integer")
    return int(q)


# -- Reynolds projector -------------------------------------------------------------

def reynolds(G: MatrixGroup, f: MultiPoly, chi=None) -> MultiPoly:
    _check_grading(G, f.grading)
    if f.nvars != G.dim:
        raise InvariantError("polynomial and group dimensions differ")
    chi = _resolve_character(G, chi)
    acc: dict = {}
    for i, m in enumerate(G.linear_elements):
        img = substitute_linear(f, m)
        if img.grading != f.grading:
            raise InvariantError("a block-swapping element changes this bidegree")
        c = chi.values[i]
        for mono, v in img.terms.items():
            t = v * c
            acc[mono] = acc[mono] + t if mono in acc else t
    scale = Fraction(1, G.linear_order)
    return MultiPoly(f.nvars, f.grading, {m: v * scale for m, v in acc.items()}, check=False)


# -- exact linear algebra on coefficient vectors ---------------------------------------

def _coeff_vector(f: MultiPoly, monos) -> list:
    return [f.coefficient(m) for m in monos]


def _rref(rows: list) -> list:
    """Reduced row echelon form; pivots scanned left to right, rows in order."""
    rows = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                fac = rows[i][c]
                rows[i] = [x - fac * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return rows[:r]


def _rank(rows: list) -> int:
    return len(_rref(rows))


def _vector_poly(v, monos, nvars: int, grading: Grading) -> MultiPoly:
    return MultiPoly(nvars, grading, {m: c for m, c in zip(monos, v) if not c.is_zero()}, check=False)


def action_matrix(g: ProjectiveMap, monos, nvars: int, grading: Grading) -> list:
    """Columns are the coefficient vectors of g.m for the monomials m."""
    cols = []
    for mono in monos:
        img = act(g, MultiPoly(nvars, grading, {mono: 1}, check=False))
        if img.grading != grading:
            raise InvariantError("a block-swapping generator changes this bidegree")
        cols.append(_coeff_vector(img, monos))
    n = len(monos)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def invariant_basis(G: MatrixGroup, grading: Grading, chi=None, method: str = "auto") -> InvariantSpace:
    """Canonical reduced basis of the chi-semi-invariants.

    ``reynolds`` projects every monomial; ``generators`` solves the linear
    conditions g.f = chi(g) f for the generators only, which is much cheaper
    for large groups.  ``auto`` picks by the size of the linear closure.
    Either way the rank must equal the Molien dimension.
    """
    _check_grading(G, grading)
    chi = _resolve_character(G, chi)
    monos = monomials_of(G.dim, grading)
    if method == "auto":
        method = "reynolds" if G.linear_order <= 300 else "generators"
    if method == "reynolds":
        rows = []
        for mono in monos:
            r = reynolds(G, MultiPoly(G.dim, grading, {mono: 1}, check=False), chi)
            rows.append(_coeff_vector(r, monos))
        basis_rows = _rref(rows)
    elif method == "generators":
        stacked = []
        gen_vals = chi.on_generators()
        for g, c in zip(G.generators, gen_vals):
            a = action_matrix(g, monos, G.dim, grading)
            for i, row in enumerate(a):
                stacked.append([x - c if i == j else x for j, x in enumerate(row)])
        basis_rows = _rref(kernel_basis(stacked))
    else:
        raise InvariantError(f"unknown method {method!r}")
    basis = [_vector_poly(v, monos, G.dim, grading) for v in basis_rows]
    dim = molien_dimension(G, grading, chi)
    if dim != len(basis):
        raise InvariantError(f"rank {len(basis)} disagrees with Molien dimension {dim}")
    return InvariantSpace(G, grading, chi, dim, basis)


def span_equal(polys_a, polys_b, nvars: int, grading: Grading) -> bool:
    """Exact comparison of two spans of polynomials."""
    monos = monomials_of(nvars, grading)
    va = [_coeff_vector(p, monos) for p in polys_a]
    vb = [_coeff_vector(p, monos) for p in polys_b]
    ra, rb = _rank(va), _rank(vb)
    return ra == rb == _rank(va + vb)
