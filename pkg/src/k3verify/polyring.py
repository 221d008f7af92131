"""Sparse homogeneous and bihomogeneous polynomials over cyclotomic fields."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .cyclo import CycloError, CycloNum, CycloSyntaxError, as_cyclo, rat

Monomial = tuple


class PolyError(ValueError):
    pass


class Grading:
    """Total degree d, or bidegree (a, b) with the first ``split`` variables in block one."""

    __slots__ = ("kind", "deg", "split")

    def __init__(self, kind: str, deg, split: int = 0):
        if kind not in ("total", "bi"):
            raise PolyError(f"unknown grading {kind!r}")
        self.kind = kind
        self.deg = tuple(deg) if kind == "bi" else int(deg)
        self.split = split

    @classmethod
    def total(cls, d: int) -> "Grading":
        return cls("total", d)

    @classmethod
    def bi(cls, a: int, b: int, split: int = 2) -> "Grading":
        return cls("bi", (a, b), split)

    def degree_of(self, mono: Monomial):
        if self.kind == "total":
            return sum(mono)
        return (sum(mono[: self.split]), sum(mono[self.split:]))

    def matches(self, mono: Monomial) -> bool:
        return self.degree_of(mono) == self.deg

    def lowered(self, var: int) -> "Grading":
        if self.kind == "total":
            return Grading.total(self.deg - 1)
        a, b = self.deg
        if var < self.split:
            return Grading.bi(a - 1, b, self.split)
        return Grading.bi(a, b - 1, self.split)

    def swapped(self) -> "Grading":
        a, b = self.deg
        return Grading.bi(b, a, self.split)

    def __add__(self, other: "Grading") -> "Grading":
        if self.kind != other.kind or self.split != other.split:
            raise PolyError("incompatible gradings")
        if self.kind == "total":
            return Grading.total(self.deg + other.deg)
        return Grading.bi(self.deg[0] + other.deg[0], self.deg[1] + other.deg[1], self.split)

    def __eq__(self, other):
        return (isinstance(other, Grading) and self.kind == other.kind
                and self.deg == other.deg and self.split == other.split)

    def __hash__(self):
        return hash((self.kind, self.deg, self.split))

    def __repr__(self):
        if self.kind == "total":
            return f"degree {self.deg}"
        return f"bidegree {self.deg[0]},{self.deg[1]}"


def monomials_of(nvars: int, grading: Grading) -> list[Monomial]:
    """All monomials of the grading, in graded-lex order (largest first)."""
    if grading.kind == "total":
        out = list(_compositions(grading.deg, nvars))
    else:
        a, b = grading.deg
        s = grading.split
        out = [m1 + m2 for m1 in _compositions(a, s) for m2 in _compositions(b, nvars - s)]
    out.sort(key=_order_key)
    return out


def _compositions(d: int, n: int):
    if d < 0:
        return
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(d - first, n - 1):
            yield (first,) + rest


def _order_key(mono: Monomial):
    # graded lex, largest first
    return (-sum(mono), tuple(-e for e in mono))


class MultiPoly:
    """Sparse polynomial with a declared homogeneous grading."""

    __slots__ = ("nvars", "grading", "terms")

    def __init__(self, nvars: int, grading: Grading, terms: Optional[Mapping] = None, check: bool = True):
        self.nvars = nvars
        self.grading = grading
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(mono)
                if not isinstance(c, CycloNum):
                    c = as_cyclo(c)
                if c.is_zero():
                    continue
                if check:
                    if len(mono) != nvars or any(e < 0 for e in mono):
                        raise PolyError(f"bad monomial {mono} for {nvars} variables")
                    if not grading.matches(mono):
                        raise PolyError(f"monomial {mono} does not match {grading}")
                clean[mono] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int, grading: Grading) -> "MultiPoly":
        return cls(nvars, grading, {})

    @classmethod
    def monomial(cls, nvars: int, grading: Grading, mono: Monomial, coeff=1) -> "MultiPoly":
        return cls(nvars, grading, {tuple(mono): coeff})

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]))

    def coefficient(self, mono: Monomial) -> CycloNum:
        return self.terms.get(tuple(mono), rat(0))

    def conductor(self) -> int:
        from .cyclo import common_conductor
        return common_conductor(self.terms.values())

    @property
    def degree(self):
        return self.grading.deg

    # -- arithmetic ---------------------------------------------------------
    def _check_same(self, other: "MultiPoly"):
        if self.nvars != other.nvars or self.grading != other.grading:
            raise PolyError("polynomials have different variables or grading")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_same(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                out[m] = out[m] + c
            else:
                out[m] = c
        return MultiPoly(self.nvars, self.grading, out, check=False)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, self.grading, {m: -c for m, c in self.terms.items()}, check=False)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c) -> "MultiPoly":
        c = as_cyclo(c)
        if c.is_zero():
            return MultiPoly.zero(self.nvars, self.grading)
        return MultiPoly(self.nvars, self.grading, {m: v * c for m, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise PolyError("different variable counts")
        grading = self.grading + other.grading
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                if m in out:
                    out[m] = out[m] + v
                else:
                    out[m] = v
        return MultiPoly(self.nvars, grading, out, check=False)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise PolyError("negative power")
        result = MultiPoly.one_like(self)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    @classmethod
    def one_like(cls, f: "MultiPoly") -> "MultiPoly":
        g = Grading.total(0) if f.grading.kind == "total" else Grading.bi(0, 0, f.grading.split)
        return cls(f.nvars, g, {(0,) * f.nvars: 1})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if self.terms or other.terms:
            if self.grading != other.grading:
                return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def render(self) -> str:
        return render_poly(self)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.render()!r}, {self.grading})"


# -- core operations -----------------------------------------------------------

def evaluate(f: MultiPoly, p: Sequence) -> CycloNum:
    if len(p) != f.nvars:
        raise PolyError(f"point has {len(p)} coordinates, polynomial has {f.nvars} variables")
    pts = [as_cyclo(c) for c in p]
    powers: list[dict] = [dict() for _ in pts]
    total = rat(0)
    for mono, c in f.terms.items():
        v = c
        for i, e in enumerate(mono):
            if e:
                pw = powers[i].get(e)
                if pw is None:
                    pw = pts[i] ** e
                    powers[i][e] = pw
                v = v * pw
        total = total + v
    return total


def partial(f: MultiPoly, var_index: int) -> MultiPoly:
    if not 0 <= var_index < f.nvars:
        raise PolyError(f"variable index {var_index} out of range")
    out = {}
    for mono, c in f.terms.items():
        e = mono[var_index]
        if e:
            m = list(mono)
            m[var_index] = e - 1
            out[tuple(m)] = c * e
    return MultiPoly(f.nvars, f.grading.lowered(var_index), out, check=False)


def gradient(f: MultiPoly) -> list[MultiPoly]:
    return [partial(f, i) for i in range(f.nvars)]


def _block_shape(matrix, split: int, n: int) -> str:
    """'diag' if the matrix preserves the two blocks, 'swap' if it exchanges them."""
    def zero(i, j):
        return as_cyclo(matrix[i][j]).is_zero()
    off = all(zero(i, j) for i in range(n) for j in range(n) if (i < split) != (j < split))
    if off:
        return "diag"
    on = all(zero(i, j) for i in range(n) for j in range(n) if (i < split) == (j < split))
    if on and split * 2 == n:
        return "swap"
    raise PolyError("linear map does not respect the two variable blocks")


def substitute_linear(f: MultiPoly, matrix) -> MultiPoly:
    """f(M x): each x_i is replaced by sum_j M[i][j] x_j."""
    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise PolyError("matrix size does not match the number of variables")
    grading = f.grading
    if grading.kind == "bi":
        if _block_shape(matrix, grading.split, n) == "swap":
            grading = grading.swapped()
    # linear forms as sparse dicts on exponent tuples
    forms = []
    for i in range(n):
        d = {}
        for j in range(n):
            c = as_cyclo(matrix[i][j])
            if not c.is_zero():
                e = [0] * n
                e[j] = 1
                d[tuple(e)] = c
        forms.append(d)
    cache: dict = {}

    def power(i: int, k: int) -> dict:
        key = (i, k)
        if key in cache:
            return cache[key]
        if k == 0:
            r = {(0,) * n: rat(1)}
        elif k == 1:
            r = forms[i]
        else:
            r = _dict_mul(power(i, k // 2), power(i, k - k // 2))
        cache[key] = r
        return r

    out: dict = {}
    for mono, c in f.terms.items():
        acc = {(0,) * n: c}
        for i, e in enumerate(mono):
            if e:
                acc = _dict_mul(acc, power(i, e))
        for m, v in acc.items():
            if m in out:
                out[m] = out[m] + v
            else:
                out[m] = v
    return MultiPoly(n, grading, out, check=False)


def _dict_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            v = c1 * c2
            if m in out:
                out[m] = out[m] + v
            else:
                out[m] = v
    return {m: c for m, c in out.items() if not c.is_zero()}


def act(g, f: MultiPoly) -> MultiPoly:
    """Left action g.f = f o g^-1, using the canonical lift of g."""
    inv = g.inverse_lift() if hasattr(g, "inverse_lift") else _matrix_inverse(g)
    if len(inv) != f.nvars:
        raise PolyError("map dimension does not match the number of variables")
    return substitute_linear(f, inv)


def equal_up_to_scalar(f: MultiPoly, g: MultiPoly) -> Optional[CycloNum]:
    """c with f = c*g, or None."""
    if f.nvars != g.nvars:
        raise PolyError("different variable counts")
    if f.is_zero() and g.is_zero():
        return rat(1)
    if f.is_zero() or g.is_zero():
        return None
    if f.grading != g.grading or set(f.terms) != set(g.terms):
        return None
    mono = next(iter(g.terms))
    c = f.terms[mono] / g.terms[mono]
    for m, v in g.terms.items():
        if f.terms[m] != c * v:
            return None
    return c


def hessian_matrix(f: MultiPoly) -> list[list[MultiPoly]]:
    grads = gradient(f)
    return [[partial(gi, j) for j in range(f.nvars)] for gi in grads]


def hessian_det(f: MultiPoly) -> MultiPoly:
    if f.nvars != 3 or f.grading.kind != "total":
        raise PolyError("hessian_det expects a ternary form")
    h = hessian_matrix(f)
    return det3(h)


def det3(h) -> MultiPoly:
    return (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
            - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
            + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))


def compose(f: MultiPoly, comps: Sequence[MultiPoly]) -> MultiPoly:
    """Substitute x_i -> comps[i]; components share arity and degree."""
    if len(comps) != f.nvars:
        raise PolyError("need one component per variable")
    if f.grading.kind != "total":
        raise PolyError("compose expects a form with total-degree grading")
    nv = comps[0].nvars
    e = comps[0].grading
    for c in comps:
        if c.nvars != nv or c.grading != e or c.grading.kind != "total":
            raise PolyError("map components must share arity and total degree")
    grading = Grading.total(f.grading.deg * e.deg)
    cache: dict = {}

    def power(i: int, k: int) -> MultiPoly:
        if (i, k) not in cache:
            cache[(i, k)] = comps[i] ** k
        return cache[(i, k)]

    out = MultiPoly.zero(nv, grading)
    for mono, c in f.terms.items():
        acc = None
        for i, k in enumerate(mono):
            term = power(i, k)
            acc = term if acc is None else acc * term
        out = out + acc.scale(c)
    return out


def monomial_content(f: MultiPoly) -> Monomial:
    if f.is_zero():
        return (0,) * f.nvars
    monos = list(f.terms)
    return tuple(min(m[i] for m in monos) for i in range(f.nvars))


def divide_monomial(f: MultiPoly, mono: Monomial) -> MultiPoly:
    if f.grading.kind != "total":
        raise PolyError("monomial division implemented for total-degree grading")
    out = {}
    for m, c in f.terms.items():
        q = tuple(a - b for a, b in zip(m, mono))
        if min(q) < 0:
            raise PolyError("monomial does not divide the polynomial")
        out[q] = c
    return MultiPoly(f.nvars, Grading.total(f.grading.deg - sum(mono)), out, check=False)


def euler_sum(f: MultiPoly) -> MultiPoly:
    """sum_i x_i * df/dx_i."""
    total = None
    for i in range(f.nvars):
        e = [0] * f.nvars
        e[i] = 1
        g = Grading.total(1) if f.grading.kind == "total" else (
            Grading.bi(1, 0, f.grading.split) if i < f.grading.split else Grading.bi(0, 1, f.grading.split))
        xi = MultiPoly(f.nvars, g, {tuple(e): 1})
        d = partial(f, i)
        if d.is_zero():
            continue
        t = xi * d
        if f.grading.kind == "bi":
            t = MultiPoly(f.nvars, f.grading, t.terms, check=False)
        total = t if total is None else total + t
    return total if total is not None else MultiPoly.zero(f.nvars, f.grading)


def _matrix_inverse(m):
    from .matgroup import mat_inverse
    return mat_inverse(m)


# -- literal syntax ------------------------------------------------------------

_PTOKEN = re.compile(r"\s*(?:(\d+)|(z)|(x)|(\^)|(\+)|(-)|(\*)|(/)|(\()|(\)))")
_KINDS = ("int", "z", "x", "^", "+", "-", "*", "/", "(", ")")


def _ptokenize(text: str):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _PTOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise CycloSyntaxError(f"unexpected character at {pos} in {text!r}")
        for kind, grp in zip(_KINDS, m.groups()):
            if grp is not None:
                toks.append((kind, grp))
                break
        pos = m.end()
    return toks


class _PolyParser:
    """Expression parser over dict polynomials; homogeneity checked afterwards."""

    def __init__(self, text: str, nvars: int, conductor: int):
        self.text = text
        self.toks = _ptokenize(text)
        self.i = 0
        self.n = nvars
        self.cond = conductor

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            raise CycloSyntaxError(f"expected {kind!r}, got {self.peek()!r} in {self.text!r}")
        v = self.toks[self.i][1]
        self.i += 1
        return v

    def const(self, c) -> dict:
        return {(0,) * self.n: c}

    def parse(self) -> dict:
        if not self.toks:
            raise CycloSyntaxError("empty polynomial literal")
        v = self.expr()
        if self.i != len(self.toks):
            raise CycloSyntaxError(f"trailing input in {self.text!r}")
        return v

    def expr(self) -> dict:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            w = self.term()
            if op == "-":
                w = {m: -c for m, c in w.items()}
            v = _dict_add(v, w)
        return v

    def term(self) -> dict:
        v = self.factor()
        while self.peek() == "*":
            self.take("*")
            v = _dict_mul(v, self.factor())
        return v

    def factor(self) -> dict:
        k = self.peek()
        if k == "-":
            self.take("-")
            return {m: -c for m, c in self.factor().items()}
        if k == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        if k == "x":
            self.take("x")
            idx = int(self.take("int"))
            if idx >= self.n:
                raise PolyError(f"variable x{idx} out of range for {self.n} variables")
            e = 1
            if self.peek() == "^":
                self.take("^")
                e = int(self.take("int"))
            mono = [0] * self.n
            mono[idx] = e
            return {tuple(mono): rat(1, self.cond)}
        if k == "z":
            self.take("z")
            n = int(self.take("int"))
            if n == 0:
                raise CycloError("conductor 0 in root literal")
            e = 1
            if self.peek() == "^":
                self.take("^")
                e = int(self.take("int"))
            return self.const(CycloNum.zeta(n, e))
        if k == "int":
            p = int(self.take("int"))
            q = 1
            if self.peek() == "/":
                self.take("/")
                q = int(self.take("int"))
                if q == 0:
                    raise ZeroDivisionError("zero denominator in rational literal")
            return self.const(rat(Fraction(p, q), self.cond))
        raise CycloSyntaxError(f"unexpected token {k!r} in {self.text!r}")


def _dict_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = out[m] + c if m in out else c
    return {m: c for m, c in out.items() if not c.is_zero()}


def parse_poly(text: str, nvars: int, grading: Grading, conductor: int = 1) -> MultiPoly:
    terms = _PolyParser(text, nvars, conductor).parse()
    terms = {m: c.promote(_lcm(c.n, conductor)) for m, c in terms.items()}
    return MultiPoly(nvars, grading, terms)


def _lcm(a, b):
    from math import gcd
    return a // gcd(a, b) * b


def render_poly(f: MultiPoly) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono, c in f.sorted_terms():
        mstr = "*".join(
            (f"x{i}" if e == 1 else f"x{i}^{e}") for i, e in enumerate(mono) if e
        )
        cs = c.render()
        single = c.is_rational() or (" + " not in cs and " - " not in cs)
        if single and cs.startswith("-"):
            sign, body = "-", cs[1:]
        else:
            sign, body = "+", cs
        if not single:
            body = f"({body})"
        if mstr:
            text = mstr if body == "1" else f"{body}*{mstr}"
        else:
            text = body
        parts.append((sign, text))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, text in parts[1:]:
        out += f" {sign} {text}"
    return out


def linear_form(nvars: int, coeffs: Sequence, grading: Optional[Grading] = None) -> MultiPoly:
    g = grading or Grading.total(1)
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * nvars
        e[i] = 1
        terms[tuple(e)] = c
    return MultiPoly(nvars, g, terms)
