"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored on the power basis 1, z, ..., z^(phi(N)-1) reduced
modulo the N-th cyclotomic polynomial.  Internally a value is a tuple of
integer numerators over one positive common denominator, which keeps the
hot loops in plain integer arithmetic.  ``coeffs`` exposes the same data
as Fractions.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

MAX_CONDUCTOR = 120

Number = Union[int, Fraction, "CycloNum"]


class CycloError(ValueError):
    pass


class CycloSyntaxError(CycloError):
    pass


def _check_conductor(n: int) -> None:
    if not isinstance(n, int) or n <= 0:
        raise CycloError(f"conductor must be a positive integer, got {n!r}")
    if n > MAX_CONDUCTOR:
        raise CycloError(f"conductor {n} exceeds the configured maximum {MAX_CONDUCTOR}")


def set_max_conductor(n: int) -> None:
    global MAX_CONDUCTOR
    if n < 1:
        raise CycloError("maximum conductor must be positive")
    MAX_CONDUCTOR = n


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def euler_phi(n: int) -> int:
    r = n
    for p in _prime_factors(n):
        r = r // p * (p - 1)
    return r


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # a, b integer coefficient lists, lowest degree first, b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


class _Field:
    """Per-conductor tables: z^k on the reduced basis for 0 <= k < 2N."""

    __slots__ = ("n", "phi", "red", "units")

    def __init__(self, n: int):
        self.n = n
        phi = euler_phi(n)
        self.phi = phi
        cyc = cyclotomic_poly(n)
        # z^phi = -(c_0 + c_1 z + ... + c_{phi-1} z^{phi-1})
        rows: list[tuple[int, ...]] = []
        cur = [0] * phi
        cur[0] = 1
        for _ in range(n):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(phi):
                    cur[j] -= top * cyc[j]
        # sparse rows, indexed by exponent modulo n
        self.red = [tuple((j, v) for j, v in enumerate(r) if v) for r in rows]
        self.units = tuple(j for j in range(1, n + 1) if math.gcd(j, n) == 1)


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


@lru_cache(maxsize=None)
def _promote_rows(n: int, m: int) -> tuple:
    """Images of z_n^k (k < phi(n)) on the basis of conductor m."""
    r = m // n
    fm = _field(m)
    return tuple(fm.red[(k * r) % m] for k in range(euler_phi(n)))


@lru_cache(maxsize=None)
def _demote_data(n: int, m: int):
    """Left inverse of promotion Q(z_m) -> Q(z_n), m | n.

    Returns (cols, inverse matrix rows as Fractions): the coefficient vector
    over m is recovered from the entries of the promoted vector at ``cols``.
    """
    phim, phin = euler_phi(m), euler_phi(n)
    rows = _promote_rows(m, n)
    mat = [[Fraction(0)] * phin for _ in range(phim)]
    for i, row in enumerate(rows):
        for j, v in row:
            mat[i][j] = Fraction(v)
    # pick phim independent columns greedily
    cols: list[int] = []
    basis: list[list[Fraction]] = []
    for j in range(phin):
        col = [mat[i][j] for i in range(phim)]
        vec = list(col)
        for b, piv in basis:
            if vec[piv]:
                f = vec[piv] / b[piv]
                vec = [x - f * y for x, y in zip(vec, b)]
        nz = [i for i, x in enumerate(vec) if x]
        if nz:
            basis.append((vec, nz[0]))
            cols.append(j)
            if len(cols) == phim:
                break
    # square system: c (phim) times sub (phim x phim) = x[cols]
    sub = [[mat[i][j] for j in cols] for i in range(phim)]
    inv = _mat_inverse(sub)
    return tuple(cols), inv


def _mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = math.gcd(den, *num)
    if g != 1:
        num = [x // g for x in num]
        den //= g
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return tuple(num), den


class CycloNum:
    """An element of Q(zeta_N) on the reduced power basis."""

    __slots__ = ("n", "num", "den", "_min")

    def __init__(self, n: int, num: Sequence[int], den: int = 1, _raw: bool = False):
        if not _raw:
            _check_conductor(n)
            if len(num) != euler_phi(n):
                raise CycloError("coefficient vector length must equal phi(conductor)")
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            num, den = _normalize([int(x) for x in num], int(den))
        self.n = n
        self.num = num
        self.den = den
        self._min = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_fractions(cls, n: int, coeffs: Iterable) -> "CycloNum":
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        return cls(n, [int(c * den) for c in fr], den)

    @classmethod
    def rational(cls, q, n: int = 1) -> "CycloNum":
        q = Fraction(q)
        _check_conductor(n)
        num = [0] * _field(n).phi
        num[0] = q.numerator
        return cls(n, tuple(num), q.denominator, _raw=True)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "CycloNum":
        _check_conductor(n)
        f = _field(n)
        num = [0] * f.phi
        for j, v in f.red[k % n]:
            num[j] = v
        return cls(n, tuple(num), 1, _raw=True)

    # -- basic data -----------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CycloError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __bool__(self) -> bool:
        return any(self.num)

    # -- conductor changes ----------------------------------------------
    def promote(self, m: int) -> "CycloNum":
        if m == self.n:
            return self
        if m % self.n:
            raise CycloError(f"cannot promote conductor {self.n} to {m}: not a multiple")
        _check_conductor(m)
        phim = euler_phi(m)
        out = [0] * phim
        for c, row in zip(self.num, _promote_rows(self.n, m)):
            if c:
                for j, v in row:
                    out[j] += c * v
        return CycloNum(m, tuple(out), self.den, _raw=True)

    def in_subfield(self, m: int) -> bool:
        """True iff the value lies in Q(zeta_m) for a divisor m of the conductor."""
        n = self.n
        if n % m:
            raise CycloError(f"{m} does not divide the conductor {n}")
        if m == n:
            return True
        for j in _field(n).units:
            if j % m == 1 % m and j != 1:
                if self.galois(j) != self:
                    return False
        return True

    def demote(self, m: int) -> "CycloNum":
        if m == self.n:
            return self
        if not self.in_subfield(m):
            raise CycloError(f"value does not lie in Q(zeta_{m})")
        cols, inv = _demote_data(self.n, m)
        phim = euler_phi(m)
        vec = [Fraction(self.num[j], self.den) for j in cols]
        c = [sum((vec[i] * inv[i][k] for i in range(phim)), Fraction(0)) for k in range(phim)]
        return CycloNum.from_fractions(m, c)

    def minimal(self) -> "CycloNum":
        """Same value over the smallest conductor containing it."""
        if self._min is not None:
            return self._min
        x = self
        if x.is_rational():
            x = CycloNum(1, (x.num[0],), x.den, _raw=True)
        else:
            changed = True
            while changed:
                changed = False
                for p in _prime_factors(x.n):
                    m = x.n // p
                    if x.in_subfield(m):
                        x = x.demote(m)
                        changed = True
                        break
        self._min = x
        return x

    # -- coercion helpers -------------------------------------------------
    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(other, self.n)
        return NotImplemented

    @staticmethod
    def _common(x: "CycloNum", y: "CycloNum"):
        if x.n == y.n:
            return x, y
        m = _lcm(x.n, y.n)
        return x.promote(m), y.promote(m)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        a, b = self._common(self, y)
        if a.den == b.den:
            num = [p + q for p, q in zip(a.num, b.num)]
            den = a.den
        else:
            num = [p * b.den + q * a.den for p, q in zip(a.num, b.num)]
            den = a.den * b.den
        num, den = _normalize(num, den)
        return CycloNum(a.n, num, den, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.n, tuple(-p for p in self.num), self.den, _raw=True)

    def __sub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return y + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return CycloNum(self.n, (0,) * len(self.num), 1, _raw=True)
            num, den = _normalize([p * other for p in self.num], self.den)
            return CycloNum(self.n, num, den, _raw=True)
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        a, b = self._common(self, y)
        return _mul_same(a, b)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            q = Fraction(self.den, self.num[0])
            return CycloNum.rational(q, self.n)
        # x^-1 = (product of the other conjugates) / norm
        f = _field(self.n)
        prod = None
        for j in f.units:
            if j == 1:
                continue
            s = self.galois(j)
            prod = s if prod is None else _mul_same(prod, s)
        norm = _mul_same(self, prod)
        q = norm.to_fraction()
        return prod * CycloNum.rational(1 / q, self.n)

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is NotImplemented:
            return y
        return y * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNum.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = _mul_same(result, base)
            k >>= 1
            if k:
                base = _mul_same(base, base)
        return result

    def galois(self, j: int) -> "CycloNum":
        """Image under the automorphism z -> z^j (gcd(j, N) = 1)."""
        n = self.n
        if math.gcd(j, n) != 1:
            raise CycloError(f"{j} is not a unit modulo {n}")
        f = _field(n)
        out = [0] * f.phi
        for k, c in enumerate(self.num):
            if c:
                for t, v in f.red[(k * j) % n]:
                    out[t] += c * v
        return CycloNum(n, tuple(out), self.den, _raw=True)

    def conjugate(self) -> "CycloNum":
        return self.galois(self.n - 1 if self.n > 1 else 1)

    def norm(self) -> Fraction:
        """Norm from Q(zeta_N) down to Q."""
        prod = CycloNum.rational(1, self.n)
        for j in _field(self.n).units:
            prod = _mul_same(prod, self.galois(j))
        return prod.to_fraction()

    def trace(self) -> Fraction:
        tot = CycloNum.rational(0, self.n)
        for j in _field(self.n).units:
            tot = tot + self.galois(j)
        return tot.to_fraction()

    # -- comparison and hashing ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if not isinstance(other, CycloNum):
            return NotImplemented
        if self.n == other.n:
            return self.den == other.den and self.num == other.num
        a, b = self._common(self, other)
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        m = self.minimal()
        if m.n == 1:
            return hash(Fraction(m.num[0], m.den))
        return hash((m.n, m.num, m.den))

    # -- output -----------------------------------------------------------
    def embed(self) -> complex:
        """Complex value under z -> exp(2 pi i / N).  Sanity checks only."""
        w = cmath.exp(2j * math.pi / self.n)
        return sum(c * w ** k for k, c in enumerate(self.num)) / self.den

    def render(self) -> str:
        parts = []
        for k, c in enumerate(self.num):
            if not c:
                continue
            q = Fraction(c, self.den)
            sign = "-" if q < 0 else "+"
            q = abs(q)
            qs = str(q)
            if k == 0:
                body = qs
            else:
                root = f"z{self.n}" if k == 1 else f"z{self.n}^{k}"
                body = root if q == 1 else f"{qs}*{root}"
            parts.append((sign, body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"CycloNum({self.render()!r}, N={self.n})"

    def order(self):
        return root_of_unity_order(self)


def _mul_same(a: CycloNum, b: CycloNum) -> CycloNum:
    n = a.n
    an, bn = a.num, b.num
    phi = len(an)
    if phi == 1:
        num, den = _normalize([an[0] * bn[0]], a.den * b.den)
        return CycloNum(n, num, den, _raw=True)
    conv = [0] * (2 * phi - 1)
    bnz = [(j, q) for j, q in enumerate(bn) if q]
    for i, p in enumerate(an):
        if p:
            for j, q in bnz:
                conv[i + j] += p * q
    res = conv[:phi]
    red = _field(n).red
    for k in range(phi, 2 * phi - 1):
        c = conv[k]
        if c:
            for t, v in red[k % n]:
                res[t] += c * v
    num, den = _normalize(res, a.den * b.den)
    return CycloNum(n, num, den, _raw=True)


# -- public helpers ----------------------------------------------------------

def zeta(n: int, k: int = 1) -> CycloNum:
    return CycloNum.zeta(n, k)


def rat(q, n: int = 1) -> CycloNum:
    return CycloNum.rational(q, n)


def as_cyclo(x, n: int = 1) -> CycloNum:
    if isinstance(x, CycloNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloNum.rational(x, n)
    if isinstance(x, str):
        return parse_cyclo(x, n)
    raise TypeError(f"cannot convert {x!r} to CycloNum")


def promote(x: CycloNum, m: int) -> CycloNum:
    return x.promote(m)


def field_arith(op: str, x: CycloNum, y: CycloNum) -> CycloNum:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    raise CycloError(f"unknown operation {op!r}")


def common_conductor(values: Iterable[CycloNum]) -> int:
    m = 1
    for v in values:
        m = _lcm(m, v.n)
    return m


def root_of_unity_order(x: CycloNum):
    """Multiplicative order of x if it is a root of unity, else None."""
    if x.is_zero():
        return None
    n = x.n
    # every root of unity in Q(zeta_n) has order dividing lcm(2, n)
    m = n if n % 2 == 0 else 2 * n
    one = CycloNum.rational(1, n)
    if x ** m != one:
        return None
    k = m
    for p in _prime_factors(m):
        while k % p == 0 and x ** (k // p) == one:
            k //= p
    return k


# -- parser ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|(\^)|(\+)|(-)|(\*)|(/)|(\()|(\)))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise CycloSyntaxError(f"unexpected character at {pos} in {text!r}")
        kinds = ("int", "z", "^", "+", "-", "*", "/", "(", ")")
        for kind, grp in zip(kinds, m.groups()):
            if grp is not None:
                toks.append((kind, grp))
                break
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, base: int):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.base = base

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            got = self.peek() or "end of input"
            raise CycloSyntaxError(f"expected {kind!r}, got {got!r} in {self.text!r}")
        val = self.toks[self.i][1]
        self.i += 1
        return val

    def parse(self) -> CycloNum:
        if not self.toks:
            raise CycloSyntaxError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise CycloSyntaxError(f"trailing input in {self.text!r}")
        return v

    def expr(self) -> CycloNum:
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> CycloNum:
        v = self.factor()
        while self.peek() == "*":
            self.take("*")
            v = v * self.factor()
        return v

    def factor(self) -> CycloNum:
        kind = self.peek()
        if kind == "-":
            self.take("-")
            return -self.factor()
        if kind == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        if kind == "z":
            self.take("z")
            n = int(self.take("int"))
            if n == 0:
                raise CycloError("conductor 0 in root literal")
            k = 1
            if self.peek() == "^":
                self.take("^")
                k = int(self.take("int"))
            return CycloNum.zeta(n, k)
        if kind == "int":
            p = int(self.take("int"))
            q = 1
            if self.peek() == "/":
                self.take("/")
                q = int(self.take("int"))
                if q == 0:
                    raise ZeroDivisionError("zero denominator in rational literal")
            return CycloNum.rational(Fraction(p, q), 1)
        raise CycloSyntaxError(f"unexpected token {kind!r} in {self.text!r}")


def parse_cyclo(expr: str, default_conductor: int = 1) -> CycloNum:
    """Parse the cyclotomic expression grammar.

    The result lives over the lcm of the conductors appearing in the text
    and ``default_conductor``.
    """
    if not isinstance(default_conductor, int) or default_conductor <= 0:
        raise CycloError("default conductor must be a positive integer")
    v = _Parser(expr, default_conductor).parse()
    m = _lcm(v.n, default_conductor)
    return v.promote(m)
