"""Finite projective matrix groups over cyclotomic fields.

A ProjectiveMap carries the lift exactly as entered (the canonical lift
used for polynomial actions) together with a projective normal form.
For maps of P1xP1 (``split=2`` on four coordinates) the two coordinate
blocks are normalized separately, since each factor is scaled on its own.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence

from .cyclo import CycloNum, as_cyclo, common_conductor, rat, zeta, _lcm

DEFAULT_CAP = 2400


class GroupError(ValueError):
    pass


class ClosureCapExceeded(GroupError):
    pass


# -- dense matrix helpers -------------------------------------------------------

def identity(n: int, cond: int = 1):
    one, zero = rat(1, cond), rat(0, cond)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def to_matrix(rows, cond: Optional[int] = None):
    m = [[as_cyclo(x) for x in row] for row in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise GroupError("matrix must be square")
    c = cond or common_conductor(x for r in m for x in r)
    return tuple(tuple(x.promote(_lcm(x.n, c)) for x in r) for r in m)


def mat_mul(a, b):
    n = len(a)
    k = len(b)
    m = len(b[0])
    bt = [[b[i][j] for i in range(k)] for j in range(m)]
    out = []
    for i in range(n):
        row = a[i]
        nz = [(t, x) for t, x in enumerate(row) if not x.is_zero()]
        new = []
        for j in range(m):
            col = bt[j]
            acc = None
            for t, x in nz:
                y = col[t]
                if y.is_zero():
                    continue
                v = x * y
                acc = v if acc is None else acc + v
            if acc is None:
                acc = rat(0, row[0].n)
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x.is_zero() or y.is_zero():
                continue
            t = x * y
            acc = t if acc is None else acc + t
        out.append(acc if acc is not None else rat(0, row[0].n))
    return tuple(out)


def mat_scale(a, c):
    return tuple(tuple(x * c for x in row) for row in a)


def mat_det(a) -> CycloNum:
    n = len(a)
    m = [list(r) for r in a]
    det = rat(1, a[0][0].n)
    for c in range(n):
        piv = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if piv is None:
            return rat(0, a[0][0].n)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            if not m[r][c].is_zero():
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def mat_inverse(a):
    n = len(a)
    cond = common_conductor(x for r in a for x in r)
    one, zero = rat(1, cond), rat(0, cond)
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
        if piv is None:
            raise GroupError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and not aug[r][c].is_zero():
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def mat_key(a):
    return tuple((x.num, x.den) for r in a for x in r)


def kernel_basis(a) -> list[tuple]:
    """Exact null space of a (rows x cols), as a reduced list of vectors."""
    rows = [list(r) for r in a]
    ncols = len(rows[0]) if rows else 0
    cond = common_conductor(x for r in rows for x in r) if rows else 1
    pivots = []
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
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [rat(0, cond)] * ncols
        v[fc] = rat(1, cond)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(tuple(v))
    return basis


# -- points -----------------------------------------------------------------------

def _normalize_block(coords: Sequence[CycloNum]) -> tuple:
    lead = next((x for x in coords if not x.is_zero()), None)
    if lead is None:
        raise GroupError("zero coordinate vector")
    if lead == 1:
        return tuple(coords)
    inv = lead.inverse()
    return tuple(x * inv for x in coords)


class PointP:
    """A point of P^n (split=None) or of P1xP1 (split=2), canonically scaled."""

    __slots__ = ("coords", "split", "_key")

    def __init__(self, coords: Sequence, split: Optional[int] = None):
        cs = [as_cyclo(x) for x in coords]
        if split:
            self.coords = _normalize_block(cs[:split]) + _normalize_block(cs[split:])
        else:
            self.coords = _normalize_block(cs)
        self.split = split
        self._key = None

    @property
    def dim(self) -> int:
        return len(self.coords)

    def key(self):
        if self._key is None:
            self._key = (self.split, tuple(hash(x) for x in self.coords))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, PointP):
            return NotImplemented
        return self.split == other.split and self.coords == other.coords

    def __hash__(self):
        return hash(self.key())

    def render(self) -> str:
        if self.split:
            a = ":".join(x.render() for x in self.coords[: self.split])
            b = ":".join(x.render() for x in self.coords[self.split:])
            return f"([{a}],[{b}])"
        return "[" + ":".join(x.render() for x in self.coords) + "]"

    def __repr__(self):
        return f"PointP({self.render()})"

    def __str__(self):
        return self.render()


# -- projective maps ------------------------------------------------------------------

class ProjectiveMap:
    __slots__ = ("lift", "split", "name", "canon", "_inv", "_key", "block_swap")

    def __init__(self, lift, split: Optional[int] = None, name: Optional[str] = None,
                 block_swap: Optional[bool] = None, check: bool = True):
        self.lift = lift if not check else to_matrix(lift)
        self.split = split
        self.name = name
        if check and mat_det(self.lift).is_zero():
            raise GroupError(f"lift of {name or 'map'} is not invertible")
        if split:
            shape = _block_shape(self.lift, split)
            swap = shape == "swap"
            if block_swap is not None and block_swap != swap:
                raise GroupError(f"block_swap flag of {name or 'map'} disagrees with its matrix")
            self.block_swap = swap
            top = _normalize_rows(self.lift[:split])
            bot = _normalize_rows(self.lift[split:])
            self.canon = top + bot
        else:
            self.block_swap = False
            self.canon = _normalize_rows(self.lift)
        self._inv = None
        self._key = None

    @property
    def dim(self) -> int:
        return len(self.lift)

    @property
    def conductor(self) -> int:
        return common_conductor(x for r in self.lift for x in r)

    def key(self):
        if self._key is None:
            self._key = tuple(hash(x) for r in self.canon for x in r)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, ProjectiveMap):
            return NotImplemented
        return self.split == other.split and self.canon == other.canon

    def __hash__(self):
        return hash(self.key())

    def __mul__(self, other: "ProjectiveMap") -> "ProjectiveMap":
        return ProjectiveMap(mat_mul(self.lift, other.lift), self.split, check=False)

    def inverse_lift(self):
        if self._inv is None:
            self._inv = mat_inverse(self.lift)
        return self._inv

    def inverse(self) -> "ProjectiveMap":
        return ProjectiveMap(self.inverse_lift(), self.split, check=False)

    def det(self) -> CycloNum:
        return mat_det(self.lift)

    def apply(self, p: PointP) -> PointP:
        if p.dim != self.dim:
            raise GroupError("point and map dimensions differ")
        return PointP(mat_vec(self.lift, p.coords), self.split)

    def is_identity(self) -> bool:
        return _is_identity_matrix(self.canon)

    def power(self, k: int) -> "ProjectiveMap":
        return ProjectiveMap(mat_pow(self.lift, k), self.split, check=False)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(x.render() for x in r) + "]" for r in self.lift)
        return f"ProjectiveMap({self.name or ''}[{rows}])"


def _normalize_rows(rows) -> tuple:
    lead = next((x for r in rows for x in r if not x.is_zero()), None)
    if lead is None:
        raise GroupError("zero block in a projective map")
    if lead == 1:
        return tuple(tuple(r) for r in rows)
    inv = lead.inverse()
    return tuple(tuple(x * inv for x in r) for r in rows)


def _block_shape(m, split: int) -> str:
    n = len(m)
    off = all(m[i][j].is_zero() for i in range(n) for j in range(n) if (i < split) != (j < split))
    if off:
        return "diag"
    on = all(m[i][j].is_zero() for i in range(n) for j in range(n) if (i < split) == (j < split))
    if on and 2 * split == n:
        return "swap"
    raise GroupError("map does not preserve the product structure of P1xP1")


def mat_pow(a, k: int):
    if k < 0:
        a = mat_inverse(a)
        k = -k
    n = len(a)
    result = identity(n, common_conductor(x for r in a for x in r))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def matrix_order(a, limit: int = 10000) -> Optional[int]:
    """Least k with a^k = I (linear), or None if none up to ``limit``."""
    cur = a
    for k in range(1, limit + 1):
        if _is_identity_matrix(cur):
            return k
        cur = mat_mul(cur, a)
    return None


def _is_identity_matrix(m) -> bool:
    return all((x == 1) if i == j else x.is_zero() for i, r in enumerate(m) for j, x in enumerate(r))


def element_order(g: ProjectiveMap, limit: int = 10000) -> int:
    cur = g
    for k in range(1, limit + 1):
        if cur.is_identity():
            return k
        cur = cur * g
    raise GroupError("element order exceeds the search limit")


# -- groups -------------------------------------------------------------------------------

class MatrixGroup:
    """Projective and linear closures of a set of lifts."""

    def __init__(self, name: str, generators: list[ProjectiveMap], conductor: int, split: Optional[int],
                 linear: list, gen_table: list, parents: list, elements: list[ProjectiveMap],
                 lin_to_proj: list[int]):
        self.name = name
        self.generators = generators
        self.conductor = conductor
        self.split = split
        self.linear_elements = linear          # lift matrices in BFS order
        self.gen_table = gen_table             # gen_table[i][s] = index of gen_s * linear[i]
        self.parents = parents                 # (parent index, generator index) or None
        self.elements = elements               # projective classes in BFS order
        self.lin_to_proj = lin_to_proj
        self._lin_index = {mat_key(m): i for i, m in enumerate(linear)}
        self._proj_index = {mat_key(e.canon): i for i, e in enumerate(elements)}

    @property
    def dim(self) -> int:
        return len(self.generators[0].lift) if self.generators else 0

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def linear_order(self) -> int:
        return len(self.linear_elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g: ProjectiveMap) -> bool:
        return self.index_of(g) is not None

    def index_of(self, g: ProjectiveMap) -> Optional[int]:
        c = common_conductor(x for r in g.canon for x in r)
        if self.conductor % c == 0:
            canon = tuple(tuple(x.promote(self.conductor) for x in r) for r in g.canon)
            return self._proj_index.get(mat_key(canon))
        for i, e in enumerate(self.elements):
            if e == g:
                return i
        return None

    def gen(self, name: str) -> ProjectiveMap:
        for g in self.generators:
            if g.name == name:
                return g
        raise GroupError(f"unknown generator {name!r} in group {self.name}")

    def linear_index(self, m) -> Optional[int]:
        m = tuple(tuple(x.promote(_lcm(x.n, self.conductor)) for x in r) for r in m)
        return self._lin_index.get(mat_key(m))

    def linear_maps(self) -> list[ProjectiveMap]:
        return [ProjectiveMap(m, self.split, check=False) for m in self.linear_elements]

    def scalar_subgroup_order(self) -> int:
        return self.linear_order // self.order

    def __repr__(self):
        return f"MatrixGroup({self.name}, order={self.order}, linear={self.linear_order})"


def generate(gens: Sequence[ProjectiveMap], cap: int = DEFAULT_CAP, name: str = "G") -> MatrixGroup:
    """Breadth-first closure of the lifts; the projective group is the image."""
    if cap < 1:
        raise GroupError("cap must be positive")
    if not gens:
        raise GroupError("at least one generator is required")
    n = gens[0].dim
    split = gens[0].split
    if any(g.dim != n or g.split != split for g in gens):
        raise GroupError("generators must share dimension and ambient")
    cond = common_conductor(x for g in gens for r in g.lift for x in r)
    lifts = [to_matrix(g.lift, cond) for g in gens]
    gens = [ProjectiveMap(l, split, g.name, check=False) for l, g in zip(lifts, gens)]
    ident = identity(n, cond)
    linear = [ident]
    index = {mat_key(ident): 0}
    parents: list = [None]
    table: list = []
    i = 0
    while i < len(linear):
        cur = linear[i]
        row = []
        for s, l in enumerate(lifts):
            m = mat_mul(l, cur)
            k = mat_key(m)
            j = index.get(k)
            if j is None:
                j = len(linear)
                if j >= cap:
                    raise ClosureCapExceeded(f"closure of {name} exceeds cap {cap}")
                index[k] = j
                linear.append(m)
                parents.append((i, s))
            row.append(j)
        table.append(row)
        i += 1
    elements: list[ProjectiveMap] = []
    seen: dict = {}
    lin_to_proj = []
    for m in linear:
        pm = ProjectiveMap(m, split, check=False)
        key = mat_key(pm.canon)
        j = seen.get(key)
        if j is None:
            j = len(elements)
            seen[key] = j
            elements.append(pm)
        lin_to_proj.append(j)
    return MatrixGroup(name, gens, cond, split, linear, table, parents, elements, lin_to_proj)


def trivial_group(n: int, split: Optional[int] = None, name: str = "1") -> MatrixGroup:
    return generate([ProjectiveMap(identity(n), split, "id")], name=name)


# -- fixed points ---------------------------------------------------------------------------

class FixedLocus:
    """Isolated fixed points plus pointwise-fixed components (given by spanning data)."""

    def __init__(self, points: list[PointP], components: list):
        self.points = points
        self.components = components

    @property
    def is_finite(self) -> bool:
        return not self.components

    def __repr__(self):
        return f"FixedLocus(points={self.points}, components={len(self.components)})"


def _eigenvectors(lift, k: int) -> list[tuple[CycloNum, list[tuple]]]:
    """(eigenvalue, kernel basis) for every k-th root of unity with nonzero kernel."""
    cond = _lcm(common_conductor(x for r in lift for x in r), k)
    lift = to_matrix(lift, cond)
    out = []
    for j in range(k):
        lam = zeta(k, j).promote(cond)
        shifted = [[x - lam if r == c else x for c, x in enumerate(row)] for r, row in enumerate(lift)]
        ker = kernel_basis(shifted)
        if ker:
            out.append((lam, ker))
    return out


def fixed_points(g: ProjectiveMap) -> FixedLocus:
    k = matrix_order(g.lift)
    if k is None:
        raise GroupError("lift does not have finite order")
    if not g.split:
        points, comps = [], []
        for lam, ker in _eigenvectors(g.lift, k):
            if len(ker) == 1:
                points.append(PointP(ker[0]))
            else:
                comps.append(("subspace", [PointP(v) for v in ker]))
        return FixedLocus(points, comps)
    s = g.split
    lift = g.lift
    if not g.block_swap:
        a = tuple(tuple(r[:s]) for r in lift[:s])
        b = tuple(tuple(r[s:]) for r in lift[s:])
        fa = _p1_fixed(a)
        fb = _p1_fixed(b)
        points, comps = [], []
        for ea in fa:
            for eb in fb:
                if ea[0] == "point" and eb[0] == "point":
                    points.append(PointP(ea[1] + eb[1], s))
                else:
                    comps.append(("product", ea, eb))
        return FixedLocus(points, comps)
    # swap: (z, w) -> (A w, B z); fixed iff z ~ A B z and w ~ B z
    a = tuple(tuple(r[s:]) for r in lift[:s])
    b = tuple(tuple(r[:s]) for r in lift[s:])
    ab = mat_mul(a, b)
    points, comps = [], []
    for e in _p1_fixed(ab):
        if e[0] == "point":
            z = e[1]
            points.append(PointP(tuple(z) + mat_vec(b, z), s))
        else:
            comps.append(("graph", b))
    return FixedLocus(points, comps)


def _p1_fixed(m) -> list:
    k = matrix_order(m)
    if k is None:
        raise GroupError("block lift does not have finite order")
    out = []
    for lam, ker in _eigenvectors(m, k):
        if len(ker) == 1:
            out.append(("point", tuple(ker[0])))
        else:
            out.append(("line", None))
    return out


# -- orbits, stabilizers, subgroups -----------------------------------------------------------

def orbit_point(G: MatrixGroup, p: PointP) -> list[PointP]:
    """Orbit of p in breadth-first order under the generators."""
    if p.dim != G.dim:
        raise GroupError("point dimension does not match the group")
    seen = {p}
    order = [p]
    i = 0
    while i < len(order):
        q = order[i]
        for s in G.generators:
            r = s.apply(q)
            if r not in seen:
                seen.add(r)
                order.append(r)
        i += 1
    return order


def stabilizer_order(G: MatrixGroup, p: PointP) -> int:
    return sum(1 for g in G.elements if g.apply(p) == p)


def commutator(a, b):
    return mat_mul(mat_mul(a, b), mat_mul(mat_inverse(a), mat_inverse(b)))


def subgroup(G: MatrixGroup, lifts: list, name: str) -> MatrixGroup:
    if not lifts:
        return trivial_group(G.dim, G.split, name)
    gens = [ProjectiveMap(m, G.split, f"{name}{i}", check=False) for i, m in enumerate(lifts)]
    return generate(gens, name=name)


def commutator_subgroup(G: MatrixGroup) -> MatrixGroup:
    """Normal closure of the generator commutators, on the linear lifts."""
    lifts = [g.lift for g in G.generators]
    gens = []
    keys = set()
    for a in lifts:
        for b in lifts:
            c = commutator(a, b)
            if not _is_identity_matrix(c) and mat_key(c) not in keys:
                keys.add(mat_key(c))
                gens.append(c)
    name = f"[{G.name},{G.name}]"
    H = subgroup(G, gens, name)
    while True:
        extra = []
        for s in lifts:
            sinv = mat_inverse(s)
            for h in H.generators:
                c = mat_mul(mat_mul(s, h.lift), sinv)
                if H.linear_index(c) is None:
                    extra.append(c)
                    break
            if extra:
                break
        if not extra:
            return H
        gens.append(extra[0])
        H = subgroup(G, gens, name)


# -- characters ---------------------------------------------------------------------------------

class Character:
    """A linear character of the linear closure, indexed like ``linear_elements``."""

    def __init__(self, group: MatrixGroup, values: list[CycloNum]):
        self.group = group
        self.values = values

    def __call__(self, g) -> CycloNum:
        if isinstance(g, int):
            return self.values[g]
        m = g.lift if isinstance(g, ProjectiveMap) else g
        i = self.group.linear_index(m)
        if i is None:
            raise GroupError("element is not in the linear closure")
        return self.values[i]

    def on_generators(self) -> list[CycloNum]:
        return [self.values[self.group.gen_table[0][s]] for s in range(len(self.group.generators))]

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __eq__(self, other):
        return isinstance(other, Character) and other.group is self.group and self.values == other.values

    def __hash__(self):
        return hash(tuple(self.values))

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{v.render()}" for g, v in zip(self.group.generators, self.on_generators()))
        return f"Character({gens})"


def trivial_character(G: MatrixGroup) -> Character:
    return Character(G, [rat(1)] * G.linear_order)


def character_from_generators(G: MatrixGroup, gen_values: Sequence) -> Character:
    """Extend generator values multiplicatively, checking every Cayley-graph edge."""
    vals = [as_cyclo(v) for v in gen_values]
    if len(vals) != len(G.generators):
        raise GroupError("one value per generator is required")
    out: list = [None] * G.linear_order
    out[0] = rat(1)
    for i in range(G.linear_order):
        for s, j in enumerate(G.gen_table[i]):
            v = vals[s] * out[i]
            if out[j] is None:
                out[j] = v
            elif out[j] != v:
                raise GroupError("generator values do not define a character")
    return Character(G, out)


def semi_invariance_character(G: MatrixGroup, f, check_all: bool = False) -> Optional[Character]:
    """The character chi with g.f = chi(g) f on the linear closure, or None."""
    from .polyring import act, equal_up_to_scalar
    if f.nvars != G.dim:
        raise GroupError("polynomial and group dimensions differ")
    vals = []
    for g in G.generators:
        c = equal_up_to_scalar(act(g, f), f)
        if c is None:
            return None
        vals.append(c)
    chi = character_from_generators(G, vals)
    if check_all:
        for i, m in enumerate(G.linear_elements):
            g = ProjectiveMap(m, G.split, check=False)
            if act(g, f) != f.scale(chi.values[i]):
                raise GroupError("semi-invariance failed on a group element")
    return chi


def _word_vectors(G: MatrixGroup) -> list[tuple]:
    k = len(G.generators)
    vecs: list = [None] * G.linear_order
    vecs[0] = (0,) * k
    for j in range(1, G.linear_order):
        i, s = G.parents[j]
        v = list(vecs[i])
        v[s] += 1
        vecs[j] = tuple(v)
    return vecs


def _hnf_insert(basis: list[list[int]], row: list[int]) -> None:
    """Insert an integer row into an echelon basis, keeping it reduced by gcd steps."""
    row = list(row)
    for b in basis:
        piv = next(i for i, x in enumerate(b) if x)
        if row[piv] == 0:
            continue
        # combine b and row on the pivot column with the extended gcd
        x, y = b[piv], row[piv]
        g, s, t = _xgcd(x, y)
        new_b = [s * p + t * q for p, q in zip(b, row)]
        row = [(x // g) * q - (y // g) * p for p, q in zip(b, row)]
        b[:] = new_b
    if any(row):
        basis.append(row)
        basis.sort(key=lambda r: next(i for i, x in enumerate(r) if x))


def _xgcd(a: int, b: int):
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def relation_lattice(G: MatrixGroup) -> list[list[int]]:
    """Echelon basis of exponent-sum relations among the generator lifts."""
    vecs = _word_vectors(G)
    basis: list[list[int]] = []
    k = len(G.generators)
    for i in range(G.linear_order):
        for s, j in enumerate(G.gen_table[i]):
            if G.parents[j] == (i, s):
                continue
            r = [vecs[i][t] + (1 if t == s else 0) - vecs[j][t] for t in range(k)]
            if any(r):
                _hnf_insert(basis, r)
    return basis


def _in_lattice(basis: list[list[int]], v: list[int]) -> bool:
    v = list(v)
    for b in basis:
        piv = next(i for i, x in enumerate(b) if x)
        for i in range(piv):
            if v[i]:
                return False
        if v[piv] % b[piv]:
            return False
        q = v[piv] // b[piv]
        v = [p - q * r for p, r in zip(v, b)]
    return not any(v)


def abelianization_exponent(G: MatrixGroup) -> int:
    basis = relation_lattice(G)
    k = len(G.generators)
    e = 1
    for s in range(k):
        m = 1
        while True:
            v = [m if t == s else 0 for t in range(k)]
            if _in_lattice(basis, v):
                break
            m += 1
            if m > G.linear_order:
                raise GroupError("abelianization is not finite")
        e = _lcm(e, m)
    return e


def all_characters(G: MatrixGroup) -> list[Character]:
    """Every linear character of the linear closure."""
    basis = relation_lattice(G)
    e = abelianization_exponent(G)
    k = len(G.generators)
    out = []

    def rec(prefix):
        if len(prefix) == k:
            if all(sum(a * b for a, b in zip(prefix, r)) % e == 0 for r in basis):
                out.append(character_from_generators(G, [zeta(e, a) for a in prefix]))
            return
        for a in range(e):
            rec(prefix + [a])

    rec([])
    return out


# -- linearization ----------------------------------------------------------------------------

def _eigen_on_point(lift, coords) -> Optional[CycloNum]:
    img = mat_vec(lift, coords)
    k = next(i for i, x in enumerate(coords) if not x.is_zero())
    mu = img[k] / coords[k]
    if any(img[i] != mu * coords[i] for i in range(len(coords))):
        return None
    return mu


def linearization_det(g: ProjectiveMap, p: PointP) -> CycloNum:
    """Determinant of the tangent map of g at a fixed point p."""
    if g.apply(p) != p:
        raise GroupError(f"{p} is not fixed by the map")
    if not g.split:
        vals = [_lin_det_block(g.lift, p.coords)]
        check = [_lin_det_block(mat_scale(g.lift, rat(2)), p.coords)]
    else:
        if g.block_swap:
            return _lin_det_swap(g, p)
        s = g.split
        a = tuple(tuple(r[:s]) for r in g.lift[:s])
        b = tuple(tuple(r[s:]) for r in g.lift[s:])
        vals = [_lin_det_block(a, p.coords[:s]), _lin_det_block(b, p.coords[s:])]
        check = [_lin_det_block(mat_scale(a, rat(3)), p.coords[:s]),
                 _lin_det_block(mat_scale(b, rat(5)), p.coords[s:])]
    out = rat(1)
    for v in vals:
        out = out * v
    chk = rat(1)
    for v in check:
        chk = chk * v
    if chk != out:
        raise GroupError("linearization determinant depends on the lift scaling")
    return out


def _lin_det_block(lift, coords) -> CycloNum:
    mu = _eigen_on_point(lift, coords)
    if mu is None:
        raise GroupError("point is not an eigenline of the lift")
    return mat_det(lift) / mu ** len(lift)


def _lin_det_swap(g: ProjectiveMap, p: PointP) -> CycloNum:
    # tangent map at a fixed point of (z,w) -> (A w, B z): compute on the full
    # tangent space T_z P1 + T_w P1 using a local chart.
    s = g.split
    a = tuple(tuple(r[s:]) for r in g.lift[:s])
    b = tuple(tuple(r[:s]) for r in g.lift[s:])
    z, w = p.coords[:s], p.coords[s:]
    mu_a = _eigen_scalar(mat_vec(a, w), z)
    mu_b = _eigen_scalar(mat_vec(b, z), w)
    # the tangent map is [[0, dA], [dB, 0]] on T_z + T_w, so its determinant is
    # -dA*dB, and dA*dB is the tangent scalar of (AB) at z: det(AB)/(mu_a mu_b)^2
    da = mat_det(a) / (mu_a * mu_a)
    db = mat_det(b) / (mu_b * mu_b)
    return -(da * db)


def _eigen_scalar(img, target) -> CycloNum:
    k = next(i for i, x in enumerate(target) if not x.is_zero())
    mu = img[k] / target[k]
    if any(img[i] != mu * target[i] for i in range(len(target))):
        raise GroupError("point is not fixed")
    return mu


# -- relations ------------------------------------------------------------------------------------

_WORD_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)(?:\^(-?\d+))?\s*\*?")


def parse_word(word: str) -> list[tuple[str, int]]:
    word = word.strip()
    if word in ("", "id", "1"):
        return []
    out = []
    pos = 0
    while pos < len(word):
        m = _WORD_TOKEN.match(word, pos)
        if not m or m.end() == pos:
            raise GroupError(f"cannot parse word {word!r}")
        out.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
        pos = m.end()
    return out


def evaluate_word(word, named: dict, n: int, cond: int = 1):
    result = identity(n, cond)
    for sym, e in (parse_word(word) if isinstance(word, str) else word):
        if sym == "id":
            continue
        if sym not in named:
            raise GroupError(f"unknown generator symbol {sym!r}")
        result = mat_mul(result, mat_pow(named[sym], e))
    return result


class Relation:
    def __init__(self, lhs: str, rhs: str = "id", linear: bool = False):
        self.lhs = lhs
        self.rhs = rhs
        self.linear = linear

    def __repr__(self):
        kind = " [linear]" if self.linear else ""
        return f"{self.lhs} = {self.rhs}{kind}"


def verify_relations(G: MatrixGroup, relations: Iterable, extra: Optional[dict] = None) -> bool:
    named = {g.name: g.lift for g in G.generators}
    if extra:
        named.update({k: to_matrix(v, G.conductor) for k, v in extra.items()})
    for rel in relations:
        if isinstance(rel, str):
            rel = parse_relation(rel)
        a = evaluate_word(rel.lhs, named, G.dim, G.conductor)
        b = evaluate_word(rel.rhs, named, G.dim, G.conductor)
        if rel.linear:
            if a != b:
                return False
        elif ProjectiveMap(a, G.split, check=False) != ProjectiveMap(b, G.split, check=False):
            return False
    return True


def parse_relation(text: str) -> Relation:
    text = text.strip()
    linear = False
    if text.endswith("linear"):
        linear = True
        text = text[: -len("linear")].strip()
    if "=" in text:
        lhs, rhs = text.split("=", 1)
    else:
        lhs, rhs = text, "id"
    parse_word(lhs)
    parse_word(rhs)
    return Relation(lhs.strip(), rhs.strip() or "id", linear)
