import random

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, strategies as st

from k3verify.catalog import default_catalog
from k3verify.curvegeom import (CurveError, GermClass, NonReducedCurveError, PlaneCurve, cusp_locus_degree,
                                d16_basis, delta_cusp_germ, delta_from_parametrization, family_member,
                                general_position, genus_bidegree, genus_plane, germ_intersection_multiplicity,
                                is_singular_at, node_or_cusp, pencil_singular_members,
                                singular_points_of_plane_curve, solve_singular_family, table_entry)
from k3verify.cyclo import parse_cyclo, rat, zeta
from k3verify.invariants import invariant_basis
from k3verify.matgroup import PointP, orbit_point
from k3verify.polyring import Grading, parse_poly, substitute_linear

from oracles import (cyclo_to_complex, gaussian_to_sympy, poly_to_sympy, quotient_dimension, smooth_mod_p,
                     tjurina_plane_chart)

# a fixed rational change of coordinates that moves every point of the examples off the line z = 0
GENERIC = [[1, 2, -1], [3, -1, 2], [2, 5, 7]]


def tjurina_total(f):
    """Total Tjurina number of a plane curve over Q, in the chart z = 1 after a generic change."""
    g = substitute_linear(f, GENERIC_M)
    expr, X = poly_to_sympy(g)
    return tjurina_plane_chart(expr, X, 2)


def _int_matrix(rows):
    from k3verify.matgroup import to_matrix
    return to_matrix(rows)


GENERIC_M = _int_matrix(GENERIC)


def test_klein_quartic_is_smooth(cat):
    k = cat.curve("klein")
    assert singular_points_of_plane_curve(k).is_smooth
    assert tjurina_total(k) == 0


def test_c_sing_has_seven_nodes(cat):
    f = cat.curve("c_sing")
    loc = singular_points_of_plane_curve(f, conductor=7)
    assert loc.total == 7 and not loc.residual
    assert {r.classification for r in loc.reports} == {"node"}
    expr, X = poly_to_sympy(f)
    # all seven points have z != 0; a node has Tjurina number one
    assert tjurina_plane_chart(expr, X, 2) == 7
    G = cat.group("C3xC7")
    from k3verify.matgroup import subgroup
    C7 = subgroup(G, [G.gen("lambda").lift], "C7")
    assert set(loc.points) == set(orbit_point(C7, PointP([1, 1, 1])))
    assert general_position(loc.points).ok


def test_c_sing_points_vanish_numerically(cat):
    f = cat.curve("c_sing")
    expr, X = poly_to_sympy(f)
    grads = [sp.lambdify(X, sp.diff(expr, v)) for v in X]
    for p in singular_points_of_plane_curve(f, conductor=7).points:
        z = [cyclo_to_complex(c) for c in p.coords]
        assert all(abs(g(*z)) < 1e-9 for g in grads)


def test_s5_sextic_nodes(cat):
    f = cat.curve("s5_sextic")
    loc = singular_points_of_plane_curve(f)
    assert set(loc.points) == {PointP([1, 0, 0]), PointP([0, 1, 0]), PointP([0, 0, 1]), PointP([1, 1, 1])}
    assert loc.total == 4
    assert tjurina_total(f) == 4


def test_mukai_sextics_smooth(cat):
    for name in ("m9_mukai", "t48_mukai"):
        f = cat.curve(name)
        assert singular_points_of_plane_curve(f).is_smooth
        assert tjurina_total(f) == 0


def test_valentiner_sextic_smooth(cat):
    space = invariant_basis(cat.group("Valentiner"), Grading.total(6))
    assert space.dimension == 1
    F = space.basis[0]
    assert singular_points_of_plane_curve(F).is_smooth
    # 31 = 1 mod 15: good reduction, and smooth mod p implies smooth in characteristic zero
    assert smooth_mod_p(F, 31)


def test_pencil_members_match_eliminant(cat):
    P1, P2 = cat.curve("c3c7_p1"), cat.curve("c3c7_p2")
    res = pencil_singular_members(P1, P2, conductor=21)
    expected = {PointP([1, 0])} | {PointP([rat(1), zeta(3, k) * parse_cyclo("-1/3")]) for k in range(3)}
    assert set(res.members) == expected and not res.residual
    # oracle: eliminate the point from the singularity conditions of P1 + t*P2, chart by chart
    g1, X = poly_to_sympy(P1)
    g2, _ = poly_to_sympy(P2, X)
    t = sp.Symbol("t")
    roots = sp.Integer(1)
    for k in range(3):
        F = (g1 + t * g2).subs(X[k], 1)
        free = [v for i, v in enumerate(X) if i != k]
        G = sp.groebner([F] + [sp.diff(F, v) for v in free], *free, t, order="lex")
        roots = sp.lcm(roots, sp.sqf_part(G.exprs[-1]))
    assert sp.expand(sp.Poly(roots, t).monic().as_expr() - sp.expand(t * (t + sp.Rational(1, 3)) * (t ** 2 - t / 3 + sp.Rational(1, 9)))) == 0
    # P2 alone (t = infinity) is smooth
    assert tjurina_total(P2) == 0


def test_cusp_and_node_classification():
    cusp = parse_poly("x1^2*x2 - x0^3", 3, Grading.total(3))
    node = parse_poly("x1^2*x2 - x0^2*x2 - x0^3", 3, Grading.total(3))
    p = PointP([0, 0, 1])
    assert node_or_cusp(cusp, p).classification == "cusp"
    assert node_or_cusp(node, p).classification == "node"
    with pytest.raises(CurveError):
        node_or_cusp(node, PointP([1, 1, 1]))


def test_non_reduced_curves_rejected():
    with pytest.raises(NonReducedCurveError):
        singular_points_of_plane_curve(parse_poly("x0^2*x1^2*x2^2", 3, Grading.total(6)))
    with pytest.raises(NonReducedCurveError):
        singular_points_of_plane_curve(parse_poly("x2*x0^2 + 2*x2*x0*x1 + x2*x1^2", 3, Grading.total(3)))
    # x2*(x0^2 + x1^2) is three distinct lines over Q(i): reduced, with three nodes
    loc = singular_points_of_plane_curve(parse_poly("x0^2*x2 + x1^2*x2", 3, Grading.total(3)), conductor=4)
    assert set(loc.points) == {PointP([0, 0, 1]), PointP([1, zeta(4), 0]), PointP([1, -zeta(4), 0])}
    assert {r.classification for r in loc.reports} == {"node"}
    with pytest.raises(CurveError):
        PlaneCurve(parse_poly("x0 + x1", 4, Grading.total(1)))


def test_genus_formulas():
    assert genus_plane(6, 7) == 3
    assert genus_plane(4) == 3
    assert genus_bidegree(4, 4) == 9
    with pytest.raises(CurveError):
        genus_plane(3, 2)


# -- germs ------------------------------------------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_cusp_germ_delta_matches_milnor_number(m):
    x, y = sp.symbols("x y")
    f = x ** (m + 1) - y ** m
    # Milnor: mu = 2 delta - r + 1 with one branch
    mu = quotient_dimension([sp.diff(f, x), sp.diff(f, y)], [x, y]) if m > 1 else 0
    assert delta_cusp_germ(m) == mu // 2
    assert delta_from_parametrization(m) == delta_cusp_germ(m)


def test_table_entries():
    assert table_entry(GermClass("smooth", 1), GermClass("smooth", 3)) == 1
    assert table_entry(GermClass("cusp", 2), GermClass("cusp", 3)) == 6
    with pytest.raises(CurveError):
        GermClass("tangent", 3)
    with pytest.raises(CurveError):
        GermClass("spiral", 2)


def sympy_intersection_order(g1, g2, change):
    t = sp.Symbol("t")
    q, p = g1.parametrization()
    X, Y = t ** q, t ** p
    (a, b), (c, d) = change
    e1, e2 = g2.exponents
    s = sp.expand((a * X + b * Y) ** e1 - (c * X + d * Y) ** e2)
    return min(sp.Poly(s, t).monoms())[0]


GERMS = st.builds(GermClass, st.sampled_from(["smooth", "cusp", "triplet"]), st.integers(1, 5)) | \
    st.builds(GermClass, st.just("tangent"), st.sampled_from([1, 2, 4, 5]))


@st.composite
def changes(draw):
    r = draw(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
    assume(r[0] * r[3] - r[1] * r[2])
    return ((r[0], r[1]), (r[2], r[3]))


@given(GERMS, GERMS, changes())
def test_intersection_bound_under_random_changes(g1, g2, change):
    try:
        k = germ_intersection_multiplicity(g1, g2, change)
    except CurveError:
        return          # the moved germ shares a branch with the first one
    assert k == sympy_intersection_order(g1, g2, change)
    assert k >= g1.multiplicity * g2.multiplicity


def test_intersection_attains_product_generically():
    g1, g2 = GermClass("cusp", 2), GermClass("cusp", 3)
    assert germ_intersection_multiplicity(g1, g2, ((2, 5), (3, 7))) == 6


# -- projective invariance -----------------------------------------------------------------------

INV_CURVES = ["c_sing", "s5_sextic", "klein", "m9_mukai"]


@st.composite
def gl3(draw):
    e = draw(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
    rows = [e[0:3], e[3:6], e[6:9]]
    assume(round(np.linalg.det(np.array(rows, dtype=float))))
    return rows


def move_point(M, p):
    from k3verify.matgroup import mat_inverse, mat_vec
    return PointP(mat_vec(mat_inverse(_int_matrix(M)), list(p.coords)))


SING_POINTS = {}


def singular_points_cached(name):
    if name not in SING_POINTS:
        SING_POINTS[name] = singular_points_of_plane_curve(default_catalog().curve(name), conductor=7).points
    return SING_POINTS[name]


@given(st.sampled_from(INV_CURVES), gl3(), st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any))
def test_singularity_is_projectively_invariant(name, rows, coords):
    f = default_catalog().curve(name)
    g = substitute_linear(f, _int_matrix(rows))       # g(x) = f(M x)
    pts = singular_points_cached(name)[:3] + [PointP(coords)]
    for p in pts:
        assert is_singular_at(g, move_point(rows, p)) == is_singular_at(f, p)


@given(gl3(), st.integers(0, 20))
def test_general_position_is_projectively_invariant(rows, k):
    base = singular_points_cached("c_sing")
    rng = random.Random(k)
    pts = rng.sample(base, rng.randint(3, 7))
    extra = [PointP([1, 0, 0]), PointP([0, 1, 0]), PointP([1, 1, 0])]
    for cand in (pts, pts[:2] + extra[:1] + extra[1:2] + extra[2:]):
        if len(set(cand)) != len(cand):
            continue
        moved = [move_point(rows, p) for p in cand]
        assert general_position(moved).ok == general_position(cand).ok


def test_general_position_failures():
    cert = general_position([PointP([1, 0, 0]), PointP([0, 1, 0]), PointP([1, 1, 0]), PointP([0, 0, 1])])
    assert not cert.ok and cert.reason == "three points on a line"
    conic = [PointP([t * t, t, 1]) for t in range(6)]
    assert general_position(conic).reason == "six points on a conic"
    with pytest.raises(CurveError):
        general_position([PointP([1, 0, 0])] * 2)


# -- the D16 family -------------------------------------------------------------------------------

def d16_chart_exprs():
    u, v = sp.symbols("u v")
    out = []
    for f in d16_basis():
        e = 0
        for mono, c in f.terms.items():
            e += gaussian_to_sympy(c) * u ** mono[1] * v ** mono[3]
        out.append(sp.expand(e))
    return out, u, v


def test_family_solution_at_two_matches_linear_solve():
    fs, u, v = d16_chart_exprs()
    pt = {u: 2, v: 2}
    M = sp.Matrix([[f.subs(pt) for f in fs], [sp.diff(f, u).subs(pt) for f in fs],
                   [sp.diff(f, v).subs(pt) for f in fs]])
    sol = M[:2, :2].LUsolve(-M[:2, 2])
    sol = [sp.expand(sp.nsimplify(s)) for s in sol]
    assert sp.expand(M[2, 0] * sol[0] + M[2, 1] * sol[1] + M[2, 2]) == 0
    a1, a2 = solve_singular_family(rat(2, 4))
    assert [sp.expand(gaussian_to_sympy(a1) - sol[0]), sp.expand(gaussian_to_sympy(a2) - sol[1])] == [0, 0]


def test_family_has_no_member_at_eighth_roots():
    for s in ("1", "-1", "z4", "z8"):
        assert solve_singular_family(parse_cyclo(s, 8)) is None


def test_c_a2_has_the_eight_point_orbit(cat):
    a1, a2 = solve_singular_family(rat(2, 4))
    f = family_member(a1, a2)
    loc = singular_points_of_plane_curve(f)
    H = cat.group("H(D16)")
    assert set(loc.points) == set(orbit_point(H, PointP([1, 2, 1, 2], 2)))
    assert {r.classification for r in loc.reports} == {"node"}
    # oracle: the points all have nonzero coordinates, so every affine chart sees all eight
    X = sp.symbols("x0:4")
    e = sum(gaussian_to_sympy(c) * sp.prod([X[i] ** k for i, k in enumerate(m)]) for m, c in f.terms.items())
    for z_one, w_one in ((0, 2), (0, 3), (1, 2), (1, 3)):
        g = sp.expand(e.subs({X[z_one]: 1, X[w_one]: 1}))
        free = [X[i] for i in range(4) if i not in (z_one, w_one)]
        assert quotient_dimension([g] + [sp.diff(g, w) for w in free], free, extension=sp.I) == 8


def test_cusp_locus_degree_matches_sympy():
    assert cusp_locus_degree() == 24
    fs, u, v = d16_chart_exprs()
    x = sp.Symbol("x")
    P = lambda e: sp.Poly(sp.expand(e), x, domain=sp.QQ_I)
    diag = {u: x, v: x}
    r0 = [P(f.subs(diag)) for f in fs]
    r1 = [P(sp.diff(f, u).subs(diag)) for f in fs]
    det = r0[0] * r1[1] - r0[1] * r1[0]
    n1 = -(r0[2] * r1[1] - r0[1] * r1[2])
    n2 = -(r0[0] * r1[2] - r0[2] * r1[0])

    def scaled_hessian_entry(p, q):
        parts = [P(sp.diff(f, p, q).subs(diag)) for f in fs]
        return n1 * parts[0] + n2 * parts[1] + det * parts[2]
    num = scaled_hessian_entry(u, u) * scaled_hessian_entry(v, v) - scaled_hessian_entry(u, v) ** 2
    g = sp.gcd(num, det * det)
    assert sp.degree(sp.quo(num, g), x) == 24
