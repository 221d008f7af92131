import pytest
import sympy as sp
from hypothesis import given, strategies as st

from k3verify.cyclo import rat, zeta
from k3verify.matgroup import ProjectiveMap, mat_det, mat_vec, to_matrix
from k3verify.polyring import (Grading, MultiPoly, PolyError, act, compose, divide_monomial,
                               equal_up_to_scalar, euler_sum, evaluate, gradient, hessian_det, linear_form,
                               monomial_content, monomials_of, parse_poly, partial, render_poly,
                               substitute_linear)

from oracles import poly_to_sympy, poly_to_sympy_exact, vanishes_mod_cyclotomic

T = sp.Symbol("t")

COEFFS = [rat(1), rat(-1), rat(2), rat(-3), zeta(3), zeta(3, 2), rat(1, 1) + zeta(3)]


@st.composite
def forms(draw, nvars=3, degree=None, bidegree=None):
    if bidegree is not None:
        grading = Grading.bi(*bidegree)
    else:
        grading = Grading.total(degree if degree is not None else draw(st.integers(1, 4)))
    monos = monomials_of(nvars, grading)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=6, unique=True))
    terms = {m: draw(st.sampled_from(COEFFS)) for m in chosen}
    return MultiPoly(nvars, grading, terms)


@st.composite
def invertible(draw, n=3):
    """Lower unitriangular times upper triangular with nonzero diagonal, so never singular."""
    low = draw(st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))
    up = draw(st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))
    diag = draw(st.lists(st.sampled_from([1, -1, 2, -2, 3]), min_size=n, max_size=n))
    L = [[1 if i == j else (low[i * n + j] if j < i else 0) for j in range(n)] for i in range(n)]
    U = [[diag[i] if i == j else (up[i * n + j] if j > i else 0) for j in range(n)] for i in range(n)]
    return to_matrix([[sum(L[i][k] * U[k][j] for k in range(n)) for j in range(n)] for i in range(n)])


def test_parse_and_render_klein():
    k = parse_poly("x0*x1^3 + x1*x2^3 + x2*x0^3", 3, Grading.total(4))
    assert parse_poly(render_poly(k), 3, Grading.total(4)) == k
    with pytest.raises(PolyError):
        parse_poly("x0^2 + x1", 3, Grading.total(2))


def test_hessian_of_klein_matches_sympy():
    k = parse_poly("x0*x1^3 + x1*x2^3 + x2*x0^3", 3, Grading.total(4))
    h = hessian_det(k)
    ks, X = poly_to_sympy(k)
    hs = sp.expand(sp.Matrix(3, 3, lambda i, j: sp.diff(ks, X[i], X[j])).det())
    assert sp.expand(poly_to_sympy(h, X)[0] - hs) == 0
    ratio = equal_up_to_scalar(h, parse_poly("x0^5*x1 + x2^5*x0 + x1^5*x2 - 5*x0^2*x1^2*x2^2",
                                             3, Grading.total(6)))
    assert ratio == -54


def test_compose_matches_sympy():
    f = parse_poly("x0^2*x1 - 3*x2^3 + x0*x1*x2", 3, Grading.total(3))
    x, y, z = [linear_form(3, [1 if i == j else 0 for j in range(3)]) for i in range(3)]
    comps = [x * (z - y), z * (x - y), x * z]
    g = compose(f, comps)
    fs, X = poly_to_sympy(f)
    a, b, c = X
    ref = fs.subs({a: a * (c - b), b: c * (a - b), c: a * c}, simultaneous=True)
    assert sp.expand(poly_to_sympy(g, X)[0] - ref) == 0


def test_monomial_content_and_division():
    f = parse_poly("x0^3*x1^2*x2 + x0^2*x1^2*x2^2", 3, Grading.total(6))
    assert monomial_content(f) == (2, 2, 1)
    g = divide_monomial(f, (2, 2, 1))
    assert g == parse_poly("x0 + x2", 3, Grading.total(1))
    with pytest.raises(PolyError):
        divide_monomial(f, (3, 0, 0))


def test_bidegree_grading():
    f = parse_poly("x0^4*x2^4 + x1^4*x3^4", 4, Grading.bi(4, 4))
    assert f.grading == Grading.bi(4, 4)
    with pytest.raises(PolyError):
        parse_poly("x0^4*x2^3*x1", 4, Grading.bi(4, 4))


@given(forms(), invertible())
def test_substitution_matches_sympy(f, m):
    g = substitute_linear(f, m)
    fs, X = poly_to_sympy_exact(f, T, 3)
    lin = [sum(int(m[i][j].to_fraction()) * X[j] for j in range(3)) for i in range(3)]
    ref = fs.subs(dict(zip(X, lin)), simultaneous=True)
    assert vanishes_mod_cyclotomic(poly_to_sympy_exact(g, T, 3, X)[0] - ref, 3, T)


@given(forms())
def test_euler_identity(f):
    d = f.grading.deg
    assert euler_sum(f) == f.scale(rat(d))


@given(forms(nvars=4, bidegree=(2, 3)))
def test_euler_identity_bidegree(f):
    left = None
    for i in range(2):
        xi = MultiPoly(4, Grading.bi(1, 0), {tuple(1 if k == i else 0 for k in range(4)): 1})
        t = xi * partial(f, i)
        left = t if left is None else left + t
    assert MultiPoly(4, f.grading, left.terms) == f.scale(rat(2))
    assert euler_sum(f) == f.scale(rat(5))


@given(forms(), invertible(), invertible())
def test_left_action_law(f, a, b):
    g, h = ProjectiveMap(a), ProjectiveMap(b)
    assert act(g, act(h, f)) == act(g * h, f)


@given(forms(), invertible())
def test_action_preserves_values(f, m):
    g = ProjectiveMap(m)
    p = [rat(1), rat(2), rat(-1)]
    q = mat_vec(m, p)
    # (g.f)(g p) = f(p) for g.f = f o g^-1
    assert evaluate(act(g, f), q) == evaluate(f, p)


@given(forms(), forms())
def test_ring_operations_match_sympy(f, g):
    fs, X = poly_to_sympy_exact(f, T, 3)
    gs, _ = poly_to_sympy_exact(g, T, 3, X)
    assert vanishes_mod_cyclotomic(poly_to_sympy_exact(f * g, T, 3, X)[0] - fs * gs, 3, T)
    if f.grading == g.grading:
        assert vanishes_mod_cyclotomic(poly_to_sympy_exact(f + g, T, 3, X)[0] - fs - gs, 3, T)


@given(forms())
def test_gradient_matches_sympy(f):
    fs, X = poly_to_sympy_exact(f, T, 3)
    for i, gi in enumerate(gradient(f)):
        assert vanishes_mod_cyclotomic(poly_to_sympy_exact(gi, T, 3, X)[0] - sp.diff(fs, X[i]), 3, T)


@given(forms(), st.sampled_from(COEFFS[1:]))
def test_equal_up_to_scalar_recovers_factor(f, c):
    assert equal_up_to_scalar(f.scale(c), f) == c
    assert equal_up_to_scalar(f, f) == 1
