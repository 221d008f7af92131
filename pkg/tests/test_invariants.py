import itertools
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from k3verify.catalog import default_catalog
from k3verify.cyclo import zeta
from k3verify.invariants import (InvariantError, as_grading, direct_trace, invariant_basis, molien_dimension,
                                 reynolds, span_equal)
from k3verify.matgroup import all_characters, semi_invariance_character
from k3verify.polyring import Grading, MultiPoly, act

from oracles import cyclo_to_complex, matrix_to_numpy, poly_eval_float

RNG_SEED = 7


def exponent_vectors(nvars, grading):
    if grading.kind == "bi":
        a, b = grading.deg
        s = grading.split
        left = [e for e in itertools.product(range(a + 1), repeat=s) if sum(e) == a]
        right = [e for e in itertools.product(range(b + 1), repeat=nvars - s) if sum(e) == b]
        return [l + r for l in left for r in right]
    d = grading.deg
    return [e for e in itertools.product(range(d + 1), repeat=nvars) if sum(e) == d]


def numeric_semi_dim(G, grading, gen_values=None):
    """Nullity of the conditions f(g^-1 x) = c_g f(x), sampled at random points."""
    rng = np.random.default_rng(RNG_SEED)
    monos = exponent_vectors(G.dim, grading)
    gen_values = gen_values or [1] * len(G.generators)
    rows = []
    for g, c in zip(G.generators, gen_values):
        Minv = np.linalg.inv(matrix_to_numpy(g.lift))
        c = complex(cyclo_to_complex(c)) if not isinstance(c, (int, complex)) else complex(c)
        for _ in range(len(monos) + 8):
            x = rng.normal(size=G.dim) + 1j * rng.normal(size=G.dim)
            y = Minv @ x
            rows.append([np.prod(y ** np.array(m)) - c * np.prod(x ** np.array(m)) for m in monos])
    A = np.array(rows)
    A = A / np.abs(A).max(axis=1, keepdims=True)
    return len(monos) - np.linalg.matrix_rank(A, tol=1e-7)


G6 = Grading.total(6)
BI44 = Grading.bi(4, 4)


@pytest.mark.parametrize("name,grading,expected", [
    ("C3xC7", G6, 2), ("L2(7)", Grading.total(4), 1), ("L2(7)", G6, 1), ("H(D16)", BI44, 3),
    ("T48", G6, 2), ("N72", Grading.total(2), 1), ("N72", Grading.total(3), 1), ("S4", G6, None),
    ("M9", G6, None)])
def test_molien_matches_numeric_nullity(cat, name, grading, expected):
    G = cat.group(name)
    k = molien_dimension(G, grading)
    assert k == numeric_semi_dim(G, grading)
    if expected is not None:
        assert k == expected


def test_valentiner_sextic_dimension_within_budget(cat):
    t0 = time.time()
    G = cat.group("Valentiner")
    k = molien_dimension(G, G6)
    assert time.time() - t0 < 60
    assert k == 1
    assert numeric_semi_dim(G, G6) == 1


@pytest.mark.parametrize("name,degree", [("N72", 2), ("N72", 3), ("M9", 6), ("C3xC7", 6), ("T48", 6)])
def test_semi_invariant_dimensions_by_character(cat, name, degree):
    G = cat.group(name)
    grading = Grading.total(degree)
    for ch in all_characters(G):
        assert molien_dimension(G, grading, ch) == numeric_semi_dim(G, grading, ch.on_generators())


def test_molien_rejects_ambient_mismatch(cat):
    with pytest.raises(InvariantError):
        molien_dimension(cat.group("H(D16)"), G6)
    with pytest.raises(InvariantError):
        molien_dimension(cat.group("L2(7)"), BI44)
    with pytest.raises(InvariantError):
        as_grading(3)


def test_direct_trace_brute_force(cat):
    # trace of g on degree-d forms is the complete symmetric function of the eigenvalues
    G = cat.group("L2(7)")
    for m in G.linear_elements[:30]:
        ev = np.linalg.eigvals(matrix_to_numpy(m))
        for d in (2, 4, 6):
            h = sum(np.prod(ev ** np.array(e)) for e in exponent_vectors(3, Grading.total(d)))
            assert abs(cyclo_to_complex(direct_trace(m, Grading.total(d), 3)) - h) < 1e-8


def test_bases_for_named_families(cat):
    c3c7 = invariant_basis(cat.group("C3xC7"), G6)
    assert c3c7.same_span([cat.curve("c3c7_p1"), cat.curve("c3c7_p2")])
    h = invariant_basis(cat.group("H(D16)"), BI44)
    assert h.same_span([cat.curve(f"d16_f{i}") for i in (1, 2, 3)])
    assert not h.contains(cat.curve("d16_g1"))


@pytest.mark.parametrize("name,degree", [("N72", 3), ("T48", 6), ("C3xC7", 6)])
def test_basis_methods_agree(cat, name, degree):
    G = cat.group(name)
    grading = Grading.total(degree)
    for ch in all_characters(G):
        a = invariant_basis(G, grading, ch, method="reynolds")
        b = invariant_basis(G, grading, ch, method="generators")
        assert span_equal(a.basis, b.basis, G.dim, grading)
        assert [p.terms for p in a.basis] == [p.terms for p in b.basis]


def test_unknown_method(cat):
    with pytest.raises(InvariantError):
        invariant_basis(cat.group("C3xC7"), G6, method="guess")


@st.composite
def group_and_form(draw):
    name = draw(st.sampled_from(["C3xC7", "Q8", "S4", "T48", "N72"]))
    G = default_catalog().group(name)
    grading = Grading.total(draw(st.integers(1, 4)))
    monos = exponent_vectors(G.dim, grading)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=1, max_size=5, unique=True))
    coeffs = [1, -1, 2, zeta(3), zeta(4)]
    f = MultiPoly(G.dim, grading, {m: draw(st.sampled_from(coeffs)) for m in chosen})
    chars = all_characters(G)
    ch = draw(st.sampled_from(chars))
    return G, f, ch


@given(group_and_form())
def test_reynolds_is_idempotent_projection(data):
    G, f, ch = data
    r = reynolds(G, f, ch)
    assert reynolds(G, r, ch) == r
    for g, c in zip(G.generators, ch.on_generators()):
        assert act(g, r) == r.scale(c)
    if not r.is_zero():
        assert semi_invariance_character(G, r) == ch


@given(group_and_form())
def test_reynolds_values_match_float_average(data):
    G, f, ch = data
    rng = np.random.default_rng(3)
    x = rng.normal(size=G.dim) + 1j * rng.normal(size=G.dim)
    total = 0j
    for i, m in enumerate(G.linear_elements):
        # the projector averages f o g weighted by the character value of g
        total += cyclo_to_complex(ch.values[i]) * poly_eval_float(f, matrix_to_numpy(m) @ x)
    total /= G.linear_order
    assert abs(poly_eval_float(reynolds(G, f, ch), x) - total) < 1e-7 * max(1, abs(total))
