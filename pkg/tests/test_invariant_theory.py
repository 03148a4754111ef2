import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from carleman.errors import (DimensionMismatch, NotInvariant, OrderBoundExceeded,
                             SingularGenerator)
from carleman.invariant_theory import (block_symmetric_group, close_group, faa_di_bruno_radius,
                                       graded_dimensions, invariant_generators, operator_norm_mu,
                                       permutation_matrix, reynolds, rewrite_invariant,
                                       rotation_group, sign_group, symmetric_group, trivial_group,
                                       weyl_embedding)
from carleman.polynomials import Polynomial, compose, monomials_of_degree, parse_polynomial
from strategies import polynomials, random_poly

P = parse_polynomial

GROUPS = {
    "sign1": lambda: sign_group(1),
    "sym2": lambda: symmetric_group(2),
    "sym3": lambda: symmetric_group(3),
    "rot4": lambda: rotation_group(4),
    "sym22": lambda: block_symmetric_group((2, 2)),
}


def molien_coefficients(G, top: int) -> list[int]:
    """Dimensions of the invariant graded pieces from (1/|G|) sum 1/det(I - t g)."""
    t = sympy.symbols("t")
    total = 0
    for g in G.elements:
        m = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in g])
        total += 1 / (sympy.eye(G.n) - t * m).det()
    series = sympy.series(total / G.order, t, 0, top + 1).removeO()
    return [int(series.coeff(t, d)) for d in range(top + 1)]


def test_close_group_examples():
    assert close_group([[[-1]]]).order == 2
    S2 = close_group([[[0, 1], [1, 0]]])
    assert S2.order == 2
    S3 = close_group([permutation_matrix([1, 0, 2]), permutation_matrix([0, 2, 1])])
    assert S3.order == 6
    assert all(sum(map(abs, row)) == 1 for g in S3.elements for row in g)


def test_close_group_errors():
    with pytest.raises(OrderBoundExceeded):
        close_group([[[2]]], max_order=50)
    with pytest.raises(SingularGenerator):
        close_group([[[1, 1], [1, 1]]])


def test_group_is_closed_with_inverses():
    G = rotation_group(4)
    elems = set(G.elements)
    one = tuple(tuple(Fraction(int(i == j)) for j in range(2)) for i in range(2))
    for a in G.elements:
        assert any(tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2))
                         for i in range(2)) == one for b in elems)


def test_reynolds_examples():
    G = sign_group(1)
    assert reynolds(P("x1"), G).is_zero()
    assert reynolds(P("x1^2"), G) == P("x1^2")
    assert reynolds(P("x1", 2), symmetric_group(2)) == P("1/2*x1 + 1/2*x2")
    with pytest.raises(DimensionMismatch):
        reynolds(P("x1"), symmetric_group(2))


def test_generator_examples():
    assert invariant_generators(sign_group(1)).generators == (P("x1^2"),)
    S = invariant_generators(symmetric_group(2))
    assert graded_dimensions(S.generators, 4) == graded_dimensions([P("x1 + x2"), P("x1*x2")], 4)
    assert set(invariant_generators(trivial_group(2)).generators) == {P("x1", 2), P("x2", 2)}


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_generators_match_molien_series(name):
    G = GROUPS[name]()
    S = invariant_generators(G)
    for s in S.generators:
        assert G.is_invariant(s) and s.is_homogeneous()
    assert S.degrees == tuple(s.degree for s in S.generators)
    assert graded_dimensions(S.generators, 8) == molien_coefficients(G, 8)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_generators_generate_up_to_noether_bound(name):
    G = GROUPS[name]()
    S = invariant_generators(G)
    for d in range(G.order + 1):
        for e in monomials_of_degree(G.n, d):
            r = reynolds(Polynomial.monomial(e), G)
            if not r.is_zero():
                assert compose(rewrite_invariant(r, S), list(S.generators)) == r


def test_rewrite_examples():
    S = invariant_generators(symmetric_group(2))
    assert S.generators == (P("x1 + x2"), P("x1*x2"))
    assert rewrite_invariant(P("x1^2 + x2^2"), S) == P("s1^2 - 2*s2")
    assert rewrite_invariant(P("x1^3 + x2^3"), S) == P("s1^3 - 3*s1*s2")
    T = invariant_generators(sign_group(1))
    assert rewrite_invariant(P("x1^4"), T) == P("t1^2")
    with pytest.raises(NotInvariant):
        rewrite_invariant(P("x1", 2), S)


def test_weyl_examples():
    W = weyl_embedding(sign_group(1))
    assert W.dim == 2
    assert W.matrix == [[1], [-1]]
    J = W.lift(P("x1^2"))
    assert J == P("1/2*x1^2 + 1/2*x2^2")
    assert W.pullback(J) == P("x1^2")
    W2 = weyl_embedding(symmetric_group(2))
    assert W2.dim == 4
    assert W2.pullback(W2.lift(P("x1*x2"))) == P("x1*x2")
    c = Polynomial.constant(2, Fraction(7, 3))
    assert W2.lift(c) == Polynomial.constant(4, Fraction(7, 3))
    assert W2.pullback(W2.lift(c)) == c


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_weyl_lift_is_block_permutation_invariant(name):
    G = GROUPS[name]()
    W = weyl_embedding(G)
    f = reynolds(P("x1^2*x2", G.n) if G.n > 1 else P("x1^2"), G)
    assert W.block_permutation_invariant(W.lift(f))


def test_operator_norm_examples():
    mu = operator_norm_mu(symmetric_group(3))
    assert mu.value == 1 and mu.kind == "exact"
    assert operator_norm_mu(sign_group(2)).value == 1
    G = close_group([[[0, 2], ["1/2", 0]]])
    mu = operator_norm_mu(G)
    assert mu.value == 2 and mu.kind == "exact"


def test_operator_norm_upper_bound_when_irrational():
    # the order-3 matrix [[0,-1],[1,-1]] has spectral norm (1+sqrt5)/2 and
    # Frobenius norm sqrt3, which is the certified bound reported
    G = close_group([[[0, -1], [1, -1]]])
    mu = operator_norm_mu(G)
    golden = (1 + 5 ** 0.5) / 2
    assert G.order == 3
    assert mu.kind == "upper_bound" and float(mu.value) >= golden - 1e-12
    assert abs(float(mu.value) - 3 ** 0.5) < 1e-9


def test_faa_di_bruno_radius_examples():
    assert faa_di_bruno_radius(1, 1, 1) == 1
    assert faa_di_bruno_radius(2, 3, 1) == 18
    assert faa_di_bruno_radius(Fraction(1, 2), 2, 2) == 4


# -- properties -------------------------------------------------------------
group_names = st.sampled_from(sorted(GROUPS))


@settings(max_examples=20)
@given(group_names, st.data())
def test_reynolds_is_an_idempotent_projection(name, data):
    G = GROUPS[name]()
    f = data.draw(polynomials(G.n, 4))
    r = reynolds(f, G)
    assert G.is_invariant(r)
    assert reynolds(r, G) == r
    assert (reynolds(f, G) == f) == G.is_invariant(f)


@settings(max_examples=20)
@given(group_names, st.data())
def test_reynolds_is_linear_over_invariants(name, data):
    G = GROUPS[name]()
    g = reynolds(data.draw(polynomials(G.n, 3)), G)
    f = data.draw(polynomials(G.n, 3))
    assert reynolds(g * f, G) == g * reynolds(f, G)


@settings(max_examples=20)
@given(group_names, st.integers(0, 10 ** 6))
def test_rewrite_round_trip(name, seed):
    G = GROUPS[name]()
    S = invariant_generators(G)
    f = reynolds(random_poly(random.Random(seed), G.n, 8), G)
    assert compose(rewrite_invariant(f, S), list(S.generators)) == f


@settings(max_examples=20)
@given(group_names, st.integers(0, 10 ** 6))
def test_section_identity(name, seed):
    G = GROUPS[name]()
    W = weyl_embedding(G)
    f = reynolds(random_poly(random.Random(seed), G.n, 6), G)
    assert W.pullback(W.lift(f)) == f
