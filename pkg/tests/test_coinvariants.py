import random

import pytest
from hypothesis import given, settings, strategies as st

from carleman.coinvariants import (act, artin_basis, block_permutations, cramer_decompose,
                                   delta_divisibility_check, delta_sign_character,
                                   harmonic_basis, invariant_decompose, permutation_sign,
                                   recombine, regular_sign, subgroup_basis)
from carleman.errors import NotASubgroup, NotInvariant, ParameterOutOfRange, SizeBoundExceeded
from carleman.invariant_theory import (block_symmetric_group, close_group, permutation_matrix,
                                       reynolds, sign_group, trivial_group)
from carleman.polynomials import Polynomial, parse_polynomial
from strategies import random_poly

P = parse_polynomial

# Delta = det(h_j(w_i . v)) with lexicographic words, from an independent sympy determinant
DELTA_ORACLE = {
    (2,): "x1 - x2",
    (2, 1): "x1 - x2",
    (2, 2): "-(x1 - x2)^2*(x3 - x4)^2",
    (3,): "(x1 - x2)^3*(x1 - x3)^3*(x2 - x3)^3",
    (1, 1, 1): "1",
}

SMALL = [(2,), (3,), (2, 1), (2, 2), (1, 2), (2, 2, 1)]


@pytest.fixture(scope="module")
def s4():
    return artin_basis((4,))


def diagonal_swap():
    return close_group([permutation_matrix([1, 0, 3, 2])])


@pytest.mark.parametrize("sizes", sorted(DELTA_ORACLE))
def test_delta_matches_oracle(sizes):
    B = artin_basis(sizes)
    assert B.delta == P(DELTA_ORACLE[sizes], sum(sizes))


@pytest.mark.parametrize("sizes", SMALL)
def test_delta_equals_full_determinant(sizes):
    B = artin_basis(sizes)
    det, _ = B.cramer_data
    assert det == B.delta


def test_artin_basis_examples():
    B = artin_basis((2,))
    assert B.basis == (P("1", 2), P("x2"))
    B = artin_basis((2, 2))
    assert B.basis == (P("1", 4), P("x2", 4), P("x4"), P("x2*x4", 4))
    B = artin_basis((1, 1, 1))
    assert B.basis == (Polynomial.constant(3, 1),) and B.delta == Polynomial.constant(3, 1)
    with pytest.raises(SizeBoundExceeded):
        artin_basis((7,))
    with pytest.raises(ParameterOutOfRange):
        artin_basis((0, 2))


def test_element_order_is_lexicographic():
    B = artin_basis((3,))
    assert list(B.element_order) == sorted(B.element_order)
    assert len(B.element_order) == 6 == B.size


@pytest.mark.parametrize("sizes,exponent", [((2,), 1), ((3,), 3), ((2, 2), 2), ((2, 3), 6),
                                            ((2, 2, 2), 4)])
def test_delta_divisibility(sizes, exponent):
    report = delta_divisibility_check(artin_basis(sizes))
    assert report.passed
    assert report.cofactor.is_constant() and not report.cofactor.is_zero()
    assert {e for _, e in report.exponents} == {exponent}
    assert report.to_json()["status"] == "PASS"


def test_delta_divisibility_trivial_group():
    report = delta_divisibility_check(artin_basis((1,)))
    assert report.passed and report.exponents == ()


def test_delta_divisibility_s4(s4):
    report = delta_divisibility_check(s4)
    assert report.passed and {e for _, e in report.exponents} == {12}


@pytest.mark.parametrize("sizes", SMALL + [(2, 3)])
def test_delta_sign_character(sizes):
    assert delta_sign_character(artin_basis(sizes))


def test_regular_sign_differs_from_permutation_sign():
    # S2 x S2: Delta is invariant although the block transposition is odd
    w = (1, 0, 2, 3)
    assert permutation_sign(w) == -1 and regular_sign(w, 4) == 1
    B = artin_basis((2, 2))
    assert act(B.delta, w) == B.delta
    # S3: the regular sign of a transposition agrees with its sign
    assert regular_sign((1, 0, 2), 6) == permutation_sign((1, 0, 2)) == -1


def test_cramer_examples():
    B = artin_basis((2,))
    assert cramer_decompose(P("x1", 2), B) == [P("x1 + x2"), Polynomial.constant(2, -1)]
    f = P("x1^2 + x2^2")
    assert cramer_decompose(f, B) == [f, Polynomial.zero(2)]
    g = P("x2^2", 2)
    coeffs = cramer_decompose(g, B)
    assert recombine(B, coeffs) == g and all(B.is_w_invariant(c) for c in coeffs)
    with pytest.raises(ParameterOutOfRange):
        cramer_decompose(P("x3"), B)


def test_cramer_methods_agree():
    rng = random.Random(11)
    for sizes in SMALL:
        B = artin_basis(sizes)
        for _ in range(3):
            f = random_poly(rng, B.nvars, 5)
            assert cramer_decompose(f, B, "tower") == cramer_decompose(f, B, "full")


def test_harmonic_basis_is_w_stable():
    for sizes in [(2,), (3,), (2, 2)]:
        H = harmonic_basis(sizes)
        assert H.size == artin_basis(sizes).size
        assert not H.delta.is_zero()
        span_test = [act(h, w) for h in H.basis for w in H.element_order]
        for g in span_test:
            # a W-stable complement: each translate lies in the span, i.e. has constant coefficients
            coeffs = cramer_decompose(g, H)
            assert all(c.is_constant() for c in coeffs)


def test_subgroup_basis_examples():
    B = artin_basis((2,))
    assert subgroup_basis(B, block_symmetric_group((2,))) == [Polynomial.constant(2, 1)]
    assert len(subgroup_basis(B, trivial_group(2))) == 2
    B = artin_basis((2, 2))
    ks = subgroup_basis(B, diagonal_swap())
    assert len(ks) == 2
    assert ks[0] == Polynomial.constant(4, 1)
    assert ks[1] == P("(x1 - x2)*(x3 - x4)")
    with pytest.raises(NotASubgroup):
        subgroup_basis(B, sign_group(4))
    with pytest.raises(NotASubgroup):
        subgroup_basis(B, close_group([permutation_matrix([2, 3, 0, 1])]))


def test_invariant_decompose_examples():
    B = artin_basis((2, 2))
    G = diagonal_swap()
    f = P("x1*x3 + x2*x4")
    pairs = invariant_decompose(f, B, G)
    assert len(pairs) == 2
    assert sum((k * c for k, c in pairs), Polynomial.zero(4)) == f
    assert all(B.is_w_invariant(c) for _, c in pairs)
    W = P("x1 + x2 + x3*x4")
    pairs = invariant_decompose(W, B, block_symmetric_group((2, 2)))
    assert pairs == [(Polynomial.constant(4, 1), W)]
    zero = invariant_decompose(Polynomial.zero(4), B, G)
    assert all(c.is_zero() for _, c in zero)
    with pytest.raises(NotInvariant):
        invariant_decompose(P("x1", 4), B, G)


# -- properties -------------------------------------------------------------
@settings(max_examples=30)
@given(st.sampled_from(SMALL + [(4,), (3, 2), (2, 2, 2)]), st.integers(0, 10 ** 6),
       st.booleans())
def test_cramer_round_trip(sizes, seed, harmonic):
    B = (harmonic_basis if harmonic and sum(sizes) <= 4 else artin_basis)(sizes)
    f = random_poly(random.Random(seed), B.nvars, 6)
    coeffs = cramer_decompose(f, B)
    assert recombine(B, coeffs) == f
    assert all(B.is_w_invariant(c) for c in coeffs)
    assert cramer_decompose(f, B) == coeffs


@settings(max_examples=20)
@given(st.sampled_from([(2, 2), (3,), (2, 1)]), st.integers(0, 10 ** 6))
def test_invariant_decompose_round_trip(sizes, seed):
    B = artin_basis(sizes)
    words = [w for w in block_permutations(sizes) if w != tuple(range(B.nvars))]
    G = close_group([permutation_matrix(random.Random(seed).choice(words))])
    f = reynolds(random_poly(random.Random(seed + 1), B.nvars, 5), G)
    pairs = invariant_decompose(f, B, G)
    assert sum((k * c for k, c in pairs), Polynomial.zero(B.nvars)) == f
    assert all(G.is_invariant(k) and B.is_w_invariant(c) for k, c in pairs)
