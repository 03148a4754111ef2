import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from carleman.errors import (IndexOutOfRange, NotBlockSymmetric, NotLogConvex, NotSymmetric,
                             ParameterOutOfRange)
from carleman.invariant_theory import invariant_generators, reynolds, rewrite_invariant, symmetric_group
from carleman.polynomials import Polynomial, compose, parse_polynomial
from carleman.symmetric_core import (A1_LAST, ELEMENTARY, NEWTON, SymmetricCoordinates,
                                     block_generators, block_rewrite, bronshtein_A,
                                     bronshtein_check, bronshtein_partial, change_basis,
                                     divided_difference, elementary_symmetric, necessity_report,
                                     newton_power_sum, rewrite_symmetric)
from carleman.weight_sequences import make_sequence
from strategies import polynomials, random_poly

P = parse_polynomial

# m, sum_{k<=40} c_k rho_k^(3m) m!, bound m! M_(3m) / 2^m for Gevrey(1), n = 3;
# the sums were produced by an independent 60-digit mpmath summation
GEVREY1_NECESSITY = [
    (1, "4.5731165001891137722", 3),
    (2, "850.41061906611621307", 360),
    (3, "814771.09652009907833", 272160),
    (4, "2633756301.6585032649", 718502400),
    (5, "21378741486972.527887", 4903778880000),
]


def test_symmetric_function_examples():
    assert elementary_symmetric(3, 2) == P("x1*x2 + x1*x3 + x2*x3")
    assert newton_power_sum(2, 3) == P("x1^3 + x2^3")
    assert elementary_symmetric(2, 2) == P("x1*x2")


def test_change_basis_examples():
    assert change_basis(P("u2", 2), NEWTON, ELEMENTARY) == P("s1^2 - 2*s2")
    assert change_basis(P("s2", 2), ELEMENTARY, NEWTON) == P("1/2*u1^2 - 1/2*u2")
    with pytest.raises(ParameterOutOfRange):
        change_basis(P("s1", 2), NEWTON, NEWTON)


def test_rewrite_examples():
    assert rewrite_symmetric(P("x1^2 + x2^2")) == P("s1^2 - 2*s2")
    assert rewrite_symmetric(P("x1*x2*x3")) == P("s3", 3)
    f = P("(x1 - x2)^2*(x1 + x2)")
    assert rewrite_symmetric(f) == P("(s1^2 - 4*s2)*s1")
    assert rewrite_symmetric(P("x1^2 + x2^2"), NEWTON) == P("u2", 2)
    assert rewrite_symmetric(P("x1^2 + x2^2"), SymmetricCoordinates(2, NEWTON)) == P("u2", 2)
    with pytest.raises(NotSymmetric):
        rewrite_symmetric(P("x1", 2))


def test_block_rewrite_examples():
    # blocks (x1, x2) and (x3, x4); generators s1, s2 then s3, s4
    assert block_rewrite(P("x1 + x2 + x3*x4"), [2, 2]) == P("s1 + s4")
    assert block_rewrite(P("(x1 + x2)*(x3 + x4)"), [2, 2]) == P("s1*s3", 4)
    with pytest.raises(NotBlockSymmetric):
        block_rewrite(P("x1*x3", 4), [2, 2])


def test_bronshtein_A_examples():
    assert bronshtein_A(1, P("x1", 2)) == Polynomial.constant(2, 1)
    assert bronshtein_A(1, P("x1^2", 2)) == P("x1 + x2")
    assert bronshtein_A(1, Polynomial.constant(2, 5)).is_zero()
    with pytest.raises(IndexOutOfRange):
        bronshtein_A(2, P("x1", 2))


def test_A_equals_divided_difference():
    rng = random.Random(3)
    for _ in range(10):
        h = random_poly(rng, 3, 5)
        for j in (1, 2):
            assert bronshtein_A(j, h) == divided_difference(j, h)


def test_bronshtein_partial_examples():
    f = P("x1^2 + x2^2")
    assert bronshtein_partial(f, 1).is_zero()
    assert bronshtein_partial(f, 2) == Polynomial.constant(2, 1)
    assert bronshtein_partial(P("x1*x2"), 2) == Polynomial.constant(2, Fraction(-1, 2))
    assert bronshtein_partial(P("x1 + x2"), 1) == Polynomial.constant(2, 1)
    with pytest.raises(IndexOutOfRange):
        bronshtein_partial(f, 3)
    with pytest.raises(NotSymmetric):
        bronshtein_partial(P("x1", 2), 1)


def test_bronshtein_order_is_A1_last():
    f = reynolds(P("x1^3*x2 + x2*x3^2"), symmetric_group(3))
    for k in (1, 2, 3):
        check = bronshtein_check(f, k)
        assert check.passed and check.order == A1_LAST


def test_necessity_gevrey_rows_match_oracle():
    report = necessity_report(make_sequence("gevrey:1"), 3, 5, 40)
    assert report.all_certified
    for row, (m, total, bound) in zip(report.rows, GEVREY1_NECESSITY):
        assert row.m == m
        assert row.lower_bound == bound
        assert float(row.truncated_sum) == pytest.approx(float(total), rel=1e-14)
        assert row.truncated_sum >= row.lower_bound
    assert report.rows[0].lower_bound == 3


def test_necessity_constant_is_geometric():
    report = necessity_report(make_sequence("constant"), 3, 4, 40)
    for row in report.rows:
        fm = Fraction(1)
        for i in range(2, row.m + 1):
            fm *= i
        assert row.truncated_sum == fm * (2 - Fraction(1, 2 ** 40))
        assert row.lower_bound == fm / 2 ** row.m


def test_necessity_non_exact_sequence_is_certified():
    report = necessity_report(make_sequence("logpow:2"), 3, 3, 10)
    assert report.all_certified
    assert all(r.ratio >= 1 for r in report.rows)


def test_necessity_errors():
    with pytest.raises(ParameterOutOfRange):
        necessity_report(make_sequence("gevrey:1"), 2, 3)
    with pytest.raises(NotLogConvex):
        necessity_report(make_sequence("table:[1,2,3,10]"), 3, 1, 0)


def test_necessity_table_output():
    text = necessity_report(make_sequence("gevrey:1"), 3, 2, 5).to_text()
    assert text.splitlines()[0].split() == ["m", "truncated_sum", "lower_bound", "ratio"]
    assert len(text.splitlines()) == 3


# -- properties -------------------------------------------------------------
def _symmetrize(f: Polynomial) -> Polynomial:
    return reynolds(f, symmetric_group(f.nvars))


@settings(max_examples=25)
@given(st.integers(2, 4), st.integers(0, 10 ** 6))
def test_rewrite_round_trip(n, seed):
    f = _symmetrize(random_poly(random.Random(seed), n, 8 if n < 4 else 6))
    for basis in (ELEMENTARY, NEWTON):
        F = rewrite_symmetric(f, basis)
        assert compose(F, SymmetricCoordinates(n, basis).generators()) == f


@settings(max_examples=15)
@given(st.integers(2, 3), st.integers(0, 10 ** 6))
def test_rewrite_agrees_with_generic_rewrite(n, seed):
    f = _symmetrize(random_poly(random.Random(seed), n, 5))
    S = invariant_generators(symmetric_group(n))
    G = rewrite_invariant(f, S)
    assert compose(G, list(S.generators)) == compose(rewrite_symmetric(f), SymmetricCoordinates(n).generators())


@settings(max_examples=25)
@given(st.integers(1, 4), st.data())
def test_change_basis_round_trip(n, data):
    F = data.draw(polynomials(n, 4))
    assert change_basis(change_basis(F, ELEMENTARY, NEWTON), NEWTON, ELEMENTARY) == F
    assert change_basis(change_basis(F, NEWTON, ELEMENTARY), ELEMENTARY, NEWTON) == F


@settings(max_examples=15)
@given(st.sampled_from([(2,), (2, 2), (1, 3), (2, 1)]), st.integers(0, 10 ** 6))
def test_block_rewrite_round_trip(sizes, seed):
    from carleman.invariant_theory import block_symmetric_group
    n = sum(sizes)
    f = reynolds(random_poly(random.Random(seed), n, 6), block_symmetric_group(sizes))
    assert compose(block_rewrite(f, sizes), block_generators(sizes)) == f


@settings(max_examples=15)
@given(st.integers(2, 3), st.integers(0, 10 ** 6))
def test_bronshtein_matches_oracle(n, seed):
    f = _symmetrize(random_poly(random.Random(seed), n, 6))
    for k in range(1, n + 1):
        assert bronshtein_check(f, k).order == A1_LAST
