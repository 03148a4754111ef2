import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from carleman.errors import (InsufficientTable, ParameterOutOfRange, PrecisionExhausted,
                             TableNotNormalized)
from carleman.weight_sequences import (EVIDENCE_ONLY, FAILS, HOLDS, classify, gevrey,
                                       inclusion_index, is_derivation_closed, is_log_convex,
                                       loss_condition, make_sequence, minimal_loss_sequence,
                                       moderate_growth, quasianalytic, strong_nonquasianalytic,
                                       strongly_regular)

S = make_sequence

# sup_{k <= 200} binom(2k, k)^(1/k), computed independently with 200-bit mpmath
CENTRAL_BINOMIAL_SUP_200 = 3.93607336300894
# ((2k)! / (k!)^(3/2))^(1/k) at k = 200, same oracle
GEVREY_15_LOSS_AT_200 = 34.0647656931356


def test_evaluation_examples():
    assert S("gevrey:1")[4] == 24
    assert S("constant")[100] == 1
    assert S("qgevrey:2")[3] == 512
    assert S("gevrey:1/2")[0] == 1


def test_logpow_values_are_high_precision():
    M = S("logpow:1")
    assert abs(float(M[3]) - math.log(3 + math.e) ** 3) < 1e-12


@pytest.mark.parametrize("spec", ["gevrey:0", "gevrey:-1", "logpow:0", "qgevrey:1", "qgevrey:1/2",
                                  "table:[1,0,2]", "table:[1,3,2]"])
def test_parameters_out_of_range(spec):
    with pytest.raises(ParameterOutOfRange):
        S(spec)


def test_table_must_start_at_one():
    with pytest.raises(TableNotNormalized):
        S("table:[2,3,4]")


def test_table_index_range():
    with pytest.raises(InsufficientTable):
        S("table:[1,2,3]")[3]


def test_log_convex_examples():
    assert is_log_convex(S("gevrey:1"), 50).status == HOLDS
    assert is_log_convex(S("constant"), 10).status == HOLDS
    v = is_log_convex(S("table:[1,2,3,10]"), 3)
    assert v.status == FAILS and v.witness == 1


def test_log_convex_needs_table_length():
    with pytest.raises(InsufficientTable):
        is_log_convex(S("table:[1,2,4]"), 3)


def test_undecidable_interval_comparison_raises(monkeypatch):
    monkeypatch.setenv("CARLEMAN_PRECISION_BITS", "4")
    with pytest.raises(PrecisionExhausted):
        is_log_convex(S("logpow:1"), 50)


def test_derivation_closure_examples():
    v = is_derivation_closed(S("gevrey:1"))
    assert v.status == HOLDS and v.sup_estimate <= 2 + 1e-12
    v = is_derivation_closed(S("constant"))
    assert v.status == HOLDS and v.sup_estimate == pytest.approx(1.0)
    # (q^(2k+1))^(1/k) = q^(2 + 1/k) is largest at k = 1, where it equals q^3
    v = is_derivation_closed(S("qgevrey:2"))
    assert v.status == HOLDS and v.sup_estimate == pytest.approx(8.0)
    assert is_derivation_closed(S("table:[1,1,2,6,24]"), 3).status == EVIDENCE_ONLY


def test_inclusion_examples():
    v = inclusion_index(S("constant"), S("gevrey:1"), 200)
    assert v.status == HOLDS and v.sup_estimate == pytest.approx(1.0)
    v = inclusion_index(S("gevrey:2"), S("gevrey:1"), 200)
    assert v.status == FAILS and v.increasing_tail
    v = inclusion_index(S("logpow:3/2"), S("logpow:3/2"), 50)
    assert v.status == HOLDS and v.sup_estimate == pytest.approx(1.0)


def test_quasianalytic_examples():
    assert quasianalytic(S("logpow:1")).status == HOLDS
    assert quasianalytic(S("logpow:2")).status == FAILS
    v = quasianalytic(S("gevrey:1"))
    # terms 1/(k+1)^2; the partial sums stay below pi^2/6 < 2
    assert v.status == FAILS and v.extras["partial_sum"] < math.pi ** 2 / 6 + 1e-12


def test_strong_nonquasianalytic_examples():
    assert strong_nonquasianalytic(S("gevrey:1")).status == HOLDS
    assert strong_nonquasianalytic(S("logpow:2")).status == FAILS
    assert strong_nonquasianalytic(S("qgevrey:2")).status == HOLDS
    assert strong_nonquasianalytic(S("constant")).status == FAILS


def test_moderate_growth_examples():
    assert moderate_growth(S("qgevrey:2")).status == FAILS
    v = moderate_growth(S("gevrey:1"))
    assert v.status == HOLDS and v.sup_estimate <= 2
    v = moderate_growth(S("constant"))
    assert v.status == HOLDS and v.sup_estimate == pytest.approx(1.0)


def test_strongly_regular_examples():
    assert strongly_regular(S("gevrey:1/2")).status == HOLDS
    assert strongly_regular(S("qgevrey:2")).status == FAILS
    assert strongly_regular(S("logpow:2")).status == FAILS


def test_loss_examples():
    v = loss_condition(S("gevrey:1"), S("gevrey:2"), 2, 200)
    assert v.status == HOLDS
    assert v.sup_estimate == pytest.approx(CENTRAL_BINOMIAL_SUP_200, rel=1e-10)
    assert v.sup_estimate <= 4
    v = loss_condition(S("gevrey:1"), S("gevrey:3/2"), 2, 200)
    assert v.status == FAILS and v.increasing_tail
    assert v.sup_estimate == pytest.approx(GEVREY_15_LOSS_AT_200, rel=1e-10)
    for spec in ["constant", "gevrey:1", "logpow:2", "qgevrey:3"]:
        v = loss_condition(S(spec), S(spec), 1, 100)
        assert v.status == HOLDS and v.sup_estimate == pytest.approx(1.0)


def test_minimal_loss_examples():
    M = S("gevrey:1")
    N = minimal_loss_sequence(M, 3)
    assert all(N[k] >= math.factorial(k) ** 3 for k in range(30))
    assert loss_condition(M, N, 3).status == HOLDS
    assert minimal_loss_sequence(S("logpow:2"), 1) == S("logpow:2")
    for delta in (Fraction(1, 2), Fraction(1), Fraction(3)):
        N = minimal_loss_sequence(gevrey(delta), 2)
        assert loss_condition(gevrey(delta), gevrey(2 * delta), 2).status == HOLDS
        assert N == gevrey(2 * delta)


def test_tables_only_give_evidence():
    T = S("table:[1,2,4,8,16,32]")
    for name, v in classify(T, 4).items():
        if name != "log_convex":
            assert v.status == EVIDENCE_ONLY, name
    assert inclusion_index(T, T, 5).status == HOLDS
    assert inclusion_index(T, S("gevrey:1"), 5).status == EVIDENCE_ONLY


def test_classification_table():
    expected = {
        "constant": (HOLDS, FAILS, HOLDS, FAILS),
        "gevrey:1/2": (FAILS, HOLDS, HOLDS, HOLDS),
        "gevrey:2": (FAILS, HOLDS, HOLDS, HOLDS),
        "logpow:1/2": (HOLDS, FAILS, HOLDS, FAILS),
        "logpow:3": (FAILS, FAILS, HOLDS, FAILS),
        "qgevrey:3/2": (FAILS, HOLDS, FAILS, FAILS),
    }
    for spec, row in expected.items():
        r = classify(S(spec))
        got = tuple(r[c].status for c in ("quasianalytic", "strong_nonquasianalytic",
                                           "moderate_growth", "strongly_regular"))
        assert got == row, spec


def test_verdict_json_schema():
    data = loss_condition(S("gevrey:1"), S("gevrey:2"), 2).to_json()
    assert {"condition", "status", "witness", "sup_estimate", "prefix_K"} <= set(data)


# -- properties -------------------------------------------------------------
rationals = st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=4)


@st.composite
def builtin_sequences(draw):
    kind = draw(st.sampled_from(["constant", "gevrey", "logpow", "qgevrey"]))
    if kind == "constant":
        return S("constant")
    if kind == "qgevrey":
        q = draw(st.fractions(min_value=Fraction(5, 4), max_value=3, max_denominator=4))
        return S(f"qgevrey:{q}")
    return S(f"{kind}:{draw(rationals)}")


@settings(max_examples=15)
@given(builtin_sequences())
def test_builtins_are_log_convex(M):
    assert is_log_convex(M, 40).status == HOLDS


@given(rationals, rationals)
def test_inclusion_is_monotone_in_gevrey_parameter(a, b):
    v = inclusion_index(gevrey(a), gevrey(b), 60)
    assert v.holds == (a <= b)
    if not v.holds:
        assert v.increasing_tail
    assert inclusion_index(gevrey(a), gevrey(a), 60).sup_estimate == pytest.approx(1.0)


@settings(max_examples=15)
@given(builtin_sequences(), st.integers(1, 8))
def test_minimal_loss_sequence_satisfies_loss_condition(M, m):
    assert loss_condition(M, minimal_loss_sequence(M, m), m, 40).status == HOLDS


@settings(max_examples=15)
@given(rationals, st.integers(1, 3), rationals)
def test_prefix_sup_monotone_in_K(delta, m, target):
    M, N = gevrey(delta), gevrey(target)
    sups = [loss_condition(M, N, m, K).sup_estimate for K in (20, 40, 80)]
    assert sups[0] <= sups[1] * (1 + 1e-12) and sups[1] <= sups[2] * (1 + 1e-12)
    v = loss_condition(M, N, m, 80)
    assert v.holds == (target >= delta * m)
    if not v.holds:
        assert v.increasing_tail
