"""Denjoy-Carleman weight sequences and their regularity conditions.

Built-in families (``M_0 = 1`` throughout):

=============  ===========================
constant       ``M_k = 1``
gevrey:d       ``M_k = (k!)^d``
logpow:d       ``M_k = log(k + e)^(d k)``
qgevrey:q      ``M_k = q^(k^2)``
table:[...]    finite list, evaluable on its index range
=============  ===========================

plus ``dilated`` sequences ``k -> M_{km}`` produced by
:func:`minimal_loss_sequence`.

Conditions over infinitely many indices are decided analytically for the
symbolic families from the leading term of ``log M_k``; a finite table only
ever yields ``EvidenceOnly``.  Every verdict also carries numeric evidence
computed on a finite prefix.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import mpmath
import numpy as np

from .errors import (InsufficientTable, ParameterOutOfRange, PrecisionExhausted,
                     TableNotNormalized)

HOLDS = "Holds"
FAILS = "Fails"
EVIDENCE_ONLY = "EvidenceOnly"

CONSTANT = "constant"
GEVREY = "gevrey"
LOGPOWER = "logpow"
QGEVREY = "qgevrey"
TABLE = "table"
DILATED = "dilated"

DEFAULT_PREFIX_K = 200
DEFAULT_SERIES_K = 10 ** 6


def precision_bits() -> int:
    return int(os.environ.get("CARLEMAN_PRECISION_BITS", "256"))


def interval_context(bits: int | None = None):
    """A private mpmath interval context (module-global precision is not thread safe)."""
    ctx = type(mpmath.iv)()
    ctx.prec = bits or precision_bits()
    return ctx


def _frac_interval(ctx, q: Fraction):
    return ctx.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class WeightSequence:
    family: str
    param: Fraction | None = None
    table: tuple[Fraction, ...] | None = None
    base: "WeightSequence | None" = None
    factor: int = 1

    # -- evaluation -----------------------------------------------------
    @property
    def length(self) -> int | None:
        """Number of evaluable indices, ``None`` when unbounded."""
        if self.family == TABLE:
            return len(self.table)
        if self.family == DILATED:
            n = self.base.length
            return None if n is None else (n - 1) // self.factor + 1
        return None

    def _check_index(self, k: int):
        if k < 0:
            raise IndexError("weight sequences are indexed from 0")
        n = self.length
        if n is not None and k >= n:
            raise InsufficientTable(f"index {k} beyond table of length {n}")

    @property
    def is_exact(self) -> bool:
        """True when ``M_k = base(k) ** exponent`` with rational bases."""
        if self.family == DILATED:
            return self.base.is_exact
        return self.family != LOGPOWER

    @property
    def exponent(self) -> Fraction:
        if self.family == GEVREY:
            return self.param
        if self.family == DILATED:
            return self.base.exponent
        return Fraction(1)

    def exact_base(self, k: int) -> Fraction:
        self._check_index(k)
        if self.family == CONSTANT:
            return Fraction(1)
        if self.family == GEVREY:
            return Fraction(math.factorial(k))
        if self.family == QGEVREY:
            return self.param ** (k * k)
        if self.family == TABLE:
            return self.table[k]
        if self.family == DILATED:
            return self.base.exact_base(k * self.factor)
        raise ValueError(f"{self.family} has no exact representation")

    def value(self, k: int):
        """``M_k`` as a Fraction when rational, else an mpmath float at working precision."""
        self._check_index(k)
        if self.is_exact:
            b, e = self.exact_base(k), self.exponent
            if e.denominator == 1:
                return b ** e.numerator
            root = _exact_root(b, e.denominator)
            if root is not None:
                return root ** e.numerator
        with mpmath.workprec(precision_bits()):
            return mpmath.mpf(self.interval(k, interval_context()).mid)

    def __getitem__(self, k: int):
        return self.value(k)

    def log_interval(self, k: int, ctx):
        """Enclosure of ``log M_k``."""
        self._check_index(k)
        if k == 0:
            return ctx.mpf(0)
        if self.family == LOGPOWER:
            return _frac_interval(ctx, self.param) * k * ctx.log(ctx.log(ctx.mpf(k) + ctx.e))
        if self.family == DILATED:
            return self.base.log_interval(k * self.factor, ctx)
        b = self.exact_base(k)
        return _frac_interval(ctx, self.exponent) * ctx.log(_frac_interval(ctx, b))

    def interval(self, k: int, ctx):
        return ctx.exp(self.log_interval(k, ctx))

    def log_values(self, K: int) -> np.ndarray:
        """Float64 ``log M_k`` for ``k = 0..K`` (clipped to the table length)."""
        n = self.length
        if n is not None:
            K = min(K, n - 1)
        k = np.arange(K + 1, dtype=np.float64)
        if self.family == CONSTANT:
            return np.zeros(K + 1)
        if self.family == GEVREY:
            logfact = np.concatenate(([0.0], np.cumsum(np.log(k[1:]))))
            return float(self.param) * logfact
        if self.family == LOGPOWER:
            return float(self.param) * k * np.log(np.log(k + math.e))
        if self.family == QGEVREY:
            return k * k * math.log(self.param)
        if self.family == TABLE:
            return np.array([_log_fraction(v) for v in self.table[:K + 1]])
        base = self.base.log_values(K * self.factor)
        return base[::self.factor][:K + 1]

    # -- display --------------------------------------------------------
    def spec(self) -> str:
        """Round-trippable text form (the CLI grammar)."""
        if self.family == CONSTANT:
            return "constant"
        if self.family in (GEVREY, LOGPOWER, QGEVREY):
            return f"{self.family}:{self.param}"
        if self.family == TABLE:
            return "table:[" + ",".join(str(v) for v in self.table) + "]"
        return f"dilated({self.base.spec()},{self.factor})"

    def __str__(self) -> str:
        return self.spec()


def _log_fraction(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def _exact_root(q: Fraction, n: int) -> Fraction | None:
    def iroot(a: int) -> int | None:
        r = round(a ** (1.0 / n)) if a < 2 ** 1000 else _int_root(a, n)
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** n == a:
                return c
        return None

    a, b = iroot(q.numerator), iroot(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _int_root(a: int, n: int) -> int:
    lo, hi = 0, 1 << (a.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** n <= a:
            lo = mid
        else:
            hi = mid - 1
    return lo


# -- construction ---------------------------------------------------------
_SPEC = re.compile(r"^\s*(constant|gevrey|logpow|qgevrey|table)\s*(?::\s*(.+?))?\s*$")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParameterOutOfRange(f"not a rational number: {text!r}") from exc


def make_sequence(spec: str | dict | WeightSequence) -> WeightSequence:
    """Build a sequence from ``gevrey:1/2``-style text or ``{"family":..., "param":...}``."""
    if isinstance(spec, WeightSequence):
        return spec
    if isinstance(spec, dict):
        family = spec.get("family")
        arg = spec.get("param", spec.get("values"))
    else:
        m = _SPEC.match(spec)
        if not m:
            raise ParameterOutOfRange(f"unrecognized sequence spec {spec!r}")
        family, arg = m.group(1), m.group(2)
    if family == CONSTANT:
        if arg not in (None, ""):
            raise ParameterOutOfRange("constant takes no parameter")
        return WeightSequence(CONSTANT)
    if family in (GEVREY, LOGPOWER, QGEVREY):
        if arg is None:
            raise ParameterOutOfRange(f"{family} needs a parameter")
        p = arg if isinstance(arg, Fraction) else _rational(str(arg))
        if family == QGEVREY and not p > 1:
            raise ParameterOutOfRange("q-Gevrey needs q > 1")
        if family != QGEVREY and not p > 0:
            raise ParameterOutOfRange(f"{family} needs a positive exponent")
        return WeightSequence(family, p)
    if family == TABLE:
        if isinstance(arg, str):
            body = arg.strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise ParameterOutOfRange("table values must be written as [v0,v1,...]")
            items = [s for s in body[1:-1].split(",") if s.strip()]
        else:
            items = list(arg or [])
        values = tuple(_rational(str(v)) for v in items)
        if not values:
            raise ParameterOutOfRange("empty table")
        if any(v <= 0 for v in values):
            raise ParameterOutOfRange("table values must be positive")
        if values[0] != 1:
            raise TableNotNormalized(f"M_0 must be 1, got {values[0]}")
        for k in range(len(values) - 1):
            if values[k + 1] < values[k]:
                raise ParameterOutOfRange(f"table decreases at k={k}")
        return WeightSequence(TABLE, table=values)
    raise ParameterOutOfRange(f"unknown family {family!r}")


def gevrey(delta) -> WeightSequence:
    return make_sequence({"family": GEVREY, "param": Fraction(delta)})


def dilate(M: WeightSequence, m: int) -> WeightSequence:
    """The sequence ``k -> M_{km}``."""
    if m < 1:
        raise ParameterOutOfRange("dilation factor must be >= 1")
    if m == 1:
        return M
    if M.family == DILATED:
        return WeightSequence(DILATED, base=M.base, factor=M.factor * m)
    return WeightSequence(DILATED, base=M, factor=m)


# -- verdicts -------------------------------------------------------------
@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    status: str
    witness: int | None = None
    sup_estimate: float | None = None
    prefix_K: int | None = None
    detail: str = ""
    analytic: bool = False
    increasing_tail: bool | None = None
    extras: dict[str, Any] = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def to_json(self) -> dict:
        out = {
            "condition": self.condition,
            "status": self.status,
            "witness": self.witness,
            "sup_estimate": self.sup_estimate,
            "prefix_K": self.prefix_K,
            "detail": self.detail,
        }
        out.update(self.extras)
        return out


# Asymptotic class of log M_k: the single dominant scale and its parameter.
# Scale order: constant < logpow (k loglog k) < gevrey (k log k) < qgevrey (k^2).
_SCALE_RANK = {CONSTANT: 0, LOGPOWER: 1, GEVREY: 2, QGEVREY: 3}


def asymptotic_class(M: WeightSequence) -> tuple[str, Fraction | None] | None:
    """``(family, parameter)`` of a built-in family equivalent to ``M``; None for tables.

    A dilation ``k -> M_{km}`` of gevrey:d and logpow:d is equivalent (mutual
    inclusion) to gevrey:dm and logpow:dm; for qgevrey:q it equals qgevrey:q^(m^2).
    """
    fam = M.family
    if fam == TABLE:
        return None
    if fam == CONSTANT:
        return (CONSTANT, None)
    if fam in (GEVREY, LOGPOWER, QGEVREY):
        return (fam, M.param)
    inner = asymptotic_class(M.base)
    if inner is None:
        return None
    kind, p = inner
    m = M.factor
    if kind == CONSTANT:
        return inner
    if kind == QGEVREY:
        return (QGEVREY, p ** (m * m))
    return (kind, p * m)


def _compare_classes(a, b) -> int:
    """Sign of growth(a) - growth(b) for ``sup (a_k/b_k)^(1/k)``: >0 means unbounded."""
    ra, rb = _SCALE_RANK[a[0]], _SCALE_RANK[b[0]]
    if ra != rb:
        return 1 if ra > rb else -1
    if a[0] == CONSTANT:
        return 0
    return (a[1] > b[1]) - (a[1] < b[1])


def _prefix_profile(values: np.ndarray, start: int):
    """Running sup, its argmax index and whether the tail strictly increases."""
    if values.size == 0:
        return None, None, None
    j = int(np.argmax(values))
    tail = values[-min(10, values.size):]
    increasing = bool(np.all(np.diff(tail) > 0)) if tail.size > 1 else None
    return float(values[j]), j + start, increasing


def _ratio_root_profile(logs_num: np.ndarray, logs_den: np.ndarray, K: int):
    """Evidence for ``sup_{1<=k<=K} (num_k / den_k)^(1/k)``."""
    n = min(len(logs_num), len(logs_den), K + 1)
    if n < 2:
        return None, None, None, 0
    k = np.arange(1, n, dtype=np.float64)
    vals = np.exp((logs_num[1:n] - logs_den[1:n]) / k)
    sup, arg, inc = _prefix_profile(vals, 1)
    return sup, arg, inc, n - 1


# -- conditions -----------------------------------------------------------
def is_log_convex(M: WeightSequence, K: int = DEFAULT_PREFIX_K) -> ConditionVerdict:
    """Exact check of ``M_k^2 <= M_{k-1} M_{k+1}`` for ``1 <= k <= K-1``."""
    if K < 2:
        raise ValueError("K must be at least 2")
    n = M.length
    if n is not None and n < K + 1:
        raise InsufficientTable(f"need {K + 1} table entries, have {n}")
    ctx = None
    for k in range(1, K):
        if M.is_exact:
            a, b, c = M.exact_base(k - 1), M.exact_base(k), M.exact_base(k + 1)
            ok = b * b <= a * c
            increasing = c >= b
        else:
            ctx = ctx or interval_context()
            la, lb, lc = (M.log_interval(i, ctx) for i in (k - 1, k, k + 1))
            ok = (la + lc - 2 * lb) >= 0
            increasing = (lc - lb) >= 0
            if ok is None or increasing is None:
                raise PrecisionExhausted(
                    f"log-convexity at k={k} undecided at {ctx.prec} bits")
        if not ok:
            return ConditionVerdict("log_convex", FAILS, witness=k, prefix_K=K,
                                    detail=f"M_{k}^2 > M_{k - 1} M_{k + 1}")
        if not increasing:
            return ConditionVerdict("log_convex", FAILS, witness=k, prefix_K=K,
                                    detail=f"M_{k + 1} < M_{k}: sequence not increasing")
    analytic = M.family != TABLE and not (M.family == DILATED and M.length is not None)
    detail = "checked exactly on the prefix"
    if analytic:
        detail += "; log-convex for every k (built-in family)"
    return ConditionVerdict("log_convex", HOLDS, prefix_K=K, detail=detail, analytic=analytic)


def is_derivation_closed(M: WeightSequence, K: int = DEFAULT_PREFIX_K) -> ConditionVerdict:
    """``sup_k (M_{k+1}/M_k)^(1/k) < inf``."""
    logs = M.log_values(K + 1)
    shifted = logs[1:]
    sup, arg, inc, used = _ratio_root_profile(shifted, logs[:-1], K)
    cls = asymptotic_class(M)
    if cls is None:
        return ConditionVerdict("derivation_closed", EVIDENCE_ONLY, witness=arg,
                                sup_estimate=sup, prefix_K=used,
                                detail="finite table: prefix sup only",
                                increasing_tail=inc)
    kind, p = cls
    if kind == QGEVREY:
        detail = f"(M_(k+1)/M_k)^(1/k) = q^(2+1/k) <= q^3 = {float(p) ** 3:g}"
    elif kind == CONSTANT:
        detail = "ratio identically 1"
    else:
        detail = "(M_(k+1)/M_k)^(1/k) -> 1"
    return ConditionVerdict("derivation_closed", HOLDS, witness=arg, sup_estimate=sup,
                            prefix_K=used, detail=detail, analytic=True,
                            increasing_tail=inc)


def inclusion_index(M: WeightSequence, N: WeightSequence, K: int = DEFAULT_PREFIX_K) -> ConditionVerdict:
    """``sup_k (M_k/N_k)^(1/k) < inf``, i.e. ``C^M`` contained in ``C^N``."""
    for S in (M, N):
        if S.length is not None and S.length < K + 1:
            raise InsufficientTable(f"{S.spec()} has only {S.length} entries, need {K + 1}")
    return _sup_condition("inclusion", M, N, K)


def _sup_condition(name: str, Mx: WeightSequence, N: WeightSequence, K: int,
                   source: WeightSequence | None = None) -> ConditionVerdict:
    sup, arg, inc, used = _ratio_root_profile(Mx.log_values(K), N.log_values(K), K)
    if Mx == N:
        return ConditionVerdict(name, HOLDS, witness=arg, sup_estimate=sup, prefix_K=used,
                                detail="identical sequences", analytic=True,
                                increasing_tail=inc)
    a, b = asymptotic_class(Mx), asymptotic_class(N)
    if a is None or b is None:
        return ConditionVerdict(name, EVIDENCE_ONLY, witness=arg, sup_estimate=sup,
                                prefix_K=used, detail="finite table: prefix sup only",
                                increasing_tail=inc)
    sign = _compare_classes(a, b)
    status = FAILS if sign > 0 else HOLDS
    desc = f"{_class_str(a)} vs {_class_str(b)}"
    return ConditionVerdict(name, status, witness=arg, sup_estimate=sup, prefix_K=used,
                            detail=("unbounded: " if sign > 0 else "bounded: ") + desc,
                            analytic=True, increasing_tail=inc)


def _class_str(cls) -> str:
    kind, p = cls
    return kind if p is None else f"{kind}:{p}"


def loss_condition(M: WeightSequence, N: WeightSequence, m: int,
                   K: int = DEFAULT_PREFIX_K) -> ConditionVerdict:
    """``sup_k (M_{km}/N_k)^(1/k) < inf``."""
    if m < 1:
        raise ParameterOutOfRange("m must be a positive integer")
    v = _sup_condition("loss", dilate(M, m), N, K)
    return ConditionVerdict(v.condition, v.status, v.witness, v.sup_estimate, v.prefix_K,
                            v.detail + f" (m={m})", v.analytic, v.increasing_tail,
                            {"m": m})


def minimal_loss_sequence(M: WeightSequence, m: int) -> WeightSequence:
    """A sequence ``N`` with ``N_k >= M_{km}``, so that the loss condition holds for ``(M, N, m)``.

    gevrey:d maps to gevrey:dm (``(k!)^(dm) >= ((km)!)^d / m^(dkm)``
    up to the geometric factor the condition allows), qgevrey:q to qgevrey:q^(m^2);
    other families become the dilation itself.
    """
    if m < 1:
        raise ParameterOutOfRange("m must be a positive integer")
    if m == 1:
        return M
    if M.family == CONSTANT:
        return M
    if M.family == GEVREY:
        return WeightSequence(GEVREY, M.param * m)
    if M.family == QGEVREY:
        return WeightSequence(QGEVREY, M.param ** (m * m))
    if M.family == TABLE:
        return WeightSequence(TABLE, table=M.table[::m])
    return dilate(M, m)


def _series_terms(M: WeightSequence, K: int) -> np.ndarray:
    """``M_k / ((k+1) M_{k+1})`` for ``k = 0..K-1``."""
    logs = M.log_values(K)
    k = np.arange(len(logs) - 1, dtype=np.float64)
    return np.exp(logs[:-1] - logs[1:]) / (k + 1)


def quasianalytic(M: WeightSequence, K: int = DEFAULT_SERIES_K) -> ConditionVerdict:
    """Divergence of ``sum M_k/((k+1) M_{k+1})``."""
    terms = _series_terms(M, K)
    partial = float(np.sum(terms))
    half = float(np.sum(terms[: len(terms) // 2]))
    extras = {"partial_sum": partial, "partial_sum_half": half}
    cls = asymptotic_class(M)
    if cls is None:
        return ConditionVerdict("quasianalytic", EVIDENCE_ONLY, prefix_K=len(terms),
                                sup_estimate=partial,
                                detail="finite table: partial sums only", extras=extras)
    kind, p = cls
    if kind == CONSTANT:
        status, why = HOLDS, "terms 1/(k+1): harmonic series diverges"
    elif kind == GEVREY:
        status, why = FAILS, f"terms ~ (k+1)^-(1+{p}): convergent"
    elif kind == QGEVREY:
        status, why = FAILS, "terms decay geometrically: convergent"
    else:
        status = HOLDS if p <= 1 else FAILS
        why = f"terms ~ 1/(k log(k)^{p}): " + ("divergent" if p <= 1 else "convergent")
    return ConditionVerdict("quasianalytic", status, prefix_K=len(terms),
                            sup_estimate=partial, detail=why, analytic=True, extras=extras)


def strong_nonquasianalytic(M: WeightSequence, J: int = DEFAULT_PREFIX_K,
                            K: int = DEFAULT_SERIES_K) -> ConditionVerdict:
    """``sum_{k>=j} M_k/((k+1)M_{k+1}) <= C M_j/M_{j+1}`` for all ``j``."""
    terms = _series_terms(M, K)
    tails = np.cumsum(terms[::-1])[::-1]
    logs = M.log_values(min(J + 1, len(terms)))
    jmax = min(J, len(logs) - 2, len(tails) - 1)
    if jmax < 0:
        raise InsufficientTable("table too short for tail quotients")
    j = np.arange(jmax + 1)
    quot = tails[j] * np.exp(logs[j + 1] - logs[j])
    sup, arg, inc = _prefix_profile(quot, 0)
    cls = asymptotic_class(M)
    common = dict(witness=arg, sup_estimate=sup, prefix_K=int(jmax), increasing_tail=inc,
                  extras={"series_K": int(len(terms))})
    if cls is None:
        return ConditionVerdict("strong_nonquasianalytic", EVIDENCE_ONLY,
                                detail="finite table: truncated tail quotients only", **common)
    kind, p = cls
    if kind == CONSTANT:
        status, why = FAILS, "tails of the harmonic series diverge"
    elif kind == GEVREY:
        status, why = HOLDS, f"tail ~ j^-{p}/{p} against M_j/M_(j+1) ~ j^-{p}"
    elif kind == QGEVREY:
        status, why = HOLDS, "geometric tails dominated by the first term"
    elif p <= 1:
        status, why = FAILS, "series diverges (quasianalytic)"
    else:
        status, why = FAILS, "tail/ratio quotient grows like log j"
    return ConditionVerdict("strong_nonquasianalytic", status, detail=why, analytic=True,
                            **common)


def moderate_growth(M: WeightSequence, K: int = DEFAULT_PREFIX_K) -> ConditionVerdict:
    """``sup_{j,k>=1} (M_{j+k}/(M_j M_k))^(1/(j+k)) < inf``."""
    logs = M.log_values(K)
    top = len(logs) - 1
    best = []
    for s in range(2, top + 1):
        j = np.arange(1, s)
        best.append(float(np.max(logs[s] - logs[j] - logs[s - j])) / s)
    vals = np.exp(np.array(best)) if best else np.array([])
    sup, arg, inc = _prefix_profile(np.maximum.accumulate(vals) if vals.size else vals, 2)
    if vals.size:
        arg = int(np.argmax(vals)) + 2
        inc = bool(np.all(np.diff(vals[-10:]) > 0)) if vals.size > 1 else None
    cls = asymptotic_class(M)
    common = dict(witness=arg, sup_estimate=sup, prefix_K=top, increasing_tail=inc)
    if cls is None:
        return ConditionVerdict("moderate_growth", EVIDENCE_ONLY,
                                detail="finite table: prefix sup over j+k <= K", **common)
    kind, p = cls
    if kind == QGEVREY:
        return ConditionVerdict("moderate_growth", FAILS, analytic=True,
                                detail="M_(2j)/M_j^2 = q^(2j^2): root grows like q^(j)",
                                **common)
    why = {CONSTANT: "ratio identically 1",
           GEVREY: "(j+k)! <= 2^(j+k) j! k!",
           LOGPOWER: "log-ratio bounded by a multiple of j+k"}[kind]
    return ConditionVerdict("moderate_growth", HOLDS, analytic=True, detail=why, **common)


def strongly_regular(M: WeightSequence) -> ConditionVerdict:
    mg = moderate_growth(M)
    snq = strong_nonquasianalytic(M)
    statuses = {mg.status, snq.status}
    if FAILS in statuses:
        status = FAILS
    elif EVIDENCE_ONLY in statuses:
        status = EVIDENCE_ONLY
    else:
        status = HOLDS
    return ConditionVerdict("strongly_regular", status,
                            detail=f"moderate_growth={mg.status}, "
                                   f"strong_nonquasianalytic={snq.status}",
                            analytic=mg.analytic and snq.analytic)


CLASSIFIERS = {
    "log_convex": is_log_convex,
    "derivation_closed": is_derivation_closed,
    "quasianalytic": quasianalytic,
    "strong_nonquasianalytic": strong_nonquasianalytic,
    "moderate_growth": moderate_growth,
    "strongly_regular": strongly_regular,
}


def classify(M: WeightSequence, K: int = DEFAULT_PREFIX_K) -> dict[str, ConditionVerdict]:
    out = {}
    for name, fn in CLASSIFIERS.items():
        if name in ("log_convex", "derivation_closed", "moderate_growth"):
            if M.length is not None:
                out[name] = fn(M, min(K, M.length - 2) if name != "moderate_growth"
                               else min(K, M.length - 1))
            else:
                out[name] = fn(M, K)
        else:
            out[name] = fn(M)
    return out
