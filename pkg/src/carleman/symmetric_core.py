"""Symmetric polynomials: elementary and power-sum coordinates.

Rewriting uses the classical leading-monomial algorithm in elementary
coordinates (block by block for products of symmetric groups) and Newton's
identities to move between elementary and power-sum coordinates.

The divided-difference operators ``A_j`` are realized by exact integration
in an auxiliary variable, which turns the formula for ``d F / d u_k`` in
power-sum coordinates into a checkable polynomial identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .errors import (IndexOutOfRange, InsufficientTable, NotBlockSymmetric, NotLogConvex,
                     NotSymmetric, ParameterOutOfRange)
from .invariant_theory import PowerProducts
from .polynomials import Exponent, Polynomial, compose, divide_exact, partial_derivative
from .weight_sequences import (FAILS, WeightSequence, interval_context, is_log_convex,
                               precision_bits)

ELEMENTARY = "elementary"
NEWTON = "newton"
BASIS_PREFIX = {ELEMENTARY: "s", NEWTON: "u"}


def _esym_vars(nvars: int, idx: Sequence[int], i: int) -> Polynomial:
    """``e_i`` in the variables ``idx`` of a ring with ``nvars`` variables (``e_0 = 1``)."""
    if i == 0:
        return Polynomial.constant(nvars, 1)
    # e_i(x_1..x_r) via the product prod (1 + x_j t), coefficient of t^i
    coeffs = [Polynomial.constant(nvars, 1)]
    for j in idx:
        x = Polynomial.variable(nvars, j)
        new = coeffs + [Polynomial.zero(nvars)]
        for d in range(len(coeffs), 0, -1):
            new[d] = new[d] + coeffs[d - 1] * x
        coeffs = new
    return coeffs[i] if i < len(coeffs) else Polynomial.zero(nvars)


def elementary_symmetric(n: int, i: int) -> Polynomial:
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"elementary symmetric index {i} outside 1..{n}")
    return _esym_vars(n, range(n), i)


def newton_power_sum(n: int, i: int) -> Polynomial:
    if i < 1 or n < 1:
        raise IndexOutOfRange(f"power sum index {i} must be >= 1")
    terms = {}
    for j in range(n):
        e = [0] * n
        e[j] = i
        terms[tuple(e)] = Fraction(1)
    return Polynomial(n, terms)


@dataclass(frozen=True)
class SymmetricCoordinates:
    n: int
    basis: str = ELEMENTARY

    def __post_init__(self):
        if self.n < 1:
            raise ParameterOutOfRange("need at least one variable")
        if self.basis not in BASIS_PREFIX:
            raise ParameterOutOfRange(f"unknown basis {self.basis!r}")

    @property
    def prefix(self) -> str:
        return BASIS_PREFIX[self.basis]

    def generators(self) -> list[Polynomial]:
        f = elementary_symmetric if self.basis == ELEMENTARY else newton_power_sum
        return [f(self.n, i) for i in range(1, self.n + 1)]


def _newton_in_elementary(n: int) -> list[Polynomial]:
    """``p_1..p_n`` as polynomials in ``s_1..s_n``."""
    s = Polynomial.gens(n)
    p: list[Polynomial] = []
    for k in range(1, n + 1):
        acc = s[k - 1].scale((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + (s[i - 1] * p[k - i - 1]).scale((-1) ** (i - 1))
        p.append(acc)
    return p


def _elementary_in_newton(n: int) -> list[Polynomial]:
    """``e_1..e_n`` as polynomials in ``u_1..u_n``."""
    u = Polynomial.gens(n)
    e: list[Polynomial] = [Polynomial.constant(n, 1)]
    for k in range(1, n + 1):
        acc = Polynomial.zero(n)
        for i in range(1, k + 1):
            acc = acc + (e[k - i] * u[i - 1]).scale((-1) ** (i - 1))
        e.append(acc.scale(Fraction(1, k)))
    return e[1:]


def change_basis(F: Polynomial, source: str, target: str) -> Polynomial:
    """Re-express ``F`` (in ``n`` symmetric coordinates) in the other coordinate system."""
    if source == target:
        raise ParameterOutOfRange("source and target bases coincide")
    n = F.nvars
    if source == NEWTON and target == ELEMENTARY:
        return compose(F, _newton_in_elementary(n))
    if source == ELEMENTARY and target == NEWTON:
        return compose(F, _elementary_in_newton(n))
    raise ParameterOutOfRange(f"unknown bases {source!r} -> {target!r}")


# -- block invariance and rewriting ---------------------------------------
def _block_starts(sizes: Sequence[int]) -> list[int]:
    out, s = [], 0
    for m in sizes:
        out.append(s)
        s += m
    return out


def _swap(f: Polynomial, i: int, j: int) -> Polynomial:
    terms = {}
    for e, c in f.terms.items():
        e = list(e)
        e[i], e[j] = e[j], e[i]
        terms[tuple(e)] = c
    return Polynomial(f.nvars, terms)


def is_block_symmetric(f: Polynomial, sizes: Sequence[int]) -> bool:
    if sum(sizes) != f.nvars:
        return False
    for start, m in zip(_block_starts(sizes), sizes):
        for j in range(start, start + m - 1):
            if _swap(f, j, j + 1) != f:
                return False
    return True


def block_generators(sizes: Sequence[int]) -> list[Polynomial]:
    """Elementary symmetric polynomials of each block, concatenated."""
    N = sum(sizes)
    out = []
    for start, m in zip(_block_starts(sizes), sizes):
        idx = range(start, start + m)
        out.extend(_esym_vars(N, idx, i) for i in range(1, m + 1))
    return out


def block_rewrite(f: Polynomial, sizes: Sequence[int]) -> Polynomial:
    """``F`` over the per-block elementary symmetric polynomials with ``F(theta) = f``."""
    sizes = list(sizes)
    if any(m < 1 for m in sizes):
        raise ParameterOutOfRange("block sizes must be positive")
    if sum(sizes) != f.nvars:
        raise NotBlockSymmetric(f"block sizes {sizes} do not add up to {f.nvars} variables")
    if not is_block_symmetric(f, sizes):
        raise NotBlockSymmetric("polynomial is not invariant under the block permutations")
    return _leading_monomial_rewrite(f, sizes)


def _leading_monomial_rewrite(f: Polynomial, sizes: list[int]) -> Polynomial:
    pp = PowerProducts(block_generators(sizes))
    starts = _block_starts(sizes)
    p = sum(sizes)
    out: dict[Exponent, Fraction] = {}
    rest = f
    while not rest.is_zero():
        lead, c = rest.leading_term()
        e: list[int] = []
        for start, m in zip(starts, sizes):
            a = lead[start:start + m] + (0,)
            e.extend(a[i] - a[i + 1] for i in range(m))
        if min(e) < 0:
            raise NotBlockSymmetric("leading exponent not sorted within a block")
        e = tuple(e)
        out[e] = out.get(e, 0) + c
        rest = rest - pp.product(e).scale(c)
    return Polynomial(p, out)


def rewrite_symmetric(f: Polynomial, coords: SymmetricCoordinates | str = ELEMENTARY) -> Polynomial:
    if isinstance(coords, str):
        coords = SymmetricCoordinates(f.nvars, coords)
    if coords.n != f.nvars:
        raise NotSymmetric(f"coordinates for {coords.n} variables, polynomial has {f.nvars}")
    if not is_block_symmetric(f, [f.nvars]):
        raise NotSymmetric("polynomial is not symmetric")
    F = _leading_monomial_rewrite(f, [f.nvars])
    if coords.basis == NEWTON:
        F = change_basis(F, ELEMENTARY, NEWTON)
    return F


# -- divided differences --------------------------------------------------
def bronshtein_A(j: int, h: Polynomial, offset: int = 0, size: int | None = None) -> Polynomial:
    """``int_0^1 ((d_j - d_{j+1}) h)(t P x + (1 - t) x) dt`` with ``P`` swapping ``j, j+1``.

    ``j`` is 1-based inside the block of ``size`` variables starting at
    ``offset`` (the whole ring by default).
    """
    n = h.nvars
    size = n - offset if size is None else size
    if offset < 0 or offset + size > n:
        raise IndexOutOfRange("block outside the variable range")
    if not 1 <= j <= size - 1:
        raise IndexOutOfRange(f"A_j needs 1 <= j <= {size - 1}, got {j}")
    a, b = offset + j - 1, offset + j
    g = partial_derivative(h, a) - partial_derivative(h, b)
    if g.is_zero():
        return g
    # substitute x_a -> x_a + t (x_b - x_a), x_b -> x_b + t (x_a - x_b); t is variable n
    N = n + 1
    xs = [Polynomial.variable(N, i) for i in range(n)]
    t = Polynomial.variable(N, n)
    subs = list(xs)
    subs[a] = xs[a] + t * (xs[b] - xs[a])
    subs[b] = xs[b] + t * (xs[a] - xs[b])
    path = compose(g, subs)
    out: dict[Exponent, Fraction] = {}
    for e, c in path.terms.items():
        key = e[:n]
        v = out.get(key, 0) + c / (e[n] + 1)
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Polynomial(n, out)


def divided_difference(j: int, h: Polynomial) -> Polynomial:
    """``(h - h o P_{j,j+1}) / (x_j - x_{j+1})``, 1-based ``j``."""
    n = h.nvars
    if not 1 <= j <= n - 1:
        raise IndexOutOfRange(f"need 1 <= j <= {n - 1}")
    num = h - _swap(h, j - 1, j)
    den = Polynomial.variable(n, j - 1) - Polynomial.variable(n, j)
    return divide_exact(num, den)


A1_LAST = "A1_last"     # A_1 (A_2 ( ... A_{n-1} g))
A1_FIRST = "A1_first"   # A_{n-1} ( ... A_1 g)


def _g_kn(f: Polynomial, k: int) -> Polynomial:
    n = f.nvars
    sigma = _esym_vars(n, range(n - 1), n - k)
    return (sigma * partial_derivative(f, n - 1)).scale(Fraction((-1) ** (k + 1), k))


def bronshtein_partial(f: Polynomial, k: int, order: str = A1_LAST, check: bool = True) -> Polynomial:
    """``(d F / d u_k) o nu`` computed as ``prod_j A_j`` applied to ``g_{kn}``."""
    n = f.nvars
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"k must lie in 1..{n}")
    if check and not is_block_symmetric(f, [n]):
        raise NotSymmetric("polynomial is not symmetric")
    h = _g_kn(f, k)
    js = range(n - 1, 0, -1) if order == A1_LAST else range(1, n)
    for j in js:
        h = bronshtein_A(j, h)
    return h


def bronshtein_oracle(f: Polynomial, k: int) -> Polynomial:
    """``d_{u_k} F`` composed with the power sums, where ``F o nu = f``."""
    n = f.nvars
    F = rewrite_symmetric(f, NEWTON)
    nu = [newton_power_sum(n, i) for i in range(1, n + 1)]
    return compose(partial_derivative(F, k - 1), nu)


@dataclass(frozen=True)
class BronshteinCheck:
    k: int
    value: Polynomial
    oracle: Polynomial
    order: str | None      # which product convention reproduced the oracle

    @property
    def passed(self) -> bool:
        return self.order is not None


def bronshtein_check(f: Polynomial, k: int) -> BronshteinCheck:
    """Compare both product orders with the symbolic oracle; record the one that agrees."""
    oracle = bronshtein_oracle(f, k)
    first = bronshtein_partial(f, k, A1_LAST)
    if first == oracle:
        return BronshteinCheck(k, first, oracle, A1_LAST)
    second = bronshtein_partial(f, k, A1_FIRST, check=False)
    if second == oracle:
        return BronshteinCheck(k, second, oracle, A1_FIRST)
    return BronshteinCheck(k, first, oracle, None)


# -- necessity series -----------------------------------------------------
@dataclass(frozen=True)
class NecessityRow:
    m: int
    truncated_sum: object       # Fraction (exact) or mpmath interval
    lower_bound: object
    ratio: float
    certified: bool
    method: str

    def to_json(self) -> dict:
        return {"m": self.m, "truncated_sum": _num_str(self.truncated_sum),
                "lower_bound": _num_str(self.lower_bound), "ratio": self.ratio,
                "certified": self.certified, "method": self.method}


@dataclass(frozen=True)
class NecessityReport:
    M: WeightSequence
    n: int
    m_max: int
    K: int
    rows: tuple[NecessityRow, ...]

    @property
    def all_certified(self) -> bool:
        return all(r.certified for r in self.rows)

    def to_json(self) -> dict:
        return {"sequence": self.M.spec(), "n": self.n, "m_max": self.m_max,
                "K_truncation": self.K, "rows": [r.to_json() for r in self.rows],
                "all_certified": self.all_certified}

    def to_text(self) -> str:
        head = ("m", "truncated_sum", "lower_bound", "ratio")
        body = [(str(r.m), _num_str(r.truncated_sum, 15), _num_str(r.lower_bound, 15),
                 f"{r.ratio:.6g}") for r in self.rows]
        widths = [max(len(x) for x in col) for col in zip(head, *body)]
        lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in [head, *body]]
        return "\n".join(lines)


def _num_str(x, digits: int = 30) -> str:
    if isinstance(x, Fraction):
        with mpmath.workprec(precision_bits()):
            return mpmath.nstr(mpmath.mpf(x.numerator) / x.denominator, digits)
    mid = x.mid if hasattr(x, "mid") else x
    return mpmath.nstr(mpmath.mpf(mid), digits)


def _fraction_ratio(a: Fraction, b: Fraction) -> float:
    return math.exp(math.log(a.numerator) - math.log(a.denominator)
                    - math.log(b.numerator) + math.log(b.denominator))


def necessity_report(M: WeightSequence, n: int, m_max: int, K: int = 40,
                     method: str = "auto") -> NecessityReport:
    """Rows ``m = 1..m_max`` of ``m! sum_{k<=K} c_k rho_k^(mn)`` against ``m! M_(mn) / 2^m``.

    ``rho_k = M_(kn+1)/M_(kn)`` and ``c_k = M_(kn) / (2^k rho_k^(kn))``.
    ``method="auto"`` uses rational arithmetic when every ``M_k`` is rational
    and outward-rounded intervals otherwise; ``"interval"`` forces the latter.
    """
    if method not in ("auto", "interval"):
        raise ParameterOutOfRange(f"unknown method {method!r}")
    if n < 3:
        raise ParameterOutOfRange("the series example needs n >= 3")
    if m_max < 1 or K < 0:
        raise ParameterOutOfRange("m_max must be >= 1 and K >= 0")
    top = max(K * n + 1, m_max * n)
    span = top if M.length is None else min(top, M.length - 1)
    if span < top:
        raise InsufficientTable(f"need M_k up to k={top}")
    lc = is_log_convex(M, max(top, 2))
    if lc.status == FAILS:
        raise NotLogConvex(f"sequence is not log-convex ({lc.detail})")
    exact = method == "auto" and M.is_exact and all(isinstance(M.value(i), Fraction) for i in range(top + 1))
    rows = []
    if exact:
        vals = [M.value(i) for i in range(top + 1)]
        rho = [vals[k * n + 1] / vals[k * n] for k in range(K + 1)]
        c = [vals[k * n] / (2 ** k * rho[k] ** (k * n)) for k in range(K + 1)]
        for m in range(1, m_max + 1):
            fm = math.factorial(m)
            total = fm * sum((c[k] * rho[k] ** (m * n) for k in range(K + 1)), Fraction(0))
            bound = Fraction(fm) * vals[m * n] / 2 ** m
            rows.append(NecessityRow(m, total, bound, _fraction_ratio(total, bound),
                                     total >= bound, "exact"))
    else:
        ctx = interval_context()
        logs = [M.log_interval(i, ctx) for i in range(top + 1)]
        log2 = ctx.log(2)
        lrho = [logs[k * n + 1] - logs[k * n] for k in range(K + 1)]
        lc_ = [logs[k * n] - k * log2 - k * n * lrho[k] for k in range(K + 1)]
        for m in range(1, m_max + 1):
            lfm = ctx.log(math.factorial(m))
            terms = [ctx.exp(lc_[k] + m * n * lrho[k] + lfm) for k in range(K + 1)]
            total = sum(terms[1:], terms[0])
            bound = ctx.exp(lfm + logs[m * n] - m * log2)
            decided = total >= bound
            if decided is None and m <= K:
                # the k = m term equals the bound identically; the rest is a positive sum
                rest = [t for k, t in enumerate(terms) if k != m]
                decided = (not rest) or bool(sum(rest[1:], rest[0]).a >= 0)
                method = "interval+dominant_term"
            else:
                method = "interval"
            ratio = float(ctx.exp(ctx.log(total) - ctx.log(bound)).mid)
            rows.append(NecessityRow(m, total, bound, ratio, bool(decided), method))
    return NecessityReport(M, n, m_max, K, tuple(rows))
