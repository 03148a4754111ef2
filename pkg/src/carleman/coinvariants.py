"""Coinvariant bases for products of symmetric groups acting in blocks.

For ``W = S_{m_1} x ... x S_{m_k}`` the polynomial ring is a free module
over the ``W``-invariants with basis any homogeneous basis ``h_1..h_|W|`` of
a graded complement of the ideal generated by positive-degree invariants.
Writing ``A_ij = h_j(w_i . v)``, every polynomial ``f`` satisfies
``f(w_i . v) = sum_j A_ij f_j(v)`` with invariant ``f_j``, so Cramer's rule
gives ``Delta f_j = sum_i adj(A)_ji f(w_i . v)`` with ``Delta = det A``.

Two complements are provided: the Artin monomials (exponent of the j-th
variable of a block below j) and the harmonic polynomials (derivatives of
the product of block Vandermonde determinants).  Only the latter is stable
under ``W``, which is what the subgroup decomposition needs.

The full ``|W| x |W|`` adjugate is only practical for tiny groups, so the
default decomposition applies Cramer's rule along the tower
``S_1 < S_2 < ... < S_m`` of each block: the ``S_{j-1}``-invariants are free
over the ``S_j``-invariants with basis ``1, x_j, ..., x_j^(j-1)``, and the
coefficients come from a ``j x j`` Vandermonde system over the cosets.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (DeltaDivisionFailed, NotASubgroup, NotDivisible, NotInvariant,
                     ParameterOutOfRange, SizeBoundExceeded)
from .invariant_theory import FiniteMatrixGroup, _monomial_action, reynolds
from .linalg import SpanTracker, bareiss_adjugate, bareiss_determinant, mat_inverse, rational_determinant
from .polynomials import Exponent, Polynomial, divide_exact, grlex_key, partial_derivative
from .symmetric_core import is_block_symmetric

DEFAULT_SIZE_CAP = 720
ARTIN = "artin"
HARMONIC = "harmonic"
DIRECT_BLOCK_LIMIT = 3      # blocks up to this size get Delta from a symbolic determinant


def _starts(sizes: Sequence[int]) -> list[int]:
    return [sum(sizes[:i]) for i in range(len(sizes))]


def block_permutations(sizes: Sequence[int]) -> list[tuple[int, ...]]:
    """Elements of ``W`` as global permutation words, lexicographic order."""
    per_block = []
    for start, m in zip(_starts(sizes), sizes):
        per_block.append(list(itertools.permutations(range(start, start + m))))
    return [sum(choice, ()) for choice in itertools.product(*per_block)]


def permutation_sign(w: Sequence[int]) -> int:
    seen, sign = set(), 1
    for i in range(len(w)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = w[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def act(h: Polynomial, w: Sequence[int]) -> Polynomial:
    """``h(w . v)`` with ``(w . v)_i = v_{w[i]}``."""
    return _monomial_action(h, tuple((j, Fraction(1)) for j in w))


def _swap_word(n: int, i: int, j: int) -> tuple[int, ...]:
    w = list(range(n))
    w[i], w[j] = j, i
    return tuple(w)


def _block_exponents(m: int) -> list[tuple[int, ...]]:
    exps = list(itertools.product(*[range(j) for j in range(1, m + 1)]))
    return sorted(exps, key=lambda e: (sum(e), tuple(-k for k in e)))


def artin_exponents(sizes: Sequence[int]) -> list[Exponent]:
    """Exponents of the tensor Artin monomials, by degree then reverse grlex."""
    exps = [sum(c, ()) for c in itertools.product(*[_block_exponents(m) for m in sizes])]
    return sorted(exps, key=lambda e: (sum(e), tuple(-k for k in e)))


def vandermonde_product(sizes: Sequence[int]) -> Polynomial:
    """``prod_blocks prod_{j<k} (x_j - x_k)``."""
    N = sum(sizes)
    out = Polynomial.constant(N, 1)
    for start, m in zip(_starts(sizes), sizes):
        for j in range(start, start + m):
            for k in range(j + 1, start + m):
                out = out * (Polynomial.variable(N, j) - Polynomial.variable(N, k))
    return out


def _apply_derivative(f: Polynomial, alpha: Exponent) -> Polynomial:
    for i, k in enumerate(alpha):
        for _ in range(k):
            f = partial_derivative(f, i)
    return f


# -- tower Cramer ----------------------------------------------------------
@functools.lru_cache(maxsize=None)
def _vandermonde_data(N: int, idx: tuple[int, ...]):
    """``(det, adj)`` of ``[y_p^a]`` with ``y_p = x_{idx[p]}``; rows ``p``, columns ``a``."""
    V = [[Polynomial.variable(N, i) ** a for a in range(len(idx))] for i in idx]
    return bareiss_adjugate(V)


def _tower_block(f: Polynomial, idx: tuple[int, ...]) -> dict[tuple[int, ...], Polynomial]:
    """Artin exponent on ``idx`` -> coefficient symmetric in ``idx`` (zeros omitted)."""
    m = len(idx)
    if m == 1:
        return {} if f.is_zero() else {(0,): f}
    N = f.nvars
    det, adj = _vandermonde_data(N, idx)
    last = idx[-1]
    swaps = [_swap_word(N, i, last) for i in idx]
    out = {}
    for e, g in _tower_block(f, idx[:-1]).items():
        # g is symmetric in idx[:-1]; g(tau_p v) = sum_a y_p^a G_a over coset representatives
        values = [act(g, w) for w in swaps]
        for a in range(m):
            num = Polynomial.zero(N)
            for p, b in enumerate(values):
                if not adj[a][p].is_zero():
                    num = num + adj[a][p] * b
            if num.is_zero():
                continue
            try:
                out[e + (a,)] = divide_exact(num, det)
            except NotDivisible as exc:
                raise DeltaDivisionFailed(
                    "Vandermonde determinant does not divide a Cramer numerator") from exc
    return out


def artin_coefficients(f: Polynomial, sizes: Sequence[int]) -> dict[Exponent, Polynomial]:
    """``f = sum_e x^e F_e`` over Artin exponents with ``W``-invariant ``F_e`` (zeros omitted)."""
    parts: dict[Exponent, Polynomial] = {(): f}
    for start, m in zip(_starts(sizes), sizes):
        idx = tuple(range(start, start + m))
        nxt = {}
        for e, g in parts.items():
            for a, c in _tower_block(g, idx).items():
                nxt[e + a] = c
        parts = nxt
    return parts


# -- bases -----------------------------------------------------------------
@dataclass(frozen=True)
class CoinvariantBasis:
    """Basis ``h_1..h_|W|``, the element order ``w_1..w_|W|`` and ``Delta``.

    For a non-Artin basis ``change`` holds the coordinates ``T`` with
    ``h_k = sum_a x^a T_ak`` (``T_ak`` invariant) and, per degree, the
    inverse of the constant diagonal block of ``T``.
    """

    block_sizes: tuple[int, ...]
    basis: tuple[Polynomial, ...]
    element_order: tuple[tuple[int, ...], ...]
    delta_factors: tuple[tuple[Polynomial, int], ...]   # Delta = delta_scale * prod base^power
    delta_scale: Fraction
    kind: str = ARTIN
    change: tuple = ()

    @functools.cached_property
    def delta(self) -> Polynomial:
        out = Polynomial.constant(self.nvars, self.delta_scale)
        for base, power in self.delta_factors:
            out = out * base ** power
        return out

    @functools.cached_property
    def cramer_data(self) -> tuple[Polynomial, list[list[Polynomial]]]:
        """Fraction-free ``(det, adj)`` of the full matrix, built on first use."""
        return bareiss_adjugate(self.matrix())

    @property
    def size(self) -> int:
        return len(self.basis)

    @property
    def nvars(self) -> int:
        return sum(self.block_sizes)

    def matrix(self) -> list[list[Polynomial]]:
        return [[act(h, w) for h in self.basis] for w in self.element_order]

    def is_w_invariant(self, f: Polynomial) -> bool:
        return is_block_symmetric(f, self.block_sizes)


def _check_sizes(sizes: Sequence[int], cap: int) -> tuple[int, ...]:
    sizes = tuple(int(m) for m in sizes)
    if not sizes or any(m < 1 for m in sizes):
        raise ParameterOutOfRange("block sizes must be positive")
    order = math.prod(math.factorial(m) for m in sizes)
    if order > cap:
        raise SizeBoundExceeded(f"|W| = {order} exceeds the cap {cap}")
    return sizes


def _block_words(N: int, idx: tuple[int, ...]) -> list[tuple[int, ...]]:
    words = []
    for perm in itertools.permutations(idx):
        w = list(range(N))
        for p, img in zip(idx, perm):
            w[p] = img
        words.append(tuple(w))
    return words


def _block_monomials(N: int, idx: tuple[int, ...]) -> list[Polynomial]:
    out = []
    for e in _block_exponents(len(idx)):
        full = [0] * N
        for p, k in zip(idx, e):
            full[p] = k
        out.append(Polynomial.monomial(tuple(full)))
    return out


@functools.lru_cache(maxsize=None)
def _block_delta(N: int, idx: tuple[int, ...]) -> tuple[Fraction, Polynomial, int]:
    """``det(h_j(w_i . v))`` for the Artin monomials of one block on variables ``idx``.

    Small blocks use a symbolic fraction-free determinant.  For larger ones
    the determinant is ``c prod_{j<k} (x_j - x_k)^(m!/2)``; the constant is
    read off an exact numeric determinant and confirmed at a second point.
    """
    m = len(idx)
    if m == 1:
        return Fraction(1), Polynomial.constant(N, 1), 1
    basis = _block_monomials(N, idx)
    words = _block_words(N, idx)
    if m <= DIRECT_BLOCK_LIMIT:
        return Fraction(1), bareiss_determinant([[act(h, w) for h in basis] for w in words]), 1
    van = Polynomial.constant(N, 1)
    for j, k in itertools.combinations(idx, 2):
        van = van * (Polynomial.variable(N, j) - Polynomial.variable(N, k))
    rng = random.Random(7919 * m + N)
    const = None
    for _ in range(2):
        point = [Fraction(rng.randint(-60, 60)) for _ in range(N)]
        base = van(*point)
        if base == 0:
            continue
        exact = rational_determinant([[h(*[point[i] for i in w]) for h in basis] for w in words])
        c = exact / base ** (math.factorial(m) // 2)
        if const not in (None, c):
            raise ArithmeticError("Delta is not a multiple of the Vandermonde power")
        const = c
    if const is None:
        raise ArithmeticError("no admissible evaluation point for Delta")
    return const, van, math.factorial(m) // 2


def _kronecker_column_sign(sizes: Sequence[int]) -> int:
    """Sign of the permutation taking Kronecker column order to the sorted Artin order."""
    kron = [sum(c, ()) for c in itertools.product(*[_block_exponents(m) for m in sizes])]
    pos = {e: i for i, e in enumerate(kron)}
    return permutation_sign([pos[e] for e in artin_exponents(sizes)])


def _artin_delta(sizes: tuple[int, ...]) -> tuple[tuple[tuple[Polynomial, int], ...], Fraction]:
    """The matrix is a Kronecker product up to columns: ``Delta = +-prod_b Delta_b^(|W|/|W_b|)``.

    Returned factored as ``((base, power), ...), scale``.
    """
    N = sum(sizes)
    total = math.prod(math.factorial(m) for m in sizes)
    scale = Fraction(_kronecker_column_sign(sizes))
    factors = []
    for start, m in zip(_starts(sizes), sizes):
        c, base, power = _block_delta(N, tuple(range(start, start + m)))
        t = total // math.factorial(m)
        scale *= c ** t
        if not base.is_constant():
            factors.append((base, power * t))
        else:
            scale *= base.constant_value() ** (power * t)
    return tuple(factors), scale


def artin_basis(block_sizes: Sequence[int], cap: int = DEFAULT_SIZE_CAP) -> CoinvariantBasis:
    """Tensor Artin monomials with their ``Delta``."""
    sizes = _check_sizes(block_sizes, cap)
    basis = tuple(Polynomial.monomial(e) for e in artin_exponents(sizes))
    factors, scale = _artin_delta(sizes)
    return CoinvariantBasis(sizes, basis, tuple(block_permutations(sizes)), factors, scale, ARTIN)


def harmonic_basis(block_sizes: Sequence[int], cap: int = DEFAULT_SIZE_CAP) -> CoinvariantBasis:
    """Derivatives of the block Vandermonde product, indexed by Artin exponents.

    The span is ``W``-stable and complementary to the invariant ideal; the
    constant comes first.  In Artin coordinates the change of basis is block
    triangular by degree with constant diagonal blocks, so ``Delta`` is the
    Artin one times their determinants.
    """
    sizes = _check_sizes(block_sizes, cap)
    artin = artin_exponents(sizes)
    V = vandermonde_product(sizes)
    polys = [_apply_derivative(V, a).monic() for a in artin]
    polys.sort(key=lambda h: (h.degree, tuple(-k for k in h.leading_term()[0])))
    table = tuple(artin_coefficients(h, sizes) for h in polys)
    blocks = []
    det_t = Fraction(1)
    for d in sorted({h.degree for h in polys}, reverse=True):
        rows = [a for a in artin if sum(a) == d]
        cols = [k for k, h in enumerate(polys) if h.degree == d]
        C = [[table[k][a].constant_value() if a in table[k] else Fraction(0) for k in cols]
             for a in rows]
        det_t *= rational_determinant(C)
        blocks.append((d, tuple(rows), tuple(cols), tuple(map(tuple, mat_inverse(C)))))
    factors, scale = _artin_delta(sizes)
    return CoinvariantBasis(sizes, tuple(polys), tuple(block_permutations(sizes)), factors,
                            scale * det_t, HARMONIC, (tuple(blocks), table))


def full_adjugate(B: CoinvariantBasis) -> tuple[Polynomial, list[list[Polynomial]]]:
    """Fraction-free ``(det, adj)`` of the whole ``|W| x |W|`` matrix (small ``W`` only)."""
    return B.cramer_data


# -- Delta ----------------------------------------------------------------
@dataclass(frozen=True)
class DeltaReport:
    exponents: tuple[tuple[tuple[int, int], int], ...]   # ((j, k), exponent), 0-based vars
    cofactor: Polynomial
    passed: bool

    def to_json(self) -> dict:
        return {"forms": [{"form": f"x{j + 1} - x{k + 1}", "exponent": e}
                          for (j, k), e in self.exponents],
                "cofactor": str(self.cofactor), "status": "PASS" if self.passed else "FAIL"}


def linear_forms(sizes: Sequence[int]) -> list[tuple[int, int]]:
    out = []
    for start, m in zip(_starts(sizes), sizes):
        out.extend(itertools.combinations(range(start, start + m), 2))
    return out


def _strip_forms(f: Polynomial, forms) -> tuple[list[int], Polynomial]:
    exps = []
    for form in forms:
        e = 0
        while not f.is_constant():
            try:
                f = divide_exact(f, form)
            except NotDivisible:
                break
            e += 1
        exps.append(e)
    return exps, f


def delta_divisibility_check(B: CoinvariantBasis) -> DeltaReport:
    """Strip every ``x_j - x_k`` (same block) from ``Delta`` as often as it divides.

    ``Delta`` is kept as a product of powers; multiplicities of a linear form
    add over the factors and the cofactor is the product of the factor
    cofactors, so the factors are processed separately.
    """
    N = B.nvars
    pairs = linear_forms(B.block_sizes)
    forms = [Polynomial.variable(N, j) - Polynomial.variable(N, k) for j, k in pairs]
    total = [0] * len(pairs)
    rest = Polynomial.constant(N, B.delta_scale)
    for base, power in B.delta_factors:
        exps, cof = _strip_forms(base, forms)
        total = [t + e * power for t, e in zip(total, exps)]
        rest = rest * cof ** power
    exps = tuple(zip(pairs, total))
    passed = not rest.is_zero() and rest.is_constant() and all(e > 0 for _, e in exps)
    return DeltaReport(exps, rest, passed)


def permutation_order(w: Sequence[int]) -> int:
    out, seen = 1, set()
    for i in range(len(w)):
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = w[j]
            length += 1
        if length:
            out = math.lcm(out, length)
    return out


def regular_sign(w: Sequence[int], group_order: int) -> int:
    """Sign of ``w`` translating the group: ``|W|/ord(w)`` cycles of length ``ord(w)``."""
    k = permutation_order(w)
    return -1 if (k - 1) * (group_order // k) % 2 else 1


def delta_sign_character(B: CoinvariantBasis) -> bool:
    """``Delta(w . v) = +-Delta(v)`` with the sign of ``w`` permuting the rows.

    Substituting ``w . v`` permutes the rows ``w_i`` of the basis matrix by
    translation, so the sign is that of the regular representation.  It
    agrees with ``sign(w)`` for ``S_2`` and ``S_3`` but not in general
    (``Delta`` is invariant for ``S_2 x S_2``).
    """
    order = len(B.element_order)
    return all(act(B.delta, w) == B.delta.scale(regular_sign(w, order))
               for w in B.element_order)


# -- decompositions -------------------------------------------------------
def _from_artin(B: CoinvariantBasis, coeffs: dict[Exponent, Polynomial]) -> list[Polynomial]:
    """Solve ``z_a = sum_k T_ak y_k`` degree by degree, top degree first."""
    blocks, table = B.change
    N = B.nvars
    y: list[Polynomial | None] = [None] * B.size
    for d, rows, cols, cinv in blocks:
        rhs = []
        for a in rows:
            r = coeffs.get(a, Polynomial.zero(N))
            for k, col in enumerate(table):
                if y[k] is not None and not y[k].is_zero() and a in col:
                    r = r - col[a] * y[k]
            rhs.append(r)
        for i, k in enumerate(cols):
            acc = Polynomial.zero(N)
            for c, r in zip(cinv[i], rhs):
                if c:
                    acc = acc + r.scale(c)
            y[k] = acc
    return y


def cramer_decompose(f: Polynomial, B: CoinvariantBasis, method: str = "tower") -> list[Polynomial]:
    """``W``-invariant ``f_j`` with ``f = sum_j h_j f_j``.

    ``method="tower"`` runs Cramer's rule along the symmetric-group tower of
    each block; ``method="full"`` multiplies by the adjugate of the whole
    matrix and divides by ``Delta`` (tiny groups only).  The decomposition is
    unique, so both give the same ``f_j``.
    """
    if f.nvars != B.nvars:
        raise ParameterOutOfRange(f"expected {B.nvars} variables, got {f.nvars}")
    if method == "full":
        return _cramer_full(f, B)
    if method != "tower":
        raise ParameterOutOfRange(f"unknown method {method!r}")
    coeffs = artin_coefficients(f, B.block_sizes)
    if B.kind == ARTIN:
        zero = Polynomial.zero(f.nvars)
        return [coeffs.get(e, zero) for e in artin_exponents(B.block_sizes)]
    return _from_artin(B, coeffs)


def _cramer_full(f: Polynomial, B: CoinvariantBasis) -> list[Polynomial]:
    det, adj = full_adjugate(B)
    values = [act(f, w) for w in B.element_order]
    out = []
    for j in range(B.size):
        num = Polynomial.zero(f.nvars)
        for i, b in enumerate(values):
            if not b.is_zero() and not adj[j][i].is_zero():
                num = num + adj[j][i] * b
        try:
            out.append(divide_exact(num, det))
        except NotDivisible as exc:
            raise DeltaDivisionFailed(f"Delta does not divide the numerator of f_{j + 1}") from exc
    return out


def recombine(B: CoinvariantBasis, coeffs: Sequence[Polynomial]) -> Polynomial:
    total = Polynomial.zero(B.nvars)
    for h, c in zip(B.basis, coeffs):
        total = total + h * c
    return total


def _is_block_permutation(g, sizes: Sequence[int]) -> bool:
    n = sum(sizes)
    if len(g) != n:
        return False
    block_of = [b for b, m in enumerate(sizes) for _ in range(m)]
    for i, row in enumerate(g):
        nz = [(j, c) for j, c in enumerate(row) if c]
        if len(nz) != 1 or nz[0][1] != 1 or block_of[nz[0][0]] != block_of[i]:
            return False
    return True


def check_subgroup(B: CoinvariantBasis, G: FiniteMatrixGroup):
    if G.n != B.nvars or not all(_is_block_permutation(g, B.block_sizes) for g in G.elements):
        raise NotASubgroup("group elements must be permutation matrices preserving the blocks")


def _stable_basis(B: CoinvariantBasis) -> CoinvariantBasis:
    return B if B.kind == HARMONIC else harmonic_basis(B.block_sizes)


def subgroup_basis(B: CoinvariantBasis, G: FiniteMatrixGroup) -> list[Polynomial]:
    """Basis of ``H^G``: Reynolds images of a ``W``-stable complement, reduced.

    An Artin basis is replaced by the harmonic basis first, since only a
    ``W``-stable complement is mapped into itself by the projection.
    """
    check_subgroup(B, G)
    H = _stable_basis(B)
    span = SpanTracker(grlex_key)
    out = []
    for h in H.basis:
        r = reynolds(h, G)
        if not r.is_zero() and span.add(r.terms, len(out)):
            out.append(r.monic())
    return out


def invariant_decompose(f: Polynomial, B: CoinvariantBasis,
                        G: FiniteMatrixGroup) -> list[tuple[Polynomial, Polynomial]]:
    """Pairs ``(k_l, F_l)`` with ``k_l`` spanning ``H^G``, ``F_l`` W-invariant, ``f = sum k_l F_l``."""
    check_subgroup(B, G)
    if not G.is_invariant(f):
        raise NotInvariant("polynomial is not invariant under the subgroup")
    H = _stable_basis(B)
    ks = subgroup_basis(H, G)
    span = SpanTracker(grlex_key)
    for idx, k in enumerate(ks):
        span.add(k.terms, idx)
    coeffs = cramer_decompose(f, H)
    acc = [Polynomial.zero(f.nvars) for _ in ks]
    for h, c in zip(H.basis, coeffs):
        if c.is_zero():
            continue
        r = reynolds(h, G)
        if r.is_zero():
            continue
        combo = span.express(r.terms)
        if combo is None:
            raise ArithmeticError("projected basis element left the invariant span")
        for idx, a in combo.items():
            acc[idx] = acc[idx] + c.scale(a)
    return list(zip(ks, acc))
