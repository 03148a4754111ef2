"""Finite matrix groups acting on polynomials.

Groups act on polynomials by ``(g.f)(v) = f(g v)``.  Averaging this action
gives the Reynolds projector onto invariants, from which homogeneous
generators of the invariant ring are extracted degree by degree up to the
group order.  Invariants are rewritten as polynomials in those generators
by exact graded linear algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (DimensionMismatch, NotInAlgebra, NotInvariant, OrderBoundExceeded,
                     ParameterOutOfRange, SingularGenerator)
from .linalg import SpanTracker, bareiss_determinant, rational_determinant
from .polynomials import (Exponent, Polynomial, grlex_key, homogeneous_components,
                          linear_substitution, monomials_of_degree, partial_derivative)

Matrix = tuple[tuple[Fraction, ...], ...]

DEFAULT_MAX_ORDER = 1024


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    """Normalize nested sequences (ints, Fractions, "p/q" strings) into a rational matrix."""
    out = tuple(tuple(Fraction(str(x)) if isinstance(x, str) else Fraction(x) for x in r)
                for r in rows)
    if not out or any(len(r) != len(out) for r in out):
        raise DimensionMismatch("matrices must be square and non-empty")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = list(zip(*b))
    return tuple(tuple(sum((a[i][k] * cols[j][k] for k in range(n) if a[i][k]), Fraction(0))
                       for j in range(n)) for i in range(n))


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix ``P`` with ``(P v)_i = v_{perm[i]}`` (0-based)."""
    n = len(perm)
    return tuple(tuple(Fraction(int(perm[i] == j)) for j in range(n)) for i in range(n))


def _monomial_data(g: Matrix):
    """``(source index, scalar)`` per row if ``g`` is a monomial matrix, else None."""
    out = []
    for row in g:
        nz = [(j, c) for j, c in enumerate(row) if c]
        if len(nz) != 1:
            return None
        out.append(nz[0])
    return tuple(out)


@dataclass(frozen=True)
class FiniteMatrixGroup:
    """Explicit element list in closure order (identity first)."""

    n: int
    elements: tuple[Matrix, ...]
    generators: tuple[Matrix, ...] = ()
    _monomial: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_monomial", tuple(_monomial_data(g) for g in self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def act(self, f: Polynomial, index: int) -> Polynomial:
        """``f(g v)`` for the element at ``index``."""
        data = self._monomial[index]
        if data is None:
            return linear_substitution(f, self.elements[index])
        return _monomial_action(f, data)

    def check_nvars(self, f: Polynomial):
        if f.nvars != self.n:
            raise DimensionMismatch(f"polynomial has {f.nvars} variables, group acts on {self.n}")

    def is_invariant(self, f: Polynomial) -> bool:
        self.check_nvars(f)
        indices = self._generator_indices()
        return all(self.act(f, i) == f for i in indices)

    def _generator_indices(self) -> list[int]:
        if self.generators:
            pos = {g: i for i, g in enumerate(self.elements)}
            return [pos[g] for g in self.generators]
        return list(range(self.order))

    def to_json(self) -> list:
        return [[[str(x) for x in row] for row in g] for g in self.elements]


def _monomial_action(f: Polynomial, data) -> Polynomial:
    n = f.nvars
    out: dict[Exponent, Fraction] = {}
    for e, c in f.terms.items():
        new = [0] * n
        coeff = c
        for i, k in enumerate(e):
            if k:
                j, s = data[i]
                new[j] += k
                if s != 1:
                    coeff *= s ** k
        key = tuple(new)
        v = out.get(key, 0) + coeff
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return Polynomial(n, out)


def close_group(gens: Sequence, max_order: int = DEFAULT_MAX_ORDER) -> FiniteMatrixGroup:
    """Enumerate the group generated by ``gens`` (breadth first from the identity)."""
    if not gens:
        raise ValueError("need at least one generator")
    mats = [as_matrix(g) for g in gens]
    n = len(mats[0])
    if any(len(g) != n for g in mats):
        raise DimensionMismatch("generators have different sizes")
    for g in mats:
        if rational_determinant(g) == 0:
            raise SingularGenerator("generator is not invertible")
    e = identity(n)
    seen = {e: 0}
    elements = [e]
    queue = 0
    while queue < len(elements):
        h = elements[queue]
        queue += 1
        for g in mats:
            x = matmul(h, g)
            if x not in seen:
                if len(elements) >= max_order:
                    raise OrderBoundExceeded(f"group order exceeds {max_order}")
                seen[x] = len(elements)
                elements.append(x)
    return FiniteMatrixGroup(n, tuple(elements), tuple(dict.fromkeys(mats)))


# -- named groups --------------------------------------------------------
def symmetric_group(n: int) -> FiniteMatrixGroup:
    return block_symmetric_group([n])


def block_symmetric_group(sizes: Sequence[int]) -> FiniteMatrixGroup:
    """``S_{m_1} x ... x S_{m_k}`` permuting coordinates inside consecutive blocks."""
    if not sizes or any(m < 1 for m in sizes):
        raise ParameterOutOfRange("block sizes must be positive")
    total = sum(sizes)
    gens = []
    start = 0
    for m in sizes:
        for j in range(start, start + m - 1):
            p = list(range(total))
            p[j], p[j + 1] = p[j + 1], p[j]
            gens.append(permutation_matrix(p))
        start += m
    if not gens:
        gens = [identity(total)]
    return close_group(gens, max_order=math.prod(math.factorial(m) for m in sizes))


def sign_group(n: int) -> FiniteMatrixGroup:
    """``{I, -I}`` on ``R^n``."""
    return close_group([tuple(tuple(Fraction(-int(i == j)) for j in range(n)) for i in range(n))])


def rotation_group(k: int) -> FiniteMatrixGroup:
    """Cyclic rotations of the plane of order ``k`` (rational only for k in 1, 2, 4)."""
    table = {1: ((1, 0), (0, 1)), 2: ((-1, 0), (0, -1)), 4: ((0, -1), (1, 0))}
    if k not in table:
        raise ParameterOutOfRange("rational plane rotation groups have order 1, 2 or 4")
    return close_group([table[k]])


def trivial_group(n: int) -> FiniteMatrixGroup:
    return close_group([identity(n)])


# -- Reynolds ------------------------------------------------------------
def reynolds(f: Polynomial, G: FiniteMatrixGroup) -> Polynomial:
    """``(1/m) sum_g f(g v)``."""
    G.check_nvars(f)
    total: dict[Exponent, Fraction] = {}
    for i in range(G.order):
        for e, c in G.act(f, i).terms.items():
            v = total.get(e, 0) + c
            if v:
                total[e] = v
            else:
                total.pop(e, None)
    m = G.order
    return Polynomial(f.nvars, {e: c / m for e, c in total.items()})


# -- generators ----------------------------------------------------------
@dataclass(frozen=True)
class GeneratorSystem:
    generators: tuple[Polynomial, ...]
    group: FiniteMatrixGroup

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(g.degree for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def power_products(self) -> "PowerProducts":
        return PowerProducts(self.generators)


class PowerProducts:
    """Memoized ``sigma^e`` together with enumeration by weighted degree."""

    def __init__(self, gens: Sequence[Polynomial]):
        self.gens = tuple(gens)
        self.degs = tuple(g.degree for g in gens)
        nv = gens[0].nvars if gens else 0
        self.cache: dict[Exponent, Polynomial] = {(0,) * len(gens): Polynomial.constant(nv, 1)}

    def product(self, e: Exponent) -> Polynomial:
        got = self.cache.get(e)
        if got is None:
            i = max(j for j, k in enumerate(e) if k)
            prev = e[:i] + (e[i] - 1,) + e[i + 1:]
            got = self.product(prev) * self.gens[i]
            self.cache[e] = got
        return got

    def exponents(self, d: int) -> list[Exponent]:
        """Exponent vectors of weighted degree ``d``, graded-lex ascending."""
        out = []

        def rec(i, left, acc):
            if i == len(self.degs):
                if left == 0:
                    out.append(tuple(acc))
                return
            for k in range(left // self.degs[i] + 1):
                acc.append(k)
                rec(i + 1, left - k * self.degs[i], acc)
                acc.pop()

        if self.degs and min(self.degs) > 0:
            rec(0, d, [])
        elif d == 0:
            out.append((0,) * len(self.degs))
        return sorted(out, key=grlex_key)


def _candidate_key(e: Exponent):
    # Within a degree, symmetrize "spread out" monomials first: ascending
    # partition type (so x1*x2 precedes x1^2), then descending graded-lex.
    return (tuple(sorted(e, reverse=True)), tuple(-k for k in e))


def _jacobian_nonzero(gens: Sequence[Polynomial]) -> bool:
    n = gens[0].nvars
    jac = [[partial_derivative(g, i) for i in range(n)] for g in gens]
    return not bareiss_determinant(jac).is_zero()


def invariant_generators(G: FiniteMatrixGroup) -> GeneratorSystem:
    """Homogeneous generators of the invariant ring, greedy by degree.

    Reynolds images of the monomials of each degree ``d <= |G|`` are kept
    when they leave the span of products of earlier generators.  The scan
    stops early once ``n`` algebraically independent generators with degree
    product ``|G|`` are found, since those already generate.
    """
    n, m = G.n, G.order
    kept: list[Polynomial] = []
    for d in range(1, m + 1):
        pp = PowerProducts(kept)
        span = SpanTracker(grlex_key)
        for e in (pp.exponents(d) if kept else []):
            span.add(pp.product(e).terms, ("prod", e))
        for mono in sorted(monomials_of_degree(n, d), key=_candidate_key):
            r = reynolds(Polynomial.monomial(mono), G)
            if r.is_zero():
                continue
            if span.add(r.terms, ("new", mono)):
                kept.append(r.monic())
        if (len(kept) == n and math.prod(g.degree for g in kept) == m
                and _jacobian_nonzero(kept)):
            break
    return GeneratorSystem(tuple(kept), G)


def rewrite_invariant(f: Polynomial, S: GeneratorSystem,
                      products: PowerProducts | None = None,
                      check: bool = True) -> Polynomial:
    """``F`` in ``len(S)`` variables with ``F(sigma) = f``."""
    G = S.group
    G.check_nvars(f)
    if check and not G.is_invariant(f):
        raise NotInvariant("polynomial is not invariant under the group")
    pp = products or PowerProducts(S.generators)
    p = len(S.generators)
    out: dict[Exponent, Fraction] = {}
    for d, comp in homogeneous_components(f):
        if d == 0:
            out[(0,) * p] = comp.constant_value()
            continue
        span = SpanTracker(grlex_key)
        for e in pp.exponents(d):
            span.add(pp.product(e).terms, e)
        coeffs = span.express(comp.terms)
        if coeffs is None:
            raise NotInAlgebra(f"degree {d} component is not generated")
        out.update(coeffs)
    return Polynomial(p, out)


# -- Weyl embedding ------------------------------------------------------
@dataclass(frozen=True)
class WeylEmbedding:
    """``L(v) = (g v)_{g in G}`` into ``R^(mn)`` and the averaging lift ``J``."""

    group: FiniteMatrixGroup

    @property
    def dim(self) -> int:
        return self.group.order * self.group.n

    @property
    def matrix(self) -> list[list[Fraction]]:
        """The ``mn x n`` matrix of ``L``: the group elements stacked in closure order."""
        return [list(row) for g in self.group.elements for row in g]

    def lift(self, f: Polynomial) -> Polynomial:
        """``J(f)(h) = (1/m) sum_g f(h(g))`` with ``h(g)`` the block of ``g``."""
        G = self.group
        G.check_nvars(f)
        N = self.dim
        total = Polynomial.zero(N)
        for b in range(G.order):
            total = total + f.extend(N, offset=b * G.n)
        return total.scale(Fraction(1, G.order))

    def pullback(self, F: Polynomial) -> Polynomial:
        """``F o L`` as a polynomial on ``V``."""
        if F.nvars != self.dim:
            raise DimensionMismatch(f"expected {self.dim} variables, got {F.nvars}")
        n = self.group.n
        coords = [Polynomial(n, {tuple(int(c == j) for c in range(n)): a
                                 for j, a in enumerate(row) if a})
                  for row in self.matrix]
        return F.compose(coords)

    def block_permutation_invariant(self, F: Polynomial) -> bool:
        """Invariance under the symmetric group permuting the ``m`` blocks."""
        m, n = self.group.order, self.group.n
        for b in range(m - 1):
            perm = list(range(m * n))
            for i in range(n):
                perm[b * n + i], perm[(b + 1) * n + i] = perm[(b + 1) * n + i], perm[b * n + i]
            data = tuple((perm[i], Fraction(1)) for i in range(m * n))
            if _monomial_action(F, data) != F:
                return False
        return True


def weyl_embedding(G: FiniteMatrixGroup) -> WeylEmbedding:
    return WeylEmbedding(G)


# -- norms ---------------------------------------------------------------
@dataclass(frozen=True)
class NormBound:
    value: Fraction
    kind: str           # "exact" or "frobenius_upper_bound"
    per_element: tuple[tuple[Fraction, str], ...] = ()


def _is_psd(a: list[list[Fraction]]) -> bool:
    """Exact positive semidefiniteness of a symmetric rational matrix (LDL^T)."""
    a = [row[:] for row in a]
    live = list(range(len(a)))
    while live:
        piv = next((i for i in live if a[i][i] > 0), None)
        if piv is None:
            return all(a[i][j] == 0 for i in live for j in live)
        if any(a[i][i] < 0 for i in live):
            return False
        live.remove(piv)
        d = a[piv][piv]
        for i in live:
            c = a[i][piv] / d
            if c:
                for j in live:
                    a[i][j] -= c * a[piv][j]
    return True


def _sqrt_upper(q: Fraction, digits: int = 12) -> Fraction:
    scale = 10 ** digits
    num = q.numerator * q.denominator * scale * scale
    r = math.isqrt(num)
    if r * r < num:
        r += 1
    return Fraction(r, q.denominator * scale)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    return Fraction(a, b) if a * a == q.numerator and b * b == q.denominator else None


def _spectral_norm(g: Matrix) -> tuple[Fraction, str]:
    n = len(g)
    gtg = [[sum((g[k][i] * g[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
           for i in range(n)]
    # Guess the top eigenvalue of g^T g in floating point, then confirm a
    # nearby rational exactly: lam is the top eigenvalue iff
    # det(lam I - g^T g) = 0 and lam I - g^T g is positive semidefinite.
    est = float(np.linalg.eigvalsh(np.array(gtg, dtype=float)).max())
    candidates = {Fraction(est).limit_denominator(10 ** 6),
                  Fraction(math.sqrt(max(est, 0.0))).limit_denominator(10 ** 6) ** 2}
    candidates |= {gtg[i][i] for i in range(n)}
    candidates = sorted(candidates, reverse=True)
    for lam in candidates:
        shifted = [[(lam if i == j else 0) - gtg[i][j] for j in range(n)] for i in range(n)]
        if rational_determinant(shifted) == 0 and _is_psd(shifted):
            s = _exact_sqrt(lam)
            if s is not None:
                return s, "exact"
            return _sqrt_upper(lam), "sqrt_upper_bound"
    frob = sum((x * x for row in g for x in row), Fraction(0))
    s = _exact_sqrt(frob)
    return (s if s is not None else _sqrt_upper(frob)), "frobenius_upper_bound"


def operator_norm_mu(G: FiniteMatrixGroup) -> NormBound:
    """Certified upper bound for ``max_g ||g||`` (spectral norm)."""
    per = tuple(_spectral_norm(g) for g in G.elements)
    value = max(v for v, _ in per)
    kind = "exact" if all(k == "exact" for _, k in per) else "upper_bound"
    return NormBound(value, kind, per)


def faa_di_bruno_radius(rho, n: int, mu) -> Fraction:
    """``n^2 mu rho``: the radius constant after averaging over the group."""
    rho, mu = Fraction(rho), Fraction(mu)
    if rho <= 0 or n < 1 or mu <= 0:
        raise ParameterOutOfRange("rho, n and mu must be positive")
    return n * n * mu * rho


def graded_dimensions(gens: Sequence[Polynomial], top: int) -> list[int]:
    """Dimension of the degree-``d`` part of the algebra generated by ``gens``, ``d <= top``."""
    pp = PowerProducts(gens)
    dims = []
    for d in range(top + 1):
        span = SpanTracker(grlex_key)
        dims.append(sum(span.add(pp.product(e).terms, e) for e in pp.exponents(d)))
    return dims


def invariant_dimensions(G: FiniteMatrixGroup, top: int) -> list[int]:
    """Dimension of the degree-``d`` invariants, by Reynolds images of all monomials."""
    dims = []
    for d in range(top + 1):
        span = SpanTracker(grlex_key)
        dims.append(sum(span.add(reynolds(Polynomial.monomial(e), G).terms, e)
                        for e in monomials_of_degree(G.n, d)))
    return dims


__all__ = [
    "FiniteMatrixGroup", "GeneratorSystem", "WeylEmbedding", "NormBound", "PowerProducts",
    "as_matrix", "block_symmetric_group", "close_group", "faa_di_bruno_radius",
    "graded_dimensions", "identity", "invariant_dimensions", "invariant_generators",
    "operator_norm_mu", "permutation_matrix", "reynolds", "rewrite_invariant",
    "rotation_group", "sign_group", "symmetric_group", "trivial_group", "weyl_embedding",
]
