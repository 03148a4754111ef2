"""Equivariant polynomial maps ``f: V1 -> V2`` as a module over the invariants.

A group is given by pairs ``(A_g, B_g)`` of matrices on ``V1`` and ``V2``;
``f`` is equivariant when ``f(A_g v) = B_g f(v)``.  The twisted average
``(1/m) sum_g B_g^-1 F(A_g v)`` projects arbitrary maps onto equivariant
ones, and module generators are extracted degree by degree exactly as for
invariant generators.

Two decomposition routes are provided.  The direct one solves the graded
linear system.  The second goes through the invariant
``H_f(v, l) = l(f(v))`` on ``V1 x V2*`` and recovers ``f`` as the
``l``-gradient at ``l = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NotEquivariant, NotInModule
from .invariant_theory import (DEFAULT_MAX_ORDER, FiniteMatrixGroup, GeneratorSystem, Matrix,
                               PowerProducts, _candidate_key, as_matrix, close_group,
                               invariant_generators, rewrite_invariant)
from .linalg import SpanTracker, mat_inverse, transpose
from .polynomials import (Exponent, Polynomial, compose, grlex_key, linear_substitution,
                          monomials_of_degree, partial_derivative)

Key = tuple[int, Exponent]     # (target component, monomial exponent)


@dataclass(frozen=True)
class RepresentationPair:
    """One abstract finite group acting on ``V1`` (matrices ``A``) and ``V2`` (``B``)."""

    n1: int
    n2: int
    pairs: tuple[tuple[Matrix, Matrix], ...]

    @property
    def order(self) -> int:
        return len(self.pairs)

    @property
    def source_group(self) -> FiniteMatrixGroup:
        """The image of the group in ``GL(V1)``."""
        return close_group([a for a, _ in self.pairs], max_order=self.order)

    def inverse_targets(self) -> list[Matrix]:
        return [tuple(tuple(r) for r in mat_inverse(b)) for _, b in self.pairs]

    def dual_group(self) -> FiniteMatrixGroup:
        """``g -> diag(A_g, (B_g^-1)^T)`` on ``V1 + V2*``."""
        gens = []
        for a, b in self.pairs:
            dual = transpose(mat_inverse(b))
            gens.append(_block_diag(a, dual))
        return close_group(gens, max_order=self.order)


def _block_diag(a, b) -> Matrix:
    n1, n2 = len(a), len(b)
    rows = [list(r) + [Fraction(0)] * n2 for r in a]
    rows += [[Fraction(0)] * n1 + list(r) for r in b]
    return as_matrix(rows)


def representation_pair(gens1: Sequence, gens2: Sequence | None = None,
                        max_order: int = DEFAULT_MAX_ORDER) -> RepresentationPair:
    """Close ``diag(A, B)`` over corresponding generator pairs."""
    gens2 = gens1 if gens2 is None else gens2
    if len(gens1) != len(gens2):
        raise DimensionMismatch("need one V2 matrix per V1 generator")
    a_s = [as_matrix(g) for g in gens1]
    b_s = [as_matrix(g) for g in gens2]
    n1, n2 = len(a_s[0]), len(b_s[0])
    G = close_group([_block_diag(a, b) for a, b in zip(a_s, b_s)], max_order=max_order)
    pairs = tuple((tuple(tuple(r[:n1]) for r in g[:n1]),
                   tuple(tuple(r[n1:]) for r in g[n1:])) for g in G.elements)
    return RepresentationPair(n1, n2, pairs)


def same_representation(G: FiniteMatrixGroup) -> RepresentationPair:
    """``V1 = V2`` with the same action."""
    return RepresentationPair(G.n, G.n, tuple((g, g) for g in G.elements))


@dataclass(frozen=True)
class EquivariantMap:
    components: tuple[Polynomial, ...]
    rep: RepresentationPair

    def __post_init__(self):
        if len(self.components) != self.rep.n2:
            raise DimensionMismatch(f"need {self.rep.n2} components")
        if any(c.nvars != self.rep.n1 for c in self.components):
            raise DimensionMismatch(f"components must have {self.rep.n1} variables")

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.components)

    def is_equivariant(self) -> bool:
        return is_equivariant(self.components, self.rep)


def _apply(b: Matrix, comps: Sequence[Polynomial]) -> list[Polynomial]:
    n = comps[0].nvars
    out = []
    for row in b:
        acc = Polynomial.zero(n)
        for c, p in zip(row, comps):
            if c:
                acc = acc + p.scale(c)
        out.append(acc)
    return out


def is_equivariant(comps: Sequence[Polynomial], rep: RepresentationPair) -> bool:
    for a, b in rep.pairs:
        if [linear_substitution(c, a) for c in comps] != _apply(b, comps):
            return False
    return True


def twisted_average(comps: Sequence[Polynomial], rep: RepresentationPair) -> list[Polynomial]:
    """``(1/m) sum_g B_g^-1 F(A_g v)``."""
    n1 = rep.n1
    total = [Polynomial.zero(n1) for _ in range(rep.n2)]
    for (a, _), binv in zip(rep.pairs, rep.inverse_targets()):
        moved = _apply(binv, [linear_substitution(c, a) for c in comps])
        total = [t + x for t, x in zip(total, moved)]
    m = Fraction(1, rep.order)
    return [t.scale(m) for t in total]


def _vector(comps: Sequence[Polynomial]) -> dict[Key, Fraction]:
    return {(k, e): c for k, p in enumerate(comps) for e, c in p.terms.items()}


def _key_order(key: Key):
    k, e = key
    return (grlex_key(e), -k)


def _normalize(comps: list[Polynomial]) -> list[Polynomial]:
    vec = _vector(comps)
    lead = vec[max(vec, key=_key_order)]
    return [c.scale(1 / lead) for c in comps]


def _map_degree(comps: Sequence[Polynomial]) -> int:
    return max(c.degree for c in comps)


@dataclass(frozen=True)
class ModuleGenerators:
    maps: tuple[tuple[Polynomial, ...], ...]
    sigma: GeneratorSystem
    rep: RepresentationPair

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(_map_degree(p) for p in self.maps)

    def __len__(self) -> int:
        return len(self.maps)


def _module_span(maps, pp: PowerProducts, d: int) -> tuple[SpanTracker, list]:
    """Span of ``sigma^e P_j`` in degree ``d``; columns ordered (grlex e, j)."""
    span = SpanTracker(_key_order)
    columns = []
    for j, P in enumerate(maps):
        dj = _map_degree(P)
        if dj > d:
            continue
        for e in pp.exponents(d - dj):
            columns.append((grlex_key(e), j, e))
    columns.sort()
    for _, j, e in columns:
        s = pp.product(e)
        span.add(_vector([s * c for c in maps[j]]), (j, e))
    return span, columns


def _monomial_maps(n1: int, n2: int, d: int):
    for mono in sorted(monomials_of_degree(n1, d), key=_candidate_key):
        for k in range(n2):
            comps = [Polynomial.zero(n1)] * n2
            comps[k] = Polynomial.monomial(mono)
            yield comps


def equivariant_module_generators(rep: RepresentationPair, validate: bool = True) -> ModuleGenerators:
    """Generators of the equivariant maps over the invariant ring of ``V1``.

    Twisted averages of monomial maps of degree ``<= |G|`` are kept when they
    leave the span of ``sigma^e P_j`` for the generators found so far.  With
    ``validate`` every averaged monomial map up to degree ``|G| + max deg P``
    is checked to decompose.
    """
    sigma = invariant_generators(rep.source_group)
    pp = PowerProducts(sigma.generators)
    kept: list[tuple[Polynomial, ...]] = []
    for d in range(rep.order + 1):
        span, _ = _module_span(kept, pp, d)
        for comps in _monomial_maps(rep.n1, rep.n2, d):
            avg = twisted_average(comps, rep)
            if all(c.is_zero() for c in avg):
                continue
            if span.add(_vector(avg), ("new", len(kept))):
                kept.append(tuple(_normalize(avg)))
    out = ModuleGenerators(tuple(kept), sigma, rep)
    if validate:
        top = rep.order + max(out.degrees, default=0)
        for d in range(rep.order + 1, top + 1):
            span, _ = _module_span(kept, pp, d)
            for comps in _monomial_maps(rep.n1, rep.n2, d):
                avg = twisted_average(comps, rep)
                if any(not c.is_zero() for c in avg) and not span.contains(_vector(avg)):
                    raise NotInModule(f"averaged monomial map of degree {d} is not generated")
    return out


def _degree_parts(comps: Sequence[Polynomial]) -> dict[int, list[Polynomial]]:
    n = comps[0].nvars
    parts: dict[int, list[dict]] = {}
    for k, c in enumerate(comps):
        for e, v in c.terms.items():
            parts.setdefault(sum(e), [dict() for _ in comps])[k][e] = v
    return {d: [Polynomial(n, t) for t in ts] for d, ts in sorted(parts.items())}


def decompose_equivariant(f: EquivariantMap | Sequence[Polynomial], sigma: GeneratorSystem,
                          P: ModuleGenerators | Sequence[Sequence[Polynomial]],
                          rep: RepresentationPair | None = None,
                          check: bool = True) -> list[Polynomial]:
    """``L_1..L_l`` in ``len(sigma)`` variables with ``f = sum_j (L_j o sigma) P_j``."""
    if isinstance(f, EquivariantMap):
        rep = rep or f.rep
        comps = list(f.components)
    else:
        comps = list(f)
    maps = list(P.maps) if isinstance(P, ModuleGenerators) else [tuple(p) for p in P]
    if rep is None and isinstance(P, ModuleGenerators):
        rep = P.rep
    if check and rep is not None and not is_equivariant(comps, rep):
        raise NotEquivariant("map does not commute with the group action")
    pp = PowerProducts(sigma.generators)
    p = len(sigma.generators)
    coeffs: list[dict[Exponent, Fraction]] = [dict() for _ in maps]
    for d, part in _degree_parts(comps).items():
        span, _ = _module_span(maps, pp, d)
        combo = span.express(_vector(part))
        if combo is None:
            raise NotInModule(f"degree {d} part is not generated by the module generators")
        for (j, e), c in combo.items():
            coeffs[j][e] = coeffs[j].get(e, 0) + c
    return [Polynomial(p, c) for c in coeffs]


def reconstruct(L: Sequence[Polynomial], sigma: GeneratorSystem,
                P: ModuleGenerators | Sequence[Sequence[Polynomial]]) -> list[Polynomial]:
    maps = list(P.maps) if isinstance(P, ModuleGenerators) else [tuple(p) for p in P]
    n1 = sigma.generators[0].nvars if sigma.generators else maps[0][0].nvars
    out = [Polynomial.zero(n1) for _ in maps[0]]
    for Lj, Pj in zip(L, maps):
        s = compose(Lj, list(sigma.generators)) if sigma.generators else Lj
        out = [o + s * c for o, c in zip(out, Pj)]
    return out


def _restrict_to_source(F: Polynomial, n1: int) -> Polynomial:
    """Set the trailing (dual) variables to zero."""
    return Polynomial(n1, {e[:n1]: c for e, c in F.terms.items() if not any(e[n1:])})


def decompose_via_hf(f: EquivariantMap | Sequence[Polynomial], sigma: GeneratorSystem,
                     P: ModuleGenerators, rep: RepresentationPair | None = None) -> list[Polynomial]:
    """Second route through ``H_f(v, l) = l(f(v))``.

    With ``tau`` generating the invariants of ``V1 + V2*`` and
    ``H_f = Phi(tau)``, differentiating in ``l`` at ``l = 0`` gives
    ``f = sum_i (d_i Phi)(tau(v, 0)) Q_i`` where ``Q_i = d_l tau_i(v, 0)`` are
    equivariant.  Each ``Q_i`` is decomposed over ``P`` and the invariant
    coefficients are rewritten in ``sigma``.
    """
    rep = rep or P.rep
    comps = list(f.components) if isinstance(f, EquivariantMap) else list(f)
    if not is_equivariant(comps, rep):
        raise NotEquivariant("map does not commute with the group action")
    n1, n2 = rep.n1, rep.n2
    N = n1 + n2
    D = rep.dual_group()
    tau = invariant_generators(D)
    H = Polynomial.zero(N)
    for k, c in enumerate(comps):
        H = H + c.extend(N) * Polynomial.variable(N, n1 + k)
    Phi = rewrite_invariant(H, tau)
    at_zero = [_restrict_to_source(t, n1) for t in tau.generators]
    result = [Polynomial.zero(len(sigma.generators)) for _ in P.maps]
    for i, t in enumerate(tau.generators):
        Q = [_restrict_to_source(partial_derivative(t, n1 + k), n1) for k in range(n2)]
        if all(q.is_zero() for q in Q):
            continue
        weight = compose(partial_derivative(Phi, i), at_zero)
        if weight.is_zero():
            continue
        h = decompose_equivariant(Q, sigma, P, rep, check=False)
        for j, hj in enumerate(h):
            if hj.is_zero():
                continue
            inv = weight * compose(hj, list(sigma.generators))
            result[j] = result[j] + rewrite_invariant(inv, sigma, check=False)
    return result
