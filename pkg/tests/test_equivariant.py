import random

import pytest
from hypothesis import given, settings, strategies as st

from carleman.equivariant import (EquivariantMap, decompose_equivariant, decompose_via_hf,
                                  equivariant_module_generators, is_equivariant, reconstruct,
                                  representation_pair, same_representation, twisted_average)
from carleman.errors import DimensionMismatch, NotEquivariant
from carleman.invariant_theory import (rotation_group, sign_group, symmetric_group,
                                       trivial_group)
from carleman.polynomials import Polynomial, compose, parse_polynomial
from strategies import random_poly

P = parse_polynomial

REPS = {
    "sign": lambda: same_representation(sign_group(1)),
    "sym2": lambda: same_representation(symmetric_group(2)),
    "sym3": lambda: same_representation(symmetric_group(3)),
    "rot4": lambda: same_representation(rotation_group(4)),
    # S2 swapping coordinates of R^2 and acting by -1 on R
    "sym2->sign": lambda: representation_pair([[[0, 1], [1, 0]]], [[[-1]]]),
}


@pytest.fixture(scope="module")
def generators():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = equivariant_module_generators(REPS[name]())
        return cache[name]
    return get


def random_equivariant(rng, gens, max_degree=6):
    """A random module combination of the generators of total degree at most ``max_degree``."""
    n1 = gens.rep.n1
    out = [Polynomial.zero(n1) for _ in range(gens.rep.n2)]
    sig = list(gens.sigma.generators)
    for Pj, dj in zip(gens.maps, gens.degrees):
        room = max_degree - dj
        if room < 0:
            continue
        L = random_poly(rng, len(sig), max(room // max(min(gens.sigma.degrees), 1), 0), terms=3)
        coef = compose(L, sig)
        if coef.degree + dj > max_degree:
            continue
        out = [o + coef * c for o, c in zip(out, Pj)]
    return out


def test_generator_examples(generators):
    g = generators("sign")
    assert g.maps == ((P("x1"),),)
    s = generators("sym2")
    assert s.degrees == (0, 1)
    assert s.maps[0] == (Polynomial.constant(2, 1), Polynomial.constant(2, 1))
    f = [P("x1^2", 2), P("x2^2", 2)]
    L = decompose_equivariant(f, s.sigma, s)
    assert reconstruct(L, s.sigma, s) == f
    t = equivariant_module_generators(same_representation(trivial_group(1)))
    assert t.maps == ((Polynomial.constant(1, 1),),)


def test_decompose_examples(generators):
    g = generators("sign")
    assert g.sigma.generators == (P("x1^2"),)
    assert decompose_equivariant([P("x1^3")], g.sigma, g) == [P("t1")]
    assert decompose_equivariant([P("x1")], g.sigma, g) == [Polynomial.constant(1, 1)]
    s = generators("sym2")
    assert s.sigma.generators == (P("x1 + x2"), P("x1*x2"))
    assert s.maps[1] == (P("x1", 2), P("x2", 2))
    L = decompose_equivariant([P("x1^2", 2), P("x2^2", 2)], s.sigma, s)
    assert L == [P("-s2", 2), P("s1", 2)]


def test_not_equivariant(generators):
    g = generators("sign")
    with pytest.raises(NotEquivariant):
        decompose_equivariant([P("x1^2")], g.sigma, g)
    with pytest.raises(NotEquivariant):
        decompose_via_hf([P("x1^2")], g.sigma, g)
    with pytest.raises(DimensionMismatch):
        EquivariantMap((P("x1"), P("x1")), REPS["sign"]())


def test_mixed_representation(generators):
    g = generators("sym2->sign")
    assert all(is_equivariant(Pj, g.rep) for Pj in g.maps)
    f = [P("x1^3 - x2^3")]
    assert EquivariantMap(tuple(f), g.rep).is_equivariant()
    L = decompose_equivariant(f, g.sigma, g)
    assert reconstruct(L, g.sigma, g) == f


def test_twisted_average_projects(generators):
    rep = REPS["rot4"]()
    avg = twisted_average([P("x1^3", 2), Polynomial.zero(2)], rep)
    assert is_equivariant(avg, rep)
    assert twisted_average(avg, rep) == avg


# -- properties -------------------------------------------------------------
@settings(max_examples=25)
@given(st.sampled_from(sorted(REPS)), st.integers(0, 10 ** 6))
def test_both_routes_reconstruct(generators, name, seed):
    g = generators(name)
    f = random_equivariant(random.Random(seed), g)
    assert is_equivariant(f, g.rep)
    for route in (decompose_equivariant, decompose_via_hf):
        L = route(f, g.sigma, g)
        assert reconstruct(L, g.sigma, g) == f
        for Lj in L:
            assert g.rep.source_group.is_invariant(compose(Lj, list(g.sigma.generators)))


@pytest.mark.parametrize("name", sorted(REPS))
def test_generators_are_equivariant(generators, name):
    g = generators(name)
    assert all(is_equivariant(Pj, g.rep) for Pj in g.maps)
