import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chowcert import fano
from chowcert.ideals import (
    Ideal,
    NormalizedIdeal,
    VariablePrime,
    add_prime,
    ideal_equal,
    minimal_primes_monomial,
    minimal_transversals,
    monomial_generators,
    normalize,
    reduces_into,
)
from chowcert.poly import Polynomial, Ring
from chowcert.properties import brute_force_transversals, random_edge_sets

R = Ring(("x", "y", "z", "w"))
x, y, z, w = R.gens()


def names(ring, idxs):
    return sorted(ring.names[i] for i in idxs)


def mono_strs(ring, monos):
    return sorted(str(Polynomial(ring, {m: 1})) for m in monos)


def test_zero_cascade():
    n = normalize(Ideal(R, [x, x * y + z]))
    assert names(R, n.zero_variables) == ["x", "z"]
    assert not n.linear_part and not n.higher_part


def test_content_normalization():
    n = normalize(Ideal(R, [2 * x + 2 * y]))
    assert [str(g) for g in n.linear_part] == ["x + y"]


def test_linear_reduction_of_higher_part():
    n = normalize(Ideal(R, [x - y, x * z - y * w, z * z]))
    assert [str(g) for g in n.linear_part] == ["x - y"]
    assert [str(g) for g in n.higher_part] == ["z^2", "y*z - y*w"]


def test_higher_part_dropping_to_linear_feeds_back():
    # x*y + z with y = 0 leaves z, which must then be zeroed
    n = normalize(Ideal(R, [y + w, w, x * y + z]))
    assert names(R, n.zero_variables) == ["w", "y", "z"]


def test_seed_ideal_exposes_row_cubes():
    chart = fano.CHART_A
    ring = chart.ring
    ideal = fano.chart_ideal(chart)
    n = normalize(Ideal(ring, list(ideal.generators) + [ring("a11"), ring("a63")]))
    assert reduces_into(n, ideal.generators)
    monos = {str(g) for g in n.higher_part if g.is_term()}
    for i in range(2, 6):
        assert f"a{i}1*a{i}2*a{i}3" in monos


def test_monomial_generators():
    n = NormalizedIdeal(R, frozenset({3}), (), (R("x*y^2 + z"), R("x*z")))
    assert mono_strs(R, monomial_generators(n)) == ["w", "x*z"]
    n = NormalizedIdeal(R, frozenset(), (), (R("x^2*y"),))
    assert mono_strs(R, monomial_generators(n)) == ["x*y"]
    n = NormalizedIdeal(R, frozenset(), (), (R("x*y"), R("x*y*z")))
    assert mono_strs(R, monomial_generators(n)) == ["x*y"]


def test_chart_b_monomials():
    ring = fano.CHART_B.ring
    n = normalize(fano.chart_ideal(fano.CHART_B))
    monos = mono_strs(ring, monomial_generators(n))
    assert "b11*b12" in monos and "b23*b24" in monos


def test_minimal_primes_examples():
    assert [p.variables for p in minimal_primes_monomial([((0, 1),)])] == [frozenset({0})]
    xy, yz = ((0, 1), (1, 1)), ((1, 1), (2, 1))
    primes = minimal_primes_monomial([xy, yz])
    assert [names(R, p.variables) for p in primes] == [["y"], ["x", "z"]]
    assert minimal_primes_monomial([]) == []
    with pytest.raises(ValueError):
        VariablePrime(frozenset())


def test_transversal_oracle_suite():
    for edges in random_edge_sets(250, seed=11):
        assert minimal_transversals(edges) == brute_force_transversals(edges, 8)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.sets(st.integers(0, 7), min_size=1, max_size=4), min_size=1, max_size=6))
def test_transversals_match_brute_force(edges):
    edges = [frozenset(e) for e in edges]
    got = minimal_transversals(edges)
    assert got == brute_force_transversals(edges, 8)
    for t in got:
        assert all(t & e for e in edges)
    for a in got:
        assert not any(a < b for b in got)


def test_add_prime():
    n = normalize(Ideal(R, [x * y]))
    m = add_prime(n, VariablePrime(frozenset({0})))
    assert names(R, m.zero_variables) == ["x"] and not m.higher_part
    assert add_prime(m, VariablePrime(frozenset({0}))) == m
    with pytest.raises(ValueError):
        add_prime(n, VariablePrime(frozenset({9})))


def test_ideal_equal_examples():
    assert ideal_equal(normalize(Ideal(R, [x, y])), normalize(Ideal(R, [y, x])))
    assert ideal_equal(normalize(Ideal(R, [x + y])), normalize(Ideal(R, [2 * x + 2 * y])))
    assert not ideal_equal(normalize(Ideal(R, [x + y])), normalize(Ideal(R, [x - y])))


def test_low_rank():
    chart = fano.CHART_A
    ring = chart.ring
    col1 = normalize(Ideal(ring, [ring.var(f"a{i}1") for i in range(1, 7)]))
    assert fano.low_rank(col1, chart)
    assert not fano.low_rank(normalize(Ideal(ring, [])), chart)
    five = normalize(Ideal(ring, [ring.var(f"a{i}1") for i in range(1, 6)]))
    assert not fano.low_rank(five, chart)


def test_first_round_child_is_in_the_trace(pipeline_a):
    seed = pipeline_a.seed
    primes = minimal_primes_monomial(monomial_generators(seed))
    children = [add_prime(seed, p) for p in primes]
    kept = [c for c in children if not fano.low_rank(c, fano.CHART_A)]
    assert kept
    seen = set(pipeline_a.seen)
    assert all(c in seen for c in kept)


def test_distinct_round_two_ideals_unequal(pipeline_b):
    round2 = pipeline_b.seen[1:1 + pipeline_b.rounds[0]["new_ideals"]]
    assert len(round2) >= 2
    assert not ideal_equal(round2[0], round2[1])


def test_idempotence_on_pipeline_ideals(pipeline_a, pipeline_b):
    for res in (pipeline_a, pipeline_b):
        for n in res.seen + res.discarded[:500]:
            assert normalize(n) == n


def test_unit_ideal():
    n = normalize(Ideal(R, [x + 1, x]))
    assert [str(g) for g in n.linear_part] == ["1"]


# -- random ideals -------------------------------------------------------------

def random_ideal(rng):
    gens = []
    for _ in range(rng.randint(1, 4)):
        terms = {}
        for _ in range(rng.randint(1, 3)):
            deg = rng.choice((1, 1, 2, 3))
            expo = {}
            for _ in range(deg):
                i = rng.randrange(4)
                expo[i] = expo.get(i, 0) + 1
            terms[tuple(sorted(expo.items()))] = rng.randint(-3, 3)
        gens.append(Polynomial(R, terms))
    return Ideal(R, gens)


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_normalize_idempotent_and_sound(seed):
    ideal = random_ideal(random.Random(seed))
    n = normalize(ideal)
    assert normalize(n) == n
    assert reduces_into(n, ideal.generators)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_ideal_equal_is_equivalence(seed):
    rng = random.Random(seed)
    ideals = [normalize(random_ideal(rng)) for _ in range(3)]
    a, b, c = ideals
    assert ideal_equal(a, a)
    assert ideal_equal(a, b) == ideal_equal(b, a)
    if ideal_equal(a, b) and ideal_equal(b, c):
        assert ideal_equal(a, c)
    # same ideal from shuffled generators normalizes identically
    gens = list(random_ideal(rng).generators)
    one = normalize(Ideal(R, gens))
    rng.shuffle(gens)
    assert ideal_equal(one, normalize(Ideal(R, gens)))
