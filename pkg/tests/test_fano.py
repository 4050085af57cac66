import itertools
import json

import pytest

from chowcert import fano
from chowcert.decompositions import make_permanent
from chowcert.ideals import NormalizedIdeal, normalize, Ideal


def test_x_form():
    f = fano.build_X_form()
    assert len(f) == 4 and f.total_degree() == 3 and f.is_homogeneous()
    assert set(f.terms.values()) == {1}


def test_symmetry_generators_fix_f():
    f = fano.build_X_form()
    for g in fano.symmetry_generators():
        assert fano.apply_permutation(g, f) == f


def test_group_order_is_wreath_product():
    assert fano.group_order(fano.symmetry_generators()) == 6 ** 4 * 24


def test_chart_layout():
    for chart in (fano.CHART_A, fano.CHART_B):
        M = chart.matrix()
        piv = [[M[i][c - 1] for c in chart.pivot_columns] for i in range(6)]
        assert piv == [[int(i == j) for j in range(6)] for i in range(6)]
        assert sorted(chart.pivot_columns + chart.generic_columns) == list(range(1, 13))
    assert fano.CHART_A.generic_columns == (1, 2, 3, 4, 7, 10)
    assert fano.CHART_B.generic_columns == (1, 2, 4, 5, 7, 10)


def test_chart_a_ideal_has_row_cubes():
    gens = {str(g) for g in fano.chart_ideal(fano.CHART_A).generators}
    for i in range(1, 7):
        assert f"a{i}1*a{i}2*a{i}3" in gens


def test_chart_b_ideal_has_products():
    gens = {str(g) for g in fano.chart_ideal(fano.CHART_B).generators}
    assert {"b11*b12", "b23*b24"} <= gens


# generator counts frozen from an independent sympy expansion (see test below)
@pytest.mark.parametrize("chart,count", [(fano.CHART_A, 56), (fano.CHART_B, 44)])
def test_chart_ideal_sizes(chart, count):
    assert len(fano.chart_ideal(chart).generators) == count <= 56
    assert fano.chart_ideal_certificate(chart).verdict == "verified"


@pytest.mark.parametrize("chart", [fano.CHART_A, fano.CHART_B])
def test_chart_ideal_against_sympy(chart):
    sp = pytest.importorskip("sympy")
    s = sp.symbols("s1:7")
    M = [[sp.Symbol(e) if isinstance(e, str) else e for e in row] for row in chart.matrix()]
    y = [sum(s[i] * M[i][k] for i in range(6)) for k in range(12)]
    f = sum(y[a - 1] * y[b - 1] * y[c - 1] for a, b, c in fano.TRIPLES)
    expected = {sp.expand(c) for c in sp.Poly(sp.expand(f), *s).coeffs()}
    ours = {sp.expand(sp.sympify(str(g).replace("^", "**"))) for g in fano.chart_ideal(chart).generators}
    assert ours == expected


# -- pipeline --------------------------------------------------------------------

def test_pipeline_a_empty(pipeline_a):
    assert pipeline_a.survivors == []
    assert pipeline_a.certificate.verdict == "verified"
    assert pipeline_a.rounds[-1]["new_ideals"] == 0


def test_pipeline_b_eight_postulated(pipeline_b):
    assert len(pipeline_b.survivors) == 8
    for s in pipeline_b.survivors:
        c = s.classification
        assert c.kind == "postulated-form", c.reason
        assert len(c.free) == 4 and len(c.relations) == 2 and len(c.zeroed) == 30
        assert not fano.low_rank(s.ideal, fano.CHART_B)
        assert c.permutation is not None


def test_survivors_are_fixpoints(pipeline_b):
    for s in pipeline_b.survivors:
        primes, children, _ = fano.expand_node(s.ideal, fano.CHART_B)
        assert children == [s.ideal]


def test_every_seen_ideal_is_not_low_rank(pipeline_a, pipeline_b):
    for res in (pipeline_a, pipeline_b):
        assert all(not fano.low_rank(n, res.chart) for n in res.seen[1:])
        assert all(fano.low_rank(n, res.chart) for n in res.discarded)


def _survivor_blob(res):
    return json.dumps([s.to_dict() for s in res.survivors], sort_keys=True)


@pytest.mark.slow
def test_pipeline_order_and_concurrency_independent(pipeline_b):
    base = _survivor_blob(pipeline_b)
    shuffled = fano.run_pipeline(fano.CHART_B, shuffle_seed=7)
    threaded = fano.run_pipeline(fano.CHART_B, workers=3)
    assert _survivor_blob(shuffled) == base
    assert _survivor_blob(threaded) == base
    assert threaded.certificate.to_json(timing=False) == pipeline_b.certificate.to_json(timing=False)


def test_iteration_cap():
    with pytest.raises(RuntimeError):
        fano.run_pipeline(fano.CHART_B, max_rounds=1)


# -- classification ----------------------------------------------------------

def test_zero_ideal_is_unknown():
    ring = fano.CHART_B.ring
    c = fano.classify_survivor(normalize(Ideal(ring, [])), fano.CHART_B)
    assert c.kind == "unknown"


def test_survivor_missing_a_relation_is_unknown(pipeline_b):
    n = pipeline_b.survivors[0].ideal
    broken = NormalizedIdeal(n.ring, n.zero_variables, (), n.higher_part[:1])
    assert fano.classify_survivor(broken, fano.CHART_B).kind == "unknown"


def test_survivor_with_flipped_sign_is_unknown(pipeline_b):
    n = pipeline_b.survivors[0].ideal
    g = n.higher_part[0]
    flipped = g.__class__(g.ring, {m: (c if len(m) == 1 else -c) for m, c in g.terms.items()})
    broken = NormalizedIdeal(n.ring, n.zero_variables, (), (flipped,) + n.higher_part[1:])
    c = fano.classify_survivor(broken, fano.CHART_B)
    assert c.kind == "unknown" and "not contained" in c.reason


# -- template family ---------------------------------------------------------

def test_template_family():
    cert = fano.verify_template_family()
    assert cert.verdict == "verified"
    assert cert.steps[0]["rank_at_ones"] == 6


def test_template_specialization():
    assert fano.verify_template_family(specialize={"p": 0, "q": 0}).verdict == "verified"


@pytest.mark.parametrize("kw", [{"pq_sign": 1}, {"rs_sign": 1}])
def test_template_mutation(kw):
    cert = fano.verify_template_family(**kw)
    assert cert.verdict == "falsified" and cert.witness["monomial"]


# -- coordinate planes -------------------------------------------------------

def _orbits_by_full_group(sets):
    """Independent orbit count: enumerate every element of S3 wr S4 explicitly."""
    elements = []
    for outer in itertools.permutations(range(4)):
        for inner in itertools.product(itertools.permutations(range(3)), repeat=4):
            perm = {}
            for t in range(4):
                for k in range(3):
                    perm[fano.TRIPLES[t][k]] = fano.TRIPLES[outer[t]][inner[t][k]]
            elements.append(perm)
    remaining = set(sets)
    sizes = []
    while remaining:
        s = next(iter(remaining))
        orbit = {frozenset(g[i] for i in s) for g in elements}
        sizes.append(len(orbit))
        remaining -= orbit
    return sorted(sizes)


def test_torus_fixed_planes():
    cert = fano.torus_fixed_planes()
    assert cert.verdict == "verified"
    d = cert.data
    contained = [frozenset(S) for S in itertools.combinations(range(1, 13), 6)
                 if not any(set(t) <= set(S) for t in fano.TRIPLES)]
    assert d["contained"] == len(contained) == 594
    assert sorted(o["size"] for o in d["orbits"]) == _orbits_by_full_group(contained) == [108, 486]
    assert [o["invariant"] for o in d["orbits"]] == [[0, 2, 2, 2], [1, 1, 2, 2]]
    reps = {tuple(r["span"]): r["invariant"] for r in d["listed_representatives"]}
    assert reps[(5, 6, 8, 9, 11, 12)] == [0, 2, 2, 2]
    assert reps[(3, 6, 8, 9, 11, 12)] == [1, 1, 2, 2]
    for o in d["orbits"]:
        assert sum(o["invariant"]) == 6 and set(o["invariant"]) <= {0, 1, 2}
        comp = set(range(1, 13)) - set(o["representative"])
        assert all(comp & set(t) for t in fano.TRIPLES)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_diagonal_planes(n):
    planes, cert = fano.coordinate_planes_diagonal(n)
    assert len(planes) == n ** n
    assert cert.verdict == "verified"
    assert cert.data["sweep_contained"] == n ** n
    assert all(p.dim == n * (n - 1) for p in planes)


@pytest.mark.parametrize("n", [2, 3])
def test_perm_row_col_planes(n):
    planes, cert = fano.perm_row_col_planes(n)
    assert len(planes) == 2 * n and cert.verdict == "verified"


def test_single_entry_is_not_enough():
    assert not fano.zeroed_contained(make_permanent(2), ["x11"])
    assert fano.zeroed_contained(make_permanent(2), ["x11", "x12"])


# -- restriction -------------------------------------------------------------

def test_det_restriction():
    cert = fano.det_restriction_check()
    assert cert.verdict == "verified"
    assert cert.data["restricted"] == cert.data["expected"]
    assert cert.notes


def test_det_restriction_specialized():
    ring = fano.RESTRICTION_RING
    f = fano.build_X_form(ring)
    images = {n: ring.var(n) for n in fano.Y_RING.names}
    images.update(y3=ring.zero(), y4=ring.zero(), y5=ring.zero())
    assert f.substitute(images, ring) == ring("y7*y8*y9 + y10*y11*y12")


def test_det_restriction_mutation():
    cert = fano.det_restriction_check(pq_sign=1)
    assert cert.verdict == "falsified" and cert.witness
