"""Acceptance criteria 1-12.

Each test carries ``@pytest.mark.criterion(n, title)``; the terminal summary
prints one PASS/FAIL line per criterion.  Timing bounds are asserted inside
the tests.
"""
import itertools
import random
from fractions import Fraction

import pytest

from cu1 import arcs, core, functors, limits, lsc
from cu1.arcs import Space
from cu1.axiomlab import SampleConfig, Sampler, replay, run_axiom_suite, run_structure_suite
from cu1.core import FAULTS
from cu1.ktheory import delta_hom, identity_hom, k1_of_ideal
from cu1.values import EXTNAT, ExtNat, IntegerRing

import oracles

SUITE_MODELS = [
    {"kind": "interval"},
    {"kind": "circle"},
    {"kind": "af"},
    {"kind": "simple", "scale": "extnat", "group": {"rank": 0, "torsion": [3]}},
    {"kind": "uhf-circle", "p": 2},
]


def _random_open_sets(space, n, seed):
    cfg = SampleConfig(seed=seed, samples=1, max_den=16, max_arcs=4,
                       model={"kind": space.value})
    s = Sampler(core.circle_model() if space is Space.CIRCLE else core.interval_model(), cfg)
    return [s.open_set(space) for _ in range(n)]


# --------------------------------------------------------------------- 1


@pytest.mark.criterion(1, "interval compacts are exactly (n 1_[0,1], 0); compacts = N, unit 1")
def test_interval_compacts(timer):
    m = core.interval_model()
    with timer() as t:
        s = Sampler(m, SampleConfig(seed=1, samples=1, max_den=16, max_value=4, model={"kind": "interval"}))
        sample = [s.element() for _ in range(3000)]
        sample += [m.constant(ExtNat(n)) for n in range(5)] + [m.top]
        constants = {lsc.constant(Space.INTERVAL, EXTNAT, ExtNat(n)) for n in range(5)}
        hits = 0
        for e in sample:
            expected = e.x in constants and tuple(e.k) == ()
            assert m.classify(e)["compact"] == expected, e
            hits += expected
        mono = functors.compacts_of(m)
    assert hits > 5
    assert mono.describe() == "N" and mono.unit == (Fraction(1), None)
    assert t.elapsed < 5


# --------------------------------------------------------------------- 2


@pytest.mark.criterion(2, "circle compacts = {0} u (N+ x Z), unit (1,0)")
def test_circle_compacts(timer):
    m = core.circle_model()
    with timer() as t:
        mono = functors.compacts_of(m)
        # brute force over constants with coefficients, plus non-constant probes
        for n, k in itertools.product(range(4), range(-2, 3)):
            if n == 0:
                assert m.is_compact(m.zero)
                continue
            e = m.constant(ExtNat(n), [k])
            assert m.is_compact(e)
            assert mono.contains(functors.read_compact(m, e))
            assert functors.embed(m, functors.read_compact(m, e)) == e
        assert not mono.contains((Fraction(0), 1))
        half = m.element(lsc.indicator(arcs.open_set(Space.CIRCLE, arcs.proper(Space.CIRCLE, 0, Fraction(1, 2))),
                                       ExtNat(1), EXTNAT), [1])
        assert not m.is_compact(half)
        assert not m.is_compact(m.top)
    assert mono.describe() == "{0} u (N+ x Z)"
    assert mono.unit == (Fraction(1), (0,)) or mono.unit == (Fraction(1), 0)
    assert t.elapsed < 1


# --------------------------------------------------------------------- 3


@pytest.mark.criterion(3, "rank of K1(ideal) equals m_f / n_f")
def test_k1_rank_law(timer):
    with timer() as t:
        for space in (Space.INTERVAL, Space.CIRCLE):
            sets = _random_open_sets(space, 500, seed=3)
            assert len(sets) == 500
            for v in sets:
                n_f, m_f = arcs.component_counts(v)
                rank = k1_of_ideal(space, v, IntegerRing()).rank
                assert rank == (m_f if space is Space.INTERVAL else n_f)
                assert rank == oracles.rank_oracle(v)
                assert n_f == len(oracles.components(v))
    assert t.elapsed < 5


# --------------------------------------------------------------------- 4


def _nested_triples(space, n, seed):
    rng = random.Random(seed)
    sets = _random_open_sets(space, 3 * n, seed)
    out = []
    for i in range(n):
        v = sets[3 * i]
        w = arcs.union(v, sets[3 * i + 1]) if rng.random() < 0.8 else v
        u = arcs.union(w, sets[3 * i + 2]) if rng.random() < 0.8 else w
        out.append((v, w, u))
    return out


@pytest.mark.criterion(4, "delta(V,U) = delta(W,U) delta(V,W) and delta(V,V) = id")
def test_delta_functoriality(timer):
    ring = IntegerRing()
    with timer() as t:
        for space in (Space.INTERVAL, Space.CIRCLE):
            for v, w, u in _nested_triples(space, 500, seed=4):
                gv, gw, gu = (k1_of_ideal(space, x, ring) for x in (v, w, u))
                direct = delta_hom(gv, gu)
                assert direct.matrix == delta_hom(gw, gu).compose(delta_hom(gv, gw)).matrix
                assert delta_hom(gv, gv).matrix == identity_hom(gv).matrix
                assert direct.matrix == oracles.inclusion_matrix(v, u)
    assert t.elapsed < 10


# --------------------------------------------------------------------- 5


@pytest.mark.criterion(5, "axiom suite: zero violations on five models, 500 samples")
def test_axiom_suite(timer):
    with timer() as t:
        reports = [run_axiom_suite(SampleConfig(seed=7, samples=500, model=d)) for d in SUITE_MODELS]
    for r in reports:
        assert r.passed, (r.model, r.failures(), r.counterexamples[:1])
        for name in ("O1", "O2", "O3", "O4", "zero-waybelow-zero", "auxiliary"):
            assert r.laws[name].checked > 0
    assert t.elapsed < 60


# --------------------------------------------------------------------- 6


@pytest.mark.criterion(6, "structure suite: zero violations on five models")
def test_structure_suite(timer):
    with timer() as t:
        reports = [run_structure_suite(SampleConfig(seed=7, samples=500, model=d)) for d in SUITE_MODELS]
    failures = {r.model["kind"]: r.failures() for r in reports if not r.passed}
    assert t.elapsed < 60
    assert not failures, failures


# --------------------------------------------------------------------- 7


def _single_arc_functions(space):
    if space is Space.INTERVAL:
        sets = [arcs.proper(space, Fraction(a, 8), Fraction(b, 8)) for a in range(9) for b in range(a + 1, 9)]
        sets += [arcs.leftclosed(Fraction(b, 8)) for b in range(1, 9)]
        sets += [arcs.rightclosed(Fraction(a, 8)) for a in range(8)]
    else:
        sets = [arcs.proper(space, Fraction(a, 8), Fraction(b, 8)) for a in range(8) for b in range(8)]
    sets.append(arcs.full(space))
    fns = [lsc.indicator(arcs.open_set(space, a), ExtNat(c), EXTNAT) for a in sets for c in (1, 2, 3)]
    return sets, fns


@pytest.mark.criterion(7, "lsc_waybelow agrees with the sequential definition on the 1/8 grid")
def test_waybelow_sequential_oracle(timer):
    # Cut-down indices 1, 2, 4, 8, 16 keep every breakpoint on the 1/32 grid,
    # so comparisons reduce to integer vectors sampled at 1/64.
    indices = (1, 2, 4, 8, 16)
    with timer() as t:
        counts = {}
        for space in (Space.INTERVAL, Space.CIRCLE):
            sets, fns = _single_arc_functions(space)
            fns = [lsc.zero(space, EXTNAT)] + fns
            vec = {f: oracles.grid_vector(f, 64) for f in fns}
            chains = {g: [oracles.grid_vector(lsc.approximate(g, n), 64) for n in indices] for g in fns}
            checked = 0
            for g in fns:
                for f in fns:
                    fv = vec[f]
                    seq = any(all(a <= b for a, b in zip(fv, term)) for term in chains[g])
                    assert lsc.lsc_waybelow(f, g) == seq, (f, g)
                    checked += 1
            counts[space] = (len(sets), checked)
    assert counts[Space.INTERVAL][0] == 53 and counts[Space.CIRCLE][0] == 65
    assert t.elapsed < 30


# --------------------------------------------------------------------- 8


@pytest.mark.criterion(8, "colimit of Z --x2--> Z ... is Z[1/2] elementwise")
def test_group_colimit():
    g = limits.colimit_group(limits.multiplier_system(2, 4, extend=True))
    elems = {(i, m): g.element(i, (m,)) for i in range(5) for m in range(-8, 9)}
    image = {k: limits.to_padic(e, 2) for k, e in elems.items()}
    for (i, m), q in image.items():
        assert q == Fraction(m, 2 ** i)
    for a, b in itertools.product(elems, repeat=2):
        same = g.eq(elems[a], elems[b])
        assert same == (image[a] == image[b])
        s = g.add(elems[a], elems[b])
        assert limits.to_padic(g.normalize(s), 2) == image[a] + image[b]
    for k, e in elems.items():
        assert limits.to_padic(g.neg(e), 2) == -image[k]
    targets = {Fraction(m, 2 ** i) for i in range(5) for m in range(-8, 9)}
    assert targets == set(image.values())


# --------------------------------------------------------------------- 9


@pytest.mark.criterion(9, "UHF limit agrees with the closed form on +, <= and <<")
def test_uhf_limit_closed_form(timer):
    with timer() as t:
        system = limits.uhf_stage_system(2, 4)
        col = limits.colimit_cu1(system)
        closed = limits.uhf_closed_form(2)
        s = Sampler(system.model, SampleConfig(seed=9, samples=1, max_den=8, max_value=3, model={"kind": "circle"}))
        rng = random.Random(9)
        elems = [col.element(rng.randrange(4), s.element()) for _ in range(40)]
        elems += [col.element(i, s.compact()) for i in range(4) for _ in range(5)]
        elems += [col.element(rng.randrange(4), system.model.approximate(e.value, rng.randint(1, 4))) for e in elems[:20]]
        image = [limits.to_closed_form(e, 2) for e in elems]
        disagreements = []
        for (a, ca), (b, cb) in itertools.product(zip(elems, image), repeat=2):
            if limits.to_closed_form(col.add(a, b), 2) != closed.add(ca, cb):
                disagreements.append(("add", a, b))
            if col.leq(a, b) != closed.leq(ca, cb):
                disagreements.append(("leq", a, b))
            if col.waybelow(a, b) != closed.waybelow(ca, cb):
                disagreements.append(("waybelow", a, b))
        round_trip = all(col.eq(limits.from_closed_form(c, 2), e) for e, c in zip(elems, image))
    assert not disagreements, disagreements[:3]
    assert round_trip
    assert t.elapsed < 30


# -------------------------------------------------------------------- 10


@pytest.mark.criterion(10, "H_* of circle and interval match the K_* oracles")
def test_h_star_recovery():
    circle, interval = core.circle_model(), core.interval_model()
    assert functors.h_star(circle).to_json() == {"group": "Z^2", "cone": "{0} u (N+ x Z)", "unit": [1, 0]}
    assert functors.h_star(interval).to_json() == {"group": "Z", "cone": "N", "unit": 1}
    for m in (circle, interval):
        assert functors.compare_with_oracle(m) == []
    oracle = functors.k_star_oracle(circle)
    assert oracle.positive((1, -5)) and oracle.positive((0, 0)) and not oracle.positive((0, 1))


# -------------------------------------------------------------------- 11


@pytest.mark.criterion(11, "completion: compacts isomorphic to the input, re-completion stable")
def test_completion_round_trip():
    corpus = [m for m in limits.monoid_corpus() if len(m) <= 5]
    assert len(corpus) > 50
    for m in corpus:
        comp = limits.complete_ordered_monoid(m)
        assert comp.compacts_isomorphic(), m
        again = limits.complete_ordered_monoid(comp.as_presentation())
        assert limits.isomorphic(comp.as_presentation(), again.as_presentation()), m


# -------------------------------------------------------------------- 12


@pytest.mark.criterion(12, "each corrupted variant is caught with a replayable counterexample")
@pytest.mark.parametrize("fault", FAULTS)
def test_negative_controls(fault):
    caught = []
    for runner in (run_axiom_suite, run_structure_suite):
        report = runner(SampleConfig(seed=12, samples=200, model={"kind": "circle", "fault": fault}))
        caught += report.counterexamples
    assert caught, f"{fault} slipped through"
    assert all(replay(cx) for cx in caught)
    clean = run_axiom_suite(SampleConfig(seed=12, samples=200, model={"kind": "circle"}))
    assert all(not replay({**cx, "model": {"kind": "circle"}}) for cx in caught if cx["suite"] == "axioms")
    assert clean.passed
