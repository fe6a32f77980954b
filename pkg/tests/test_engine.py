import itertools
import random
from fractions import Fraction as F

import pytest

from extlab.lattice import Domain, FiniteModule, CapExceeded
from extlab.measures import (Measure, WordSet, tv_distance, convex_combine,
                             finite_window_entropy, is_locally_stationary,
                             support_word_set, random_stationary_measure)
from extlab.markov import MarkovExtension
from extlab.engine import (build_window_polytope, sft_emptiness, fill_window,
                           periodic_config_search, enumerate_periodic_configs,
                           periodic_extension, pullback_periodic,
                           transported_base, compute_H, epsilon_bound,
                           refute_nonextendible)
from extlab.lp import FEASIBLE, INFEASIBLE
from extlab import harmonic
from extlab.corpus import (disconnected_counterexample, pseudolattice_measure,
                           binary_counter_measure, binary_counter_support)

from support import brute_force_fillable, random_measure


def biased_pair():
    return Measure(Domain.interval(0, 1), 2,
                   {(0, 0): F(3, 8), (0, 1): F(1, 8),
                    (1, 0): F(1, 8), (1, 1): F(3, 8)})


# ---------------------------------------------------------------------------
# window polytopes


def test_polytope_contains_markov_window():
    base = biased_pair()
    ext = MarkovExtension(base)
    for n in (2, 3, 4):
        P = build_window_polytope(base, Domain.interval(0, n - 1))
        assert P.contains(ext.window_measure(n))


def test_polytope_solution_is_stationary_extension():
    rng = random.Random(6)
    for _ in range(5):
        base = random_stationary_measure(2, 2, rng)
        P = build_window_polytope(base, Domain.interval(0, 3))
        res = P.solve()
        assert res.status == FEASIBLE
        mu = P.to_measure(res.assignment)
        assert is_locally_stationary(mu).ok
        for t in range(3):
            assert mu.marginal(Domain.interval(t, t + 1)).masses \
                == base.masses


def test_polytope_vertices_have_base_marginal():
    base = biased_pair()
    P = build_window_polytope(base, Domain.interval(0, 2))
    vs = P.vertices(max_count=10, seed=2)
    assert vs
    for v in vs:
        assert v.marginal(Domain.interval(0, 1)).masses == base.masses
        # frequency-domain cross-checks agree with the exact ones
        ok, _ = harmonic.check_stationarity_fourier(v)
        assert ok
        ok, _ = harmonic.check_extension_fourier(base, v)
        assert ok


def test_polytope_infeasible_for_disconnected():
    mu = disconnected_counterexample()
    P = build_window_polytope(mu, Domain.interval(0, 3))
    assert P.solve().status == INFEASIBLE


def test_polytope_2d():
    mu = Measure.product_measure([F(1, 3), F(2, 3)], Domain.box(2, 2))
    P = build_window_polytope(mu, Domain.box(2, (3, 2)))
    res = P.solve()
    assert res.status == FEASIBLE
    got = P.to_measure(res.assignment)
    assert got.marginal(Domain.box(2, 2).shift((1, 0))).masses == mu.masses


def test_polytope_cap():
    mu = pseudolattice_measure()
    with pytest.raises(CapExceeded):
        build_window_polytope(mu, Domain.box(2, 3), cap=10 ** 4)


def test_polytope_rejects_oversized_base():
    mu = biased_pair()
    with pytest.raises(ValueError):
        build_window_polytope(mu, Domain.interval(0, 0))


# ---------------------------------------------------------------------------
# SFT searches


def golden_mean():
    # no two adjacent 1s, as a width-2 word set
    return WordSet(Domain.interval(0, 1), 2, [(0, 0), (0, 1), (1, 0)])


def test_fill_window_golden_mean():
    filled = fill_window(golden_mean(), Domain.interval(0, 5))
    assert filled is not None
    vals = [filled[(i,)] for i in range(6)]
    assert all(not (a and b) for a, b in zip(vals, vals[1:]))


def test_fill_window_matches_brute_force():
    rng = random.Random(12)
    for _ in range(30):
        A = rng.choice([2, 3])
        U = Domain.box(2, (rng.randint(1, 2), rng.randint(1, 2)))
        allw = list(itertools.product(range(A), repeat=len(U)))
        words = [w for w in allw if rng.random() < 0.4]
        if not words:
            words = [allw[0]]
        T = WordSet(U, A, words)
        W = Domain.box(2, (3, 2))
        got = fill_window(T, W) is not None
        assert got == brute_force_fillable(T, W)


def test_sft_emptiness_verdicts():
    full = WordSet(Domain.interval(0, 1), 2,
                   [(0, 0), (0, 1), (1, 0), (1, 1)])
    assert sft_emptiness(full, max_side=4).status == "unknown"
    # 01 alone admits no length-3 word: 0 must follow 1 and precede 1
    dead = WordSet(Domain.interval(0, 1), 2, [(0, 1)])
    res = sft_emptiness(dead, max_side=4)
    assert res.status == "empty"
    assert res.window.points == ((0,), (1,), (2,))


def test_periodic_config_search_golden_mean():
    res = periodic_config_search(golden_mean(), (2,))
    assert res.status == "found"
    assert set(res.config.values()) <= {0, 1}
    # all-ones word set has no admissible config at odd periods > 1? no:
    # alternating needs even period
    alt = WordSet(Domain.interval(0, 1), 2, [(0, 1), (1, 0)])
    assert periodic_config_search(alt, (2,)).status == "found"
    assert periodic_config_search(alt, (3,)).status == "none"


def test_periodic_wrap_shorter_than_domain():
    # period 1 wraps the whole window onto one cell: constant words only
    T = WordSet(Domain.interval(0, 2), 2, [(0, 0, 0), (0, 1, 1)])
    res = periodic_config_search(T, (1,))
    assert res.status == "found"
    assert res.config == {(0,): 0}


def test_enumerate_periodic_configs_counts():
    # golden mean on a 3-cycle: 000, 001, 010, 100
    configs = enumerate_periodic_configs(golden_mean(), (3,))
    assert len(configs) == 4


# ---------------------------------------------------------------------------
# periodic extensions


def test_uniform_product_torus():
    mu = Measure.uniform(Domain.box(2, 2), 2)
    res = periodic_extension(mu, (4, 4))
    assert res.status == FEASIBLE
    assert res.config_count == 2 ** 16
    pb = pullback_periodic(res.torus_measure, res.module, Domain.box(2, 2))
    assert pb.masses == mu.masses
    # larger pullback windows stay consistent on every translate
    big = pullback_periodic(res.torus_measure, res.module,
                            Domain.box(2, (3, 2)))
    assert big.marginal(Domain.box(2, 2).shift((1, 0))).masses == mu.masses


def test_disconnected_has_no_periodic_extension():
    mu = disconnected_counterexample()
    assert periodic_extension(mu, (8,)).status == INFEASIBLE


def test_periodic_extension_requires_injectivity():
    mu = disconnected_counterexample()
    with pytest.raises(ValueError):
        periodic_extension(mu, (2,))


def test_counter_3_torus_cases():
    mu = binary_counter_measure(3)
    res = periodic_extension(mu, (4, 8))
    assert res.status == FEASIBLE
    # the counting configuration's orbit measure is itself a solution:
    # 32 distinct translates of the canonical configuration
    T = binary_counter_support(3)
    configs = enumerate_periodic_configs(T, (4, 8))
    aligned = [c for c in configs if is_counting_config(c, (4, 8))]
    assert len(aligned) == 32
    orbit = Measure(res.torus_measure.domain, 2,
                    {c: F(1, 32) for c in aligned})
    assert orbit.marginal(transported_base(mu, res.module).domain).masses \
        == transported_base(mu, res.module).masses
    # the word-set subshift also has phase-slip configurations, which
    # make the smaller torus (4,4) exactly feasible as well
    res44 = periodic_extension(mu, (4, 4))
    assert res44.status == FEASIBLE
    assert res44.config_count == 36


def is_counting_config(cfg, periods):
    """cfg is a translate of: row y = bits(y), big-endian, 0 separator."""
    mod = FiniteModule(periods)
    cells = mod.elements()
    grid = dict(zip(cells, cfg))
    k = periods[0] - 1
    for dx in range(periods[0]):
        for dy in range(periods[1]):
            if all(grid[((x + dx) % periods[0], (y + dy) % periods[1])]
                   == (((y >> (k - 1 - x)) & 1) if x < k else 0)
                   for x in range(periods[0]) for y in range(periods[1])):
                return True
    return False


def test_counter_1_torus_orbit():
    mu = binary_counter_measure(1)
    assert len(mu.masses) == 4
    res = periodic_extension(mu, (2, 2))
    assert res.status == FEASIBLE
    # [DERIVED] brute force over all 16 torus configs: exactly the four
    # translates of the single-one pattern are admissible
    assert res.config_count == 4
    pb = pullback_periodic(res.torus_measure, res.module, mu.domain)
    assert pb.masses == mu.masses


def test_transported_base_wraps():
    mu = binary_counter_measure(3)
    tb = transported_base(mu, FiniteModule((4, 8)))
    assert tb.domain.points[0] == (0, 0)   # x = 4 wrapped to 0
    assert tb.total_mass() == 1


# ---------------------------------------------------------------------------
# H, epsilon, and the stability ball


def test_compute_H_known_values():
    assert compute_H(FiniteModule((2,)), Domain(1, [(0,)]), 2) == 3
    assert compute_H(FiniteModule((4,)), Domain.interval(0, 1), 2) == 9


def test_compute_H_bounds_random():
    rng = random.Random(14)
    for _ in range(20):
        dim = rng.choice([1, 2])
        periods = tuple(rng.choice([2, 3, 4]) for _ in range(dim))
        mod = FiniteModule(periods)
        A = rng.choice([2, 3])
        pts = rng.sample(mod.elements(), rng.randint(1, min(3, mod.size)))
        U = Domain(dim, pts)
        assert mod.injective_on(U)
        H = compute_H(mod, U, A)
        assert 1 <= H <= A ** mod.size            # bound (A)
        assert H <= mod.size * A ** len(U)        # bound (B)


def test_epsilon_bound_value():
    mu = Measure.uniform(Domain.interval(0, 1), 2)
    res = periodic_extension(mu, (4,))
    eps = epsilon_bound(res.torus_measure, res.module, mu.domain, 2)
    assert eps == F(1, 144)


def test_epsilon_ball_extendibility():
    # everything within TV < eps/2 of the uniform pair is (4,)-extendible
    rng = random.Random(15)
    mu = Measure.uniform(Domain.interval(0, 1), 2)
    for _ in range(8):
        pert = random_stationary_measure(2, 2, rng)
        d = tv_distance(mu, pert)
        t = F(1, 300) / d if d > F(1, 300) else F(1)
        close = convex_combine(t, mu, pert)
        assert tv_distance(mu, close) < F(1, 288)
        assert periodic_extension(close, (4,)).status == FEASIBLE


def test_epsilon_bound_needs_full_support():
    mu = binary_counter_measure(1)
    res = periodic_extension(mu, (2, 2))
    with pytest.raises(ValueError):
        epsilon_bound(res.torus_measure, res.module, mu.domain, 2)


# ---------------------------------------------------------------------------
# the refutation pipeline


def test_refute_disconnected_by_chain():
    rep = refute_nonextendible(disconnected_counterexample(), max_window=4)
    assert rep.verdict == "refuted"
    assert rep.method == "entropy-chain"
    assert rep.window.points == ((0,), (1,), (2,), (3,))


def test_refute_disconnected_by_lp_alone():
    # with the support full-shift trick unavailable, the LP still refutes:
    # use a non-uniform rho so the chain sees the same structure; here we
    # verify directly that the LP window B(4) is infeasible
    mu = disconnected_counterexample()
    P = build_window_polytope(mu, Domain.box(1, 4))
    assert P.solve().status == INFEASIBLE


def test_refute_pseudolattice_by_tiling():
    rep = refute_nonextendible(pseudolattice_measure(), max_window=6,
                               lp_cap=10 ** 4)
    assert rep.verdict == "refuted"
    assert rep.method == "tiling"
    side = rep.window.bounding_box()
    assert all(hi - lo + 1 <= 6 for lo, hi in side)


def test_refute_unknown_on_extendible():
    base = biased_pair()
    rep = refute_nonextendible(base, max_window=4)
    assert rep.verdict == "unknown"
    assert "feasible_up_to" in rep.detail


def test_refute_report_serializes():
    rep = refute_nonextendible(disconnected_counterexample(), max_window=4)
    data = rep.to_json_dict()
    assert data["verdict"] == "refuted"
    assert data["window"] == [[0], [1], [2], [3]]
