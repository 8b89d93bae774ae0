"""Acceptance suite: one test per release criterion, each printing a
PASS line with the measured numbers when its assertions hold."""

import json
import math
import time

import numpy as np

from conftest import random_direction, random_product_state, random_state
from spingame.chsh import (
    ChshAngles,
    ConstantBitStrategy,
    OPTIMAL_ANGLES,
    chsh_arithmetic_game,
    chsh_cval,
    chsh_quantum,
    make_quantum_bit_players,
)
from spingame.cli import main as cli_main
from spingame.cvalspin import (
    XiDistribution,
    correlation_exact,
    cval_spin,
    local_average_exact,
    local_quantum_average,
)
from spingame.game import GameConfig, evaluate_conservation, run_game
from spingame.hilbert import (
    Direction,
    direction_operator,
    eigenprojectors,
    embed,
    expectation,
    make_reference_basis_yx,
    make_singlet,
)
from spingame.runspec import GAME_DEFAULT_ANGLES
from spingame.strategies import (
    DeterministicTable,
    SharedPairSource,
    SignStrategy,
    lhv_chsh_max,
    lhv_exhaustive_conservation,
    make_quantum_players,
    make_table_players,
)

SINGLET = make_singlet()
YX = make_reference_basis_yx()
XI_TWO = XiDistribution.two_point()
XI_THREE = XiDistribution.three_point()
LHV_GAP_PER_PAIR = (2 * math.sqrt(2) - 2) / 4

# per-label sign patterns of the singlet spin values in the y/x basis
SINGLET_SIGNS = ((-1, -1), (1, 1), (-1, 1), (1, -1))


def game_config(rounds, seed, sigma_k=3.0):
    angles = GAME_DEFAULT_ANGLES
    return GameConfig.uniform_pairs(
        SINGLET, YX, XI_TWO,
        (Direction.from_polar(angles[0]), Direction.from_polar(angles[1])),
        (Direction.from_polar(angles[2]), Direction.from_polar(angles[3])),
        rounds, seed, sigma_k)


def test_criterion_01_correlation_identity_exact():
    start = time.monotonic()
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(100):
        state = random_state(rng)
        n1, n2 = random_direction(rng), random_direction(rng)
        quantum = expectation(
            state, embed(direction_operator(n1), 1) @ embed(direction_operator(n2), 2))
        for xi_dist in (XI_TWO, XI_THREE):
            worst = max(worst, abs(
                correlation_exact(state, YX, xi_dist, n1, n2) - quantum))
    elapsed = time.monotonic() - start
    assert worst <= 1e-10
    assert elapsed < 1.0
    print(f"\ncriterion 1 PASS: max |exact - quantum| = {worst:.3e} "
          f"over 100 states x 2 xi distributions in {elapsed:.2f}s")


def test_criterion_02_singlet_closed_forms():
    rng = np.random.default_rng(102)
    worst_table = 0.0
    for theta in list(rng.uniform(-math.pi, math.pi, size=8)) + [0.0, math.pi / 2]:
        n = Direction.from_polar(theta)
        for eta in range(4):
            sa, sc = SINGLET_SIGNS[eta]
            for xi in (1.0, -1.0):
                expected = sa * math.sin(theta) + sc * xi * math.cos(theta)
                got = cval_spin(SINGLET, YX, eta, xi, n, 1)
                worst_table = max(worst_table, abs(got - expected))
    assert worst_table <= 1e-12

    grid = np.linspace(0.0, 2 * math.pi, 19)
    worst_corr = 0.0
    for t1 in grid:
        for t2 in grid:
            got = correlation_exact(SINGLET, YX, XI_TWO,
                                    Direction.from_polar(t1), Direction.from_polar(t2))
            worst_corr = max(worst_corr, abs(got + math.cos(t2 - t1)))
    assert worst_corr <= 1e-12
    print(f"\ncriterion 2 PASS: spin table error {worst_table:.3e}, "
          f"19x19 correlation grid error {worst_corr:.3e}")


def test_criterion_03_anticorrelation_and_local_averages():
    grid = np.linspace(0.0, 2 * math.pi, 19)
    worst_flip = 0.0
    for theta in grid:
        n = Direction.from_polar(theta)
        for eta in range(4):
            for xi in (1.0, -1.0):
                s1 = cval_spin(SINGLET, YX, eta, xi, n, 1)
                s2 = cval_spin(SINGLET, YX, eta, xi, n, 2)
                worst_flip = max(worst_flip, abs(s1 + s2))
    assert worst_flip <= 1e-12

    rng = np.random.default_rng(103)
    worst_local = 0.0
    for _ in range(50):
        state = random_state(rng)
        n = random_direction(rng)
        for particle in (1, 2):
            got = local_average_exact(state, YX, XI_TWO, n, particle)
            worst_local = max(worst_local, abs(got - local_quantum_average(state, n, particle)))
    assert worst_local <= 1e-12
    print(f"\ncriterion 3 PASS: sign-flip error {worst_flip:.3e}, "
          f"local-average error {worst_local:.3e} over 50 states")


def test_criterion_04_classical_ceiling():
    start = time.monotonic()
    rng = np.random.default_rng(104)
    for _ in range(20):
        menu_a = (random_direction(rng), random_direction(rng))
        menu_b = (random_direction(rng), random_direction(rng))
        result = lhv_chsh_max(menu_a, menu_b, rng.uniform(-1, 1, size=4))
        assert result.best_chsh == 2.0

    config = game_config(rounds=1, seed=0)
    search = lhv_exhaustive_conservation(config)
    assert search.deviation >= LHV_GAP_PER_PAIR - 1e-12

    worst_product = 0.0
    menu_a, menu_b = config.menu_a, config.menu_b
    for _ in range(20):
        state = random_product_state(rng)
        product_config = GameConfig.uniform_pairs(state, YX, XI_TWO, menu_a, menu_b,
                                                  rounds=1, seed=0)
        deviation = lhv_exhaustive_conservation(product_config).deviation
        worst_product = max(worst_product, deviation)
    elapsed = time.monotonic() - start
    assert worst_product <= 1e-8
    assert elapsed < 10.0
    print(f"\ncriterion 4 PASS: singlet min worst-pair deviation "
          f"{search.deviation:.12f} >= {LHV_GAP_PER_PAIR:.12f}, product-state max "
          f"deviation {worst_product:.2e}, in {elapsed:.2f}s")


def test_criterion_05_quantum_chsh_value():
    angles = ChshAngles(*OPTIMAL_ANGLES)
    quantum = chsh_quantum(SINGLET, angles)
    hidden = chsh_cval(SINGLET, YX, XI_TWO, angles)
    assert abs(abs(quantum.combined) - 2 * math.sqrt(2)) <= 1e-10
    assert abs(abs(hidden.combined) - 2 * math.sqrt(2)) <= 1e-10
    worst = max(abs(q - c) for q, c in zip(quantum.correlations, hidden.correlations))
    assert worst <= 1e-10
    print(f"\ncriterion 5 PASS: |C| quantum {abs(quantum.combined):.12f}, "
          f"hidden-variable {abs(hidden.combined):.12f}, entrywise gap {worst:.2e}")


def test_criterion_06_quantum_strategy_wins_at_scale():
    start = time.monotonic()
    config = game_config(rounds=100_000, seed=106)
    strategy_a, strategy_b, shared = make_quantum_players(config)
    transcript = run_game(config, strategy_a, strategy_b, shared)
    report = evaluate_conservation(transcript, config)
    elapsed = time.monotonic() - start
    for pair in report.pairs:
        assert abs(pair.estimate - pair.target) <= 3 * pair.stderr
    assert report.overall_pass
    estimates = [p.estimate for p in report.pairs]
    combo = estimates[0] + estimates[1] + estimates[2] - estimates[3]
    combo_stderr = math.sqrt(sum(p.stderr**2 for p in report.pairs))
    assert abs(combo) > 2.0 + 5 * combo_stderr
    assert elapsed < 30.0
    print(f"\ncriterion 6 PASS: conservation verdict pass at N=1e5, "
          f"|CHSH| estimate {abs(combo):.4f} > 2 + 5*{combo_stderr:.4f}, "
          f"in {elapsed:.1f}s")


def test_criterion_07_classical_strategies_lose_at_scale():
    config = game_config(rounds=100_000, seed=107)
    rng = np.random.default_rng(1070)

    def run_pair(strategy_a, strategy_b, label):
        transcript = run_game(config, strategy_a, strategy_b)
        report = evaluate_conservation(transcript, config)
        worst = max(p.deviation for p in report.pairs)
        threshold = max(LHV_GAP_PER_PAIR - 3 * p.stderr for p in report.pairs)
        assert worst > threshold, (label, worst, threshold)
        assert not report.overall_pass, label
        return worst

    worst_sign = run_pair(SignStrategy(), SignStrategy(), "sign")
    worsts = []
    for i in range(10):
        table_a = DeterministicTable.random(rng, 2, 4, XI_TWO.support)
        table_b = DeterministicTable.random(rng, 2, 4, XI_TWO.support)
        strategy_a, strategy_b = make_table_players(config, table_a, table_b)
        worsts.append(run_pair(strategy_a, strategy_b, f"table-{i}"))
    print(f"\ncriterion 7 PASS: sign strategy worst-pair deviation "
          f"{worst_sign:.4f}, random tables min {min(worsts):.4f}, "
          f"all > {LHV_GAP_PER_PAIR:.4f} - 3*stderr and all reports fail")


def test_criterion_08_arithmetic_game_values():
    rng = np.random.default_rng(108)
    classical = chsh_arithmetic_game(ConstantBitStrategy(0), ConstantBitStrategy(0),
                                     None, 100_000, rng)
    sigma_c = math.sqrt(0.75 * 0.25 / classical.rounds)
    assert abs(classical.frequency - 0.75) < 4 * sigma_c

    strategy_a, strategy_b, source = make_quantum_bit_players()
    quantum = chsh_arithmetic_game(strategy_a, strategy_b, source, 100_000, rng)
    expected = (2 + math.sqrt(2)) / 4
    sigma_q = math.sqrt(expected * (1 - expected) / quantum.rounds)
    assert abs(quantum.frequency - expected) < 4 * sigma_q
    print(f"\ncriterion 8 PASS: classical win {classical.frequency:.4f} "
          f"(target 0.75), quantum win {quantum.frequency:.4f} "
          f"(target {expected:.4f}) at N=1e5")


def test_criterion_09_collapse_soundness():
    rng = np.random.default_rng(109)
    trials = 100_000
    worst_sigma_units = 0.0
    for _ in range(10):
        state = random_state(rng)
        n1, n2 = random_direction(rng), random_direction(rng)
        plus1, minus1 = eigenprojectors(n1)
        plus2, minus2 = eigenprojectors(n2)
        proj = {(1, 1): plus1, (1, -1): minus1, (2, 1): plus2, (2, -1): minus2}
        exact = {
            (o1, o2): expectation(state, embed(proj[(1, o1)], 1) @ embed(proj[(2, o2)], 2))
            for o1 in (1, -1) for o2 in (1, -1)
        }
        for order in ((1, 2), (2, 1)):
            source = SharedPairSource(state)
            counts = {}
            for _ in range(trials):
                source.begin_round()
                outcomes = {}
                for particle in order:
                    n = n1 if particle == 1 else n2
                    outcomes[particle] = source.measure(particle, n, rng)
                key = (outcomes[1], outcomes[2])
                counts[key] = counts.get(key, 0) + 1
            for key, p in exact.items():
                freq = counts.get(key, 0) / trials
                sigma = math.sqrt(max(p * (1 - p), 1e-12) / trials)
                assert abs(freq - p) < 4 * sigma, (key, freq, p, order)
                worst_sigma_units = max(worst_sigma_units, abs(freq - p) / sigma)
    print(f"\ncriterion 9 PASS: joint collapse frequencies within 4 sigma "
          f"(worst {worst_sigma_units:.2f} sigma) for 10 configs, both orders, N=1e5")


def test_criterion_10_determinism(tmp_path):
    out1, out2 = tmp_path / "first", tmp_path / "second"
    args = ["--mode", "run-game", "--rounds", "2000", "--seed", "4242"]
    assert cli_main(args + ["--out", str(out1)]) == 0
    assert cli_main(args + ["--out", str(out2)]) == 0
    with open(out1 / "report.json") as fh:
        r1 = json.load(fh)
    with open(out2 / "report.json") as fh:
        r2 = json.load(fh)
    # only the timestamp inside the metadata section may differ
    r1["metadata"].pop("generated_at")
    r2["metadata"].pop("generated_at")
    blob1 = json.dumps(r1, sort_keys=True)
    blob2 = json.dumps(r2, sort_keys=True)
    assert blob1 == blob2
    t1 = (out1 / "transcript.csv").read_bytes()
    t2 = (out2 / "transcript.csv").read_bytes()
    assert t1 == t2
    print("\ncriterion 10 PASS: repeated runs byte-identical outside metadata "
          f"({len(t1)} transcript bytes compared)")
