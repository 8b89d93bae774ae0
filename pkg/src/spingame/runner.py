"""Mode dispatch: resolve a RunSpec, execute it, and build the report.

Every run produces a JSON-ready report embedding the fully resolved
configuration (defaults included) and a SHA-256 digest of it, so a report
can be replayed exactly from its own config section. Volatile fields
(timestamp, package version) live in a separate ``metadata`` section that
is excluded from the digest; repeated runs with the same spec and seed are
byte-identical outside ``metadata``.
"""

from __future__ import annotations

import datetime
import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .chsh import (
    OPTIMAL_ANGLES,
    ChshAngles,
    ConstantBitStrategy,
    RandomBitStrategy,
    chsh_arithmetic_game,
    chsh_cval,
    chsh_quantum,
    chsh_report,
    make_quantum_bit_players,
)
from .cvalspin import (
    correlation_exact,
    cval_spin,
    local_average_exact,
    local_quantum_average,
    support_indices,
    weak_value_parts,
)
from .errors import ConfigError
from .game import GameConfig, evaluate_conservation, run_game
from .hilbert import Direction, direction_operator, embed, expectation
from .runspec import (
    BIT_STRATEGIES,
    GAME_DEFAULT_ANGLES,
    GAME_STRATEGIES,
    RunSpec,
    ensure_full_support,
    parse_angles,
    parse_basis,
    parse_state,
    parse_xi,
)
from .strategies import (
    ConstantStrategy,
    RandomStrategy,
    SignStrategy,
    lhv_chsh_max,
    lhv_exhaustive_conservation,
    make_quantum_players,
)

THEOREM1_TOL = 1e-10
DEFAULT_TRIALS = 100
DEFAULT_ROUNDS = 20000


@dataclass(frozen=True)
class RunResult:
    report: dict
    transcript_csv: str | None = None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def build_report(mode: str, config: dict, results: dict) -> dict:
    digest = hashlib.sha256(canonical_json({"mode": mode, "config": config}).encode()).hexdigest()
    return {
        "mode": mode,
        "config": config,
        "config_digest": digest,
        "results": results,
        "metadata": {
            "package": "spingame",
            "version": __version__,
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    }


def _complex_pairs(arr):
    return [[float(z.real), float(z.imag)] for z in np.asarray(arr)]


def _basis_dict(basis):
    return {
        "labels": list(basis.labels),
        "pairs": [[_complex_pairs(k1), _complex_pairs(k2)] for k1, k2 in basis.pairs],
    }


def _xi_dict(xi_dist):
    return {
        "support": [float(x) for x in xi_dist.support],
        "weights": [float(w) for w in xi_dist.weights],
    }


def random_state(rng: np.random.Generator):
    amps = rng.normal(size=4) + 1j * rng.normal(size=4)
    amps /= np.linalg.norm(amps)
    from .hilbert import TwoQubitState

    return TwoQubitState(amps)


def random_direction(rng: np.random.Generator) -> Direction:
    v = rng.normal(size=3)
    norm = np.linalg.norm(v)
    while norm < 1e-12:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
    v = v / norm
    return Direction(float(v[0]), float(v[1]), float(v[2]))


def _run_theorem1(spec: RunSpec) -> RunResult:
    basis = parse_basis(spec.basis)
    xi_dist = parse_xi(spec.xi)
    trials = spec.rounds if spec.rounds is not None else DEFAULT_TRIALS
    rng = np.random.default_rng(spec.seed)
    max_corr_dev = 0.0
    max_local_dev = 0.0
    for _ in range(trials):
        state = random_state(rng)
        n1 = random_direction(rng)
        n2 = random_direction(rng)
        quantum = expectation(
            state, embed(direction_operator(n1), 1) @ embed(direction_operator(n2), 2))
        corr = correlation_exact(state, basis, xi_dist, n1, n2)
        max_corr_dev = max(max_corr_dev, abs(corr - quantum))
        for particle, n in ((1, n1), (2, n2)):
            local = local_average_exact(state, basis, xi_dist, n, particle)
            max_local_dev = max(max_local_dev, abs(local - local_quantum_average(state, n, particle)))
    passed = max_corr_dev <= THEOREM1_TOL and max_local_dev <= THEOREM1_TOL
    config = {
        "basis": _basis_dict(basis),
        "xi": _xi_dict(xi_dist),
        "trials": trials,
        "seed": spec.seed,
        "tolerance": THEOREM1_TOL,
        "workers": spec.workers,
    }
    results = {
        "trials": trials,
        "max_correlation_deviation": max_corr_dev,
        "max_local_average_deviation": max_local_dev,
        "tolerance": THEOREM1_TOL,
        "passed": passed,
    }
    return RunResult(build_report(spec.mode, config, results))


def _game_strategy(name: str):
    if name == "sign":
        return SignStrategy()
    if name == "random":
        return RandomStrategy()
    if name in ("constant:+1", "constant:-1"):
        return ConstantStrategy(1 if name.endswith("+1") else -1)
    raise ConfigError(f"unknown strategy {name!r}; expected one of {GAME_STRATEGIES}")


def _build_game_config(spec: RunSpec):
    state = parse_state(spec.state)
    basis = parse_basis(spec.basis)
    xi_dist = parse_xi(spec.xi)
    ensure_full_support(state, basis)
    angles = parse_angles(spec.angles if spec.angles is not None else GAME_DEFAULT_ANGLES, 4)
    menu_a = (Direction.from_polar(angles[0]), Direction.from_polar(angles[1]))
    menu_b = (Direction.from_polar(angles[2]), Direction.from_polar(angles[3]))
    rounds = spec.rounds if spec.rounds is not None else DEFAULT_ROUNDS
    config = GameConfig.uniform_pairs(state, basis, xi_dist, menu_a, menu_b,
                                      rounds, spec.seed, spec.sigma_k)
    return config, angles


def _run_game_mode(spec: RunSpec) -> RunResult:
    config, angles = _build_game_config(spec)
    name_a = spec.strategy_a or "quantum"
    name_b = spec.strategy_b or "quantum"
    for name in (name_a, name_b):
        if name not in GAME_STRATEGIES:
            raise ConfigError(f"unknown strategy {name!r}; expected one of {GAME_STRATEGIES}")
    if (name_a == "quantum") != (name_b == "quantum"):
        raise ConfigError("the quantum strategy must be used by both players")
    if name_a == "quantum":
        strategy_a, strategy_b, shared = make_quantum_players(config)
    else:
        strategy_a = _game_strategy(name_a)
        strategy_b = _game_strategy(name_b)
        shared = ()
    transcript = run_game(config, strategy_a, strategy_b, shared)
    report = evaluate_conservation(transcript, config)
    estimates = [p.estimate for p in report.pairs]
    results = {
        "conservation": report.as_dict(),
        "strategy_a": name_a,
        "strategy_b": name_b,
        "transcript_digest": hashlib.sha256(
            transcript.to_csv_string().encode()).hexdigest(),
    }
    if len(estimates) == 4:
        combo = estimates[0] + estimates[1] + estimates[2] - estimates[3]
        stderr = math.sqrt(sum(p.stderr ** 2 for p in report.pairs))
        results["chsh_estimate"] = {"combined": combo, "abs_combined": abs(combo),
                                    "stderr": stderr}
    config_dict = dict(config.as_dict(), angles=list(angles),
                       strategy_a=name_a, strategy_b=name_b, workers=spec.workers)
    return RunResult(build_report(spec.mode, config_dict, results),
                     transcript.to_csv_string())


def _run_lhv(spec: RunSpec) -> RunResult:
    state = parse_state(spec.state)
    basis = parse_basis(spec.basis)
    xi_dist = parse_xi(spec.xi)
    ensure_full_support(state, basis)
    angles = parse_angles(spec.angles if spec.angles is not None else OPTIMAL_ANGLES, 4)
    chsh_angles = ChshAngles(*angles)
    menu_a = (Direction.from_polar(angles[0]), Direction.from_polar(angles[1]))
    menu_b = (Direction.from_polar(angles[2]), Direction.from_polar(angles[3]))
    config = GameConfig.uniform_pairs(state, basis, xi_dist, menu_a, menu_b,
                                      rounds=1, seed=spec.seed, sigma_k=spec.sigma_k)
    quantum_value = chsh_quantum(state, chsh_angles)
    cval_value = chsh_cval(state, basis, xi_dist, chsh_angles)
    max_entry_diff = max(abs(q - c) for q, c in
                         zip(quantum_value.correlations, cval_value.correlations))
    chsh_max = lhv_chsh_max(menu_a, menu_b, quantum_value.correlations)
    conservation = lhv_exhaustive_conservation(config)
    config_dict = {
        "state": _complex_pairs(state.amplitudes),
        "basis": _basis_dict(basis),
        "xi": _xi_dict(xi_dist),
        "angles": list(angles),
        "seed": spec.seed,
        "workers": spec.workers,
    }
    results = {
        "chsh": {
            "quantum": chsh_report(chsh_angles, quantum_value),
            "cval": chsh_report(chsh_angles, cval_value),
            "max_entrywise_difference": max_entry_diff,
        },
        "lhv_chsh_max": chsh_max.as_dict(),
        "conservation_search": conservation.as_dict(),
    }
    return RunResult(build_report(spec.mode, config_dict, results))


def _run_chsh_game(spec: RunSpec) -> RunResult:
    state = parse_state(spec.state)
    rounds = spec.rounds if spec.rounds is not None else DEFAULT_ROUNDS
    name_a = spec.strategy_a or "quantum"
    name_b = spec.strategy_b or "quantum"
    for name in (name_a, name_b):
        if name not in BIT_STRATEGIES:
            raise ConfigError(f"unknown strategy {name!r}; expected one of {BIT_STRATEGIES}")
    if (name_a == "quantum") != (name_b == "quantum"):
        raise ConfigError("the quantum strategy must be used by both players")
    rng = np.random.default_rng(spec.seed)
    if name_a == "quantum":
        strategy_a, strategy_b, source = make_quantum_bit_players(state)
    else:
        source = None

        def bit_strategy(name):
            if name == "constant0":
                return ConstantBitStrategy(0)
            if name == "constant1":
                return ConstantBitStrategy(1)
            return RandomBitStrategy()

        strategy_a = bit_strategy(name_a)
        strategy_b = bit_strategy(name_b)
    outcome = chsh_arithmetic_game(strategy_a, strategy_b, source, rounds, rng)
    config_dict = {
        "state": _complex_pairs(state.amplitudes),
        "rounds": rounds,
        "seed": spec.seed,
        "strategy_a": name_a,
        "strategy_b": name_b,
        "workers": spec.workers,
    }
    results = {
        "game": outcome.as_dict(),
        "classical_bound": 0.75,
        "quantum_value": (2.0 + math.sqrt(2.0)) / 4.0,
    }
    return RunResult(build_report(spec.mode, config_dict, results))


def _run_cval_table(spec: RunSpec) -> RunResult:
    state = parse_state(spec.state)
    basis = parse_basis(spec.basis)
    xi_dist = parse_xi(spec.xi)
    ensure_full_support(state, basis)
    angles = parse_angles(spec.angles if spec.angles is not None else OPTIMAL_ANGLES)
    rows = []
    for theta in angles:
        n = Direction.from_polar(theta)
        for eta in support_indices(state, basis):
            parts = weak_value_parts(state, basis, eta, n, spec.particle)
            for xi in xi_dist.support:
                rows.append({
                    "angle": theta,
                    "eta_index": eta,
                    "eta_label": basis.labels[eta],
                    "xi": float(xi),
                    "re_part": parts.re_part,
                    "im_part": parts.im_part,
                    "s_tilde": cval_spin(state, basis, eta, float(xi), n, spec.particle),
                })
    config_dict = {
        "state": _complex_pairs(state.amplitudes),
        "basis": _basis_dict(basis),
        "xi": _xi_dict(xi_dist),
        "angles": list(angles),
        "particle": spec.particle,
        "seed": spec.seed,
        "workers": spec.workers,
    }
    return RunResult(build_report(spec.mode, config_dict, {"rows": rows}))


_MODE_RUNNERS = {
    "verify-theorem1": _run_theorem1,
    "run-game": _run_game_mode,
    "lhv-search": _run_lhv,
    "chsh-game": _run_chsh_game,
    "cval-table": _run_cval_table,
}


def run(spec: RunSpec) -> RunResult:
    """Execute one run specification and return its report (plus the CSV
    transcript for run-game)."""
    return _MODE_RUNNERS[spec.mode](spec)
