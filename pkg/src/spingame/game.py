"""Referee harness for the correlation-conserving mapping game.

Each round the referee draws a hidden sample (basis label, xi) from the
Born-weighted joint distribution, picks a direction pair from the agreed
menus, computes the two continuous spin values, and hands each player only
its own triple (label, xi, spin value). Players answer with +1 or -1 in
isolation: a strategy's ``respond`` call receives exactly its own triple,
its own menu, its own private state, and its own random stream, and the
harness provides no other channel between the players after the game
starts (pre-shared resources passed to ``run_game`` are ticked by the
harness but never routed through it).

The verdict compares, per direction pair, the empirical correlation of the
outputs against the exact ensemble correlation of the inputs; a pair
passes when the deviation is within ``sigma_k`` standard errors, with the
standard error floored at 1/sqrt(count).
"""

from __future__ import annotations

import bisect
import csv
import hashlib
import io
import json
import math
import weakref
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .cvalspin import (
    SUPPORT_TOL,
    HiddenSample,
    XiDistribution,
    born_weights,
    correlation_exact,
    cval_spin,
)
from .errors import InsufficientDataError
from .hilbert import ATOL, Direction, ReferenceBasis, TwoQubitState


@dataclass(frozen=True)
class Triple:
    """Per-round message to one player: basis label index, xi value, and
    that player's continuous spin value along the referee's direction."""

    eta_index: int
    xi: float
    s_tilde: float


@dataclass(frozen=True)
class RoundRecord:
    pair_index: int
    hidden: HiddenSample
    triple_a: Triple
    triple_b: Triple
    out_a: int
    out_b: int


@dataclass(frozen=True)
class ViolationRecord:
    """A round discarded because a player emitted a value outside {-1, +1}."""

    round_index: int
    pair_index: int
    side: str
    raw_value: object


@dataclass(frozen=True)
class Transcript:
    config_digest: str
    records: tuple
    violations: tuple

    def to_csv_string(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["round", "pair_index", "eta_index", "xi",
             "s_tilde_A", "s_tilde_B", "out_A", "out_B"]
        )
        for i, rec in enumerate(self.records):
            writer.writerow(
                [i, rec.pair_index, rec.triple_a.eta_index, repr(rec.triple_a.xi),
                 repr(rec.triple_a.s_tilde), repr(rec.triple_b.s_tilde),
                 rec.out_a, rec.out_b]
            )
        return buf.getvalue()

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(self.to_csv_string())


class Strategy(Protocol):
    """Player interface. ``respond`` must return exactly +1 or -1."""

    name: str

    def init_state(self) -> dict: ...

    def respond(self, triple: Triple, menu, private_state: dict,
                rng: np.random.Generator) -> int: ...


@dataclass(frozen=True, eq=False)
class GameConfig:
    """Pre-game agreement: state, reference basis, xi distribution,
    direction menus, pair sampling weights, round count, and seed."""

    state: TwoQubitState
    basis: ReferenceBasis
    xi_dist: XiDistribution
    menu_a: tuple
    menu_b: tuple
    pair_weights: tuple
    rounds: int
    seed: int
    sigma_k: float = 3.0
    support_tol: float = SUPPORT_TOL

    def __post_init__(self):
        if not self.menu_a or not self.menu_b:
            raise ValueError("direction menus must be non-empty")
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        n_pairs = len(self.menu_a) * len(self.menu_b)
        weights = tuple(float(w) for w in self.pair_weights)
        if len(weights) != n_pairs:
            raise ValueError(f"expected {n_pairs} pair weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise ValueError("pair weights must be nonnegative")
        if abs(sum(weights) - 1.0) > ATOL:
            raise ValueError("pair weights must sum to 1")
        object.__setattr__(self, "pair_weights", weights)
        object.__setattr__(self, "menu_a", tuple(self.menu_a))
        object.__setattr__(self, "menu_b", tuple(self.menu_b))
        object.__setattr__(self, "_pairs", tuple(
            (ia, ib) for ia in range(len(self.menu_a)) for ib in range(len(self.menu_b))
        ))

    @classmethod
    def uniform_pairs(cls, state, basis, xi_dist, menu_a, menu_b, rounds, seed,
                      sigma_k=3.0) -> "GameConfig":
        n = len(menu_a) * len(menu_b)
        return cls(state, basis, xi_dist, tuple(menu_a), tuple(menu_b),
                   tuple([1.0 / n] * n), rounds, seed, sigma_k)

    @property
    def pairs(self):
        """Direction pairs in row-major order over (menu_a slot, menu_b slot)."""
        return self._pairs

    def as_dict(self) -> dict:
        def c_pairs(arr):
            return [[float(z.real), float(z.imag)] for z in np.asarray(arr)]

        return {
            "state": c_pairs(self.state.amplitudes),
            "basis": {
                "labels": list(self.basis.labels),
                "pairs": [[c_pairs(k1), c_pairs(k2)] for k1, k2 in self.basis.pairs],
            },
            "xi": {
                "support": [float(x) for x in self.xi_dist.support],
                "weights": [float(w) for w in self.xi_dist.weights],
            },
            "menu_a": [[d.nx, d.ny, d.nz] for d in self.menu_a],
            "menu_b": [[d.nx, d.ny, d.nz] for d in self.menu_b],
            "pair_weights": list(self.pair_weights),
            "rounds": self.rounds,
            "seed": self.seed,
            "sigma_k": self.sigma_k,
            "support_tol": self.support_tol,
        }

    def digest(self) -> str:
        blob = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


class _RefereeTables:
    """Per-config cache: support-restricted sampling cumulatives and the
    finite spin-value table over (pair, label, xi)."""

    def __init__(self, config: GameConfig):
        probs = born_weights(config.state, config.basis)
        mask = probs > config.support_tol
        clipped = np.where(mask, probs, 0.0)
        self.eta_cum = list(np.cumsum(clipped / clipped.sum()))
        self.xi_values = [float(x) for x in config.xi_dist.support]
        self.xi_cum = list(np.cumsum(config.xi_dist.weights))
        self.pair_cum = list(np.cumsum(config.pair_weights))
        self.support = [int(i) for i in np.flatnonzero(mask)]
        n_xi = len(self.xi_values)
        self.s_a = []
        self.s_b = []
        for ia, ib in config.pairs:
            row_a = [[math.nan] * n_xi for _ in range(4)]
            row_b = [[math.nan] * n_xi for _ in range(4)]
            for eta in self.support:
                for k, xi in enumerate(self.xi_values):
                    row_a[eta][k] = cval_spin(config.state, config.basis, eta, xi,
                                              config.menu_a[ia], 1, config.support_tol)
                    row_b[eta][k] = cval_spin(config.state, config.basis, eta, xi,
                                              config.menu_b[ib], 2, config.support_tol)
            self.s_a.append(row_a)
            self.s_b.append(row_b)


_TABLE_CACHE = weakref.WeakKeyDictionary()


def _tables_for(config: GameConfig) -> _RefereeTables:
    tables = _TABLE_CACHE.get(config)
    if tables is None:
        tables = _RefereeTables(config)
        _TABLE_CACHE[config] = tables
    return tables


def referee_round(config: GameConfig, pair_index: int, rng: np.random.Generator,
                  _tables: _RefereeTables | None = None):
    """One referee step for a fixed direction pair: draw (eta, xi) once and
    compute both players' spin values from that single hidden sample.

    Returns (hidden sample, triple for player A, triple for player B).
    """
    if not 0 <= pair_index < len(config.pairs):
        raise ValueError(f"pair_index {pair_index} out of range")
    tables = _tables if _tables is not None else _tables_for(config)
    eta = min(bisect.bisect_right(tables.eta_cum, rng.random()), 3)
    k = min(bisect.bisect_right(tables.xi_cum, rng.random()), len(tables.xi_values) - 1)
    xi = tables.xi_values[k]
    hidden = HiddenSample(eta_index=eta, xi=xi)
    triple_a = Triple(eta, xi, tables.s_a[pair_index][eta][k])
    triple_b = Triple(eta, xi, tables.s_b[pair_index][eta][k])
    return hidden, triple_a, triple_b


def run_game(config: GameConfig, strategy_a: Strategy, strategy_b: Strategy,
             shared_resources=()) -> Transcript:
    """Play the full game and record a transcript.

    ``shared_resources`` are objects (e.g. an entangled-pair source) the
    players declared before the game; the harness calls ``begin_round`` on
    each of them once per round. Rounds where a player returns anything
    other than +1/-1 are excluded from the records and logged as
    violations.
    """
    tables = _tables_for(config)
    root = np.random.SeedSequence(config.seed)
    ref_seq, a_seq, b_seq = root.spawn(3)
    ref_rng = np.random.default_rng(ref_seq)
    rng_a = np.random.default_rng(a_seq)
    rng_b = np.random.default_rng(b_seq)
    state_a = strategy_a.init_state()
    state_b = strategy_b.init_state()
    records = []
    violations = []
    n_pairs = len(config.pairs)
    for round_index in range(config.rounds):
        pair_index = min(bisect.bisect_right(tables.pair_cum, ref_rng.random()), n_pairs - 1)
        hidden, triple_a, triple_b = referee_round(config, pair_index, ref_rng, tables)
        for resource in shared_resources:
            resource.begin_round()
        out_a = strategy_a.respond(triple_a, config.menu_a, state_a, rng_a)
        out_b = strategy_b.respond(triple_b, config.menu_b, state_b, rng_b)
        bad = False
        if out_a not in (-1, 1):
            violations.append(ViolationRecord(round_index, pair_index, "A", out_a))
            bad = True
        if out_b not in (-1, 1):
            violations.append(ViolationRecord(round_index, pair_index, "B", out_b))
            bad = True
        if not bad:
            records.append(RoundRecord(pair_index, hidden, triple_a, triple_b,
                                       int(out_a), int(out_b)))
    return Transcript(config.digest(), tuple(records), tuple(violations))


@dataclass(frozen=True)
class PairReport:
    pair_index: int
    slot_a: int
    slot_b: int
    target: float
    estimate: float
    stderr: float
    deviation: float
    passed: bool
    rounds: int
    violations: int


@dataclass(frozen=True)
class ConservationReport:
    pairs: tuple
    overall_pass: bool
    total_rounds: int
    total_violations: int
    sigma_k: float

    def as_dict(self) -> dict:
        return {
            "pairs": [
                {
                    "pair_index": p.pair_index,
                    "slot_a": p.slot_a,
                    "slot_b": p.slot_b,
                    "target": p.target,
                    "estimate": p.estimate,
                    "stderr": p.stderr,
                    "deviation": p.deviation,
                    "pass": p.passed,
                    "rounds": p.rounds,
                    "violations": p.violations,
                }
                for p in self.pairs
            ],
            "overall_pass": self.overall_pass,
            "total_rounds": self.total_rounds,
            "total_violations": self.total_violations,
            "sigma_k": self.sigma_k,
        }


def evaluate_conservation(transcript: Transcript, config: GameConfig) -> ConservationReport:
    """Per-pair verdicts: the empirical output correlation must sit within
    ``sigma_k`` floored standard errors of the exact input correlation.

    Raises InsufficientDataError when a pair with nonzero weight has no
    recorded rounds.
    """
    products = {}
    for rec in transcript.records:
        products.setdefault(rec.pair_index, []).append(rec.out_a * rec.out_b)
    violation_counts = {}
    for v in transcript.violations:
        violation_counts[v.pair_index] = violation_counts.get(v.pair_index, 0) + 1
    reports = []
    for p, (ia, ib) in enumerate(config.pairs):
        if config.pair_weights[p] == 0.0 and p not in products:
            continue
        values = products.get(p, [])
        if not values:
            raise InsufficientDataError(
                f"no rounds recorded for pair {p} (menu slots {ia},{ib})"
            )
        arr = np.array(values, dtype=float)
        count = arr.size
        estimate = float(arr.mean())
        sample_std = float(arr.std(ddof=1)) if count > 1 else 0.0
        stderr = max(sample_std / math.sqrt(count), 1.0 / math.sqrt(count))
        target = correlation_exact(config.state, config.basis, config.xi_dist,
                                   config.menu_a[ia], config.menu_b[ib],
                                   config.support_tol)
        deviation = abs(estimate - target)
        reports.append(PairReport(
            pair_index=p, slot_a=ia, slot_b=ib, target=target, estimate=estimate,
            stderr=stderr, deviation=deviation,
            passed=deviation <= config.sigma_k * stderr,
            rounds=count, violations=violation_counts.get(p, 0),
        ))
    return ConservationReport(
        pairs=tuple(reports),
        overall_pass=all(r.passed for r in reports),
        total_rounds=len(transcript.records),
        total_violations=len(transcript.violations),
        sigma_k=config.sigma_k,
    )
