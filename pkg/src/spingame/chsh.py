"""CHSH correlator assembly, bound checks, and the arithmetic XOR game.

Angle convention: all four measurement directions lie in the xz-plane and
are given as polar angles from +z. The combination uses the minus sign on
the both-primed pair: C = C_ab + C_ab' + C_a'b - C_a'b'. Verdicts compare
|C| against the classical bound 2 and the quantum maximum 2*sqrt(2)
(the inequality is two-sided; the signed value is reported alongside).

For the arithmetic game the players receive input bits x, y and emit
output bits a, b, winning when x*y = a + b (mod 2). The best classical
pair answers a = b = 0 and wins 3/4 of rounds; the quantum pair measures a
shared singlet along per-input angles chosen so the win probability
reaches (2 + sqrt(2)) / 4, with outcome o mapped to bit (1 - o) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cvalspin import XiDistribution, correlation_exact
from .hilbert import (
    Direction,
    ReferenceBasis,
    TwoQubitState,
    direction_operator,
    embed,
    expectation,
)
from .strategies import SharedPairSource

CLASSICAL_BOUND = 2.0
TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)

# Singlet-optimal polar angles (a, a', b, b') for the correlator itself.
OPTIMAL_ANGLES = (0.0, math.pi / 2, math.pi / 4, -math.pi / 4)

# XOR-game measurement angles per input bit, tuned to the singlet's
# -cos(theta_b - theta_a) correlation so the win rate is (2 + sqrt(2)) / 4.
ARITHMETIC_ANGLES_A = (0.0, math.pi / 2)
ARITHMETIC_ANGLES_B = (-3.0 * math.pi / 4, 3.0 * math.pi / 4)


@dataclass(frozen=True)
class ChshAngles:
    """Polar angles (radians, xz-plane) for the two measurement menus,
    stored modulo 2*pi."""

    a: float
    a_prime: float
    b: float
    b_prime: float

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"angle {name} must be finite")
            object.__setattr__(self, name, value % (2.0 * math.pi))

    @property
    def pairs(self):
        """(alice, bob) angle pairs in combination order: ab, ab', a'b, a'b'."""
        return (
            (self.a, self.b),
            (self.a, self.b_prime),
            (self.a_prime, self.b),
            (self.a_prime, self.b_prime),
        )

    def as_dict(self) -> dict:
        return {"a": self.a, "a_prime": self.a_prime, "b": self.b, "b_prime": self.b_prime}


@dataclass(frozen=True)
class ChshValue:
    c_ab: float
    c_ab_prime: float
    c_a_prime_b: float
    c_a_prime_b_prime: float
    combined: float

    @property
    def correlations(self):
        return (self.c_ab, self.c_ab_prime, self.c_a_prime_b, self.c_a_prime_b_prime)

    def as_dict(self) -> dict:
        return {
            "c_ab": self.c_ab,
            "c_ab_prime": self.c_ab_prime,
            "c_a_prime_b": self.c_a_prime_b,
            "c_a_prime_b_prime": self.c_a_prime_b_prime,
            "combined": self.combined,
        }


def chsh_from_correlations(c_ab: float, c_ab_prime: float, c_a_prime_b: float,
                           c_a_prime_b_prime: float, atol: float = 1e-12) -> ChshValue:
    """Assemble the combination from four pair correlations in [-1, 1]."""
    values = (c_ab, c_ab_prime, c_a_prime_b, c_a_prime_b_prime)
    for v in values:
        if not math.isfinite(v) or abs(v) > 1.0 + atol:
            raise ValueError(f"correlation {v} is outside [-1, 1]")
    return ChshValue(c_ab, c_ab_prime, c_a_prime_b, c_a_prime_b_prime,
                     c_ab + c_ab_prime + c_a_prime_b - c_a_prime_b_prime)


def chsh_quantum(state: TwoQubitState, angles: ChshAngles) -> ChshValue:
    """Quantum pair correlations <sigma_a (x) sigma_b> assembled into the
    combination."""
    correlations = []
    for ta, tb in angles.pairs:
        op = embed(direction_operator(Direction.from_polar(ta)), 1) @ \
            embed(direction_operator(Direction.from_polar(tb)), 2)
        correlations.append(expectation(state, op))
    return chsh_from_correlations(*correlations)


def chsh_cval(state: TwoQubitState, basis: ReferenceBasis, xi_dist: XiDistribution,
              angles: ChshAngles) -> ChshValue:
    """Hidden-variable-side combination from the exact ensemble
    correlations of the continuous spin values; matches ``chsh_quantum``
    entrywise."""
    correlations = [
        correlation_exact(state, basis, xi_dist,
                          Direction.from_polar(ta), Direction.from_polar(tb))
        for ta, tb in angles.pairs
    ]
    return chsh_from_correlations(*correlations)


def chsh_report(angles: ChshAngles, value: ChshValue, bound_tol: float = 1e-10) -> dict:
    """Stable JSON-ready summary of a CHSH evaluation."""
    return {
        "angles": angles.as_dict(),
        "correlations": value.as_dict(),
        "combined": value.combined,
        "abs_combined": abs(value.combined),
        "classical_bound": CLASSICAL_BOUND,
        "tsirelson_bound": TSIRELSON_BOUND,
        "violates_classical_bound": abs(value.combined) > CLASSICAL_BOUND + bound_tol,
        "within_tsirelson_bound": abs(value.combined) <= TSIRELSON_BOUND + bound_tol,
    }


# ---------------------------------------------------------------------------
# Arithmetic XOR game


class ConstantBitStrategy:
    def __init__(self, bit: int):
        if bit not in (0, 1):
            raise ValueError("bit must be 0 or 1")
        self.bit = bit
        self.name = f"constant{bit}"

    def respond_bit(self, input_bit: int, rng: np.random.Generator) -> int:
        return self.bit


class RandomBitStrategy:
    name = "random"

    def respond_bit(self, input_bit: int, rng: np.random.Generator) -> int:
        return int(rng.random() < 0.5)


class QuantumBitStrategy:
    """Measure this player's half of the shared pair along a per-input
    angle; outcome +1 maps to bit 0, outcome -1 to bit 1."""

    def __init__(self, source: SharedPairSource, particle: int, angles,
                 name: str | None = None):
        self.source = source
        self.particle = particle
        self.directions = tuple(Direction.from_polar(t) for t in angles)
        self.name = name or f"quantum-{particle}"

    def respond_bit(self, input_bit: int, rng: np.random.Generator) -> int:
        outcome = self.source.measure(self.particle, self.directions[input_bit], rng)
        return (1 - outcome) // 2


def make_quantum_bit_players(state: TwoQubitState | None = None):
    """Quantum XOR-game pair on a shared singlet (or given state) at the
    win-optimal angles."""
    from .hilbert import make_singlet

    source = SharedPairSource(state if state is not None else make_singlet())
    return (QuantumBitStrategy(source, 1, ARITHMETIC_ANGLES_A),
            QuantumBitStrategy(source, 2, ARITHMETIC_ANGLES_B),
            source)


@dataclass(frozen=True)
class ArithmeticGameResult:
    rounds: int
    wins: int
    frequency: float
    stderr: float

    def as_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "wins": self.wins,
            "frequency": self.frequency,
            "stderr": self.stderr,
        }


def chsh_arithmetic_game(strategy_a, strategy_b, source, rounds: int,
                         rng: np.random.Generator) -> ArithmeticGameResult:
    """Play the XOR game: uniform input bits x, y; win when
    x*y = a + b (mod 2). ``source`` (a SharedPairSource or None) is ticked
    once per round for quantum pairs."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    wins = 0
    for _ in range(rounds):
        x = int(rng.integers(0, 2))
        y = int(rng.integers(0, 2))
        if source is not None:
            source.begin_round()
        a = strategy_a.respond_bit(x, rng)
        b = strategy_b.respond_bit(y, rng)
        if a not in (0, 1) or b not in (0, 1):
            raise ValueError("bit strategies must return 0 or 1")
        if (x * y) % 2 == (a + b) % 2:
            wins += 1
    freq = wins / rounds
    return ArithmeticGameResult(
        rounds=rounds, wins=wins, frequency=freq,
        stderr=math.sqrt(max(freq * (1.0 - freq), 0.0) / rounds),
    )
