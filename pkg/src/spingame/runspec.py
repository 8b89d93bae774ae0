"""Parsing and resolution of run specifications.

String conventions (shared by the CLI flags, config files, and the HTTP
API):

* state: ``singlet``, ``product:<8 reals>`` (two single-qubit kets as
  re,im pairs: a0,a1 then b0,b1), or 8 raw reals forming the four complex
  amplitudes in |00>,|01>,|10>,|11> order. Inputs are normalized; a norm
  off by more than 1e-6 warns, more than 1e-2 is an error.
* basis: ``yx``, ``computational``, or 32 raw reals (four basis vectors,
  each a particle-1 ket then a particle-2 ket as re,im pairs).
* xi: ``two-point``, ``three-point``, or ``raw:<values>:<weights>`` with
  comma-separated numbers.
* angles: comma-separated polar angles in radians (xz-plane).

Modes that evaluate correlations over a fixed basis (run-game, lhv-search,
cval-table) refuse configurations where any basis label falls outside the
state's support, naming the offending label.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .chsh import OPTIMAL_ANGLES
from .cvalspin import SUPPORT_TOL, XiDistribution, born_weights
from .errors import ConfigError
from .hilbert import ReferenceBasis, TwoQubitState, make_reference_basis_computational, \
    make_reference_basis_yx, make_singlet

MODES = ("verify-theorem1", "run-game", "lhv-search", "chsh-game", "cval-table")

# Game menus default to the correlator-optimal angles rotated by pi/8:
# the rotation leaves every pair difference (hence every correlation
# target) unchanged but makes the spin values distinguishable across each
# player's menu for both bundled xi distributions, so direction inference
# is unambiguous. The unrotated angles collide (e.g. at theta = 0 vs
# pi/2 the first label gives -xi and -1, equal when xi = +1).
GAME_ANGLE_OFFSET = math.pi / 8
GAME_DEFAULT_ANGLES = tuple(t + GAME_ANGLE_OFFSET for t in OPTIMAL_ANGLES)

GAME_STRATEGIES = ("quantum", "sign", "random", "constant:+1", "constant:-1")
BIT_STRATEGIES = ("quantum", "constant0", "constant1", "random")

NORM_WARN_TOL = 1e-6
NORM_ERROR_TOL = 1e-2


def _parse_floats(text: str, what: str):
    try:
        return [float(piece) for piece in text.split(",") if piece.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"could not parse {what} from {text!r}: {exc}") from exc


def _complex_from_reals(reals, what: str):
    if len(reals) % 2 != 0:
        raise ConfigError(f"{what} needs re,im pairs, got {len(reals)} numbers")
    return np.array([complex(reals[i], reals[i + 1]) for i in range(0, len(reals), 2)])


def _normalized(amps: np.ndarray, what: str) -> np.ndarray:
    norm = float(np.linalg.norm(amps))
    if norm == 0.0 or not math.isfinite(norm):
        raise ConfigError(f"{what} has invalid norm {norm}")
    if abs(norm - 1.0) > NORM_ERROR_TOL:
        raise ConfigError(
            f"{what} has norm {norm:.6f}; more than {NORM_ERROR_TOL} away from 1")
    if abs(norm - 1.0) > NORM_WARN_TOL:
        warnings.warn(f"{what} has norm {norm:.8f}; normalizing", stacklevel=3)
    return amps / norm


def parse_state(spec: str) -> TwoQubitState:
    spec = spec.strip()
    if spec == "singlet":
        return make_singlet()
    if spec.startswith("product:"):
        reals = _parse_floats(spec[len("product:"):], "product state")
        if len(reals) != 8:
            raise ConfigError(
                f"product state needs 8 reals (two kets as re,im pairs), got {len(reals)}")
        kets = _complex_from_reals(reals, "product state")
        return TwoQubitState.product(kets[:2], kets[2:])
    reals = _parse_floats(spec, "state amplitudes")
    if len(reals) != 8:
        raise ConfigError(
            f"state needs 8 reals (four complex amplitudes as re,im pairs), got {len(reals)}")
    amps = _complex_from_reals(reals, "state")
    return TwoQubitState(_normalized(amps, "state"))


def parse_basis(spec: str) -> ReferenceBasis:
    spec = spec.strip()
    if spec == "yx":
        return make_reference_basis_yx()
    if spec == "computational":
        return make_reference_basis_computational()
    reals = _parse_floats(spec, "basis")
    if len(reals) != 32:
        raise ConfigError(
            "raw basis needs 32 reals: four vectors, each a particle-1 ket then a "
            f"particle-2 ket as re,im pairs; got {len(reals)}")
    pairs = []
    for v in range(4):
        chunk = _complex_from_reals(reals[v * 8:(v + 1) * 8], "basis vector")
        pairs.append((_normalized(chunk[:2], f"basis vector {v} ket 1"),
                      _normalized(chunk[2:], f"basis vector {v} ket 2")))
    try:
        return ReferenceBasis.from_pairs(
            tuple(f"v{v}" for v in range(4)), tuple(pairs))
    except ValueError as exc:
        raise ConfigError(f"invalid basis: {exc}") from exc


def parse_xi(spec: str) -> XiDistribution:
    spec = spec.strip()
    if spec == "two-point":
        return XiDistribution.two_point()
    if spec == "three-point":
        return XiDistribution.three_point()
    if spec.startswith("raw:"):
        parts = spec[len("raw:"):].split(":")
        if len(parts) != 2:
            raise ConfigError("raw xi spec must look like raw:<values>:<weights>")
        support = _parse_floats(parts[0], "xi support")
        weights = _parse_floats(parts[1], "xi weights")
        try:
            return XiDistribution(np.array(support), np.array(weights))
        except ValueError as exc:
            raise ConfigError(f"invalid xi distribution: {exc}") from exc
    raise ConfigError(
        f"unknown xi spec {spec!r}; expected two-point, three-point, or raw:...")


def parse_angles(spec, expected: int | None = None):
    if isinstance(spec, str):
        values = tuple(_parse_floats(spec, "angles"))
    else:
        values = tuple(float(v) for v in spec)
    if not values:
        raise ConfigError("angles must contain at least one value")
    if any(not math.isfinite(v) for v in values):
        raise ConfigError("angles must be finite")
    if expected is not None and len(values) != expected:
        raise ConfigError(f"expected {expected} angles, got {len(values)}")
    return values


def ensure_full_support(state: TwoQubitState, basis: ReferenceBasis,
                        support_tol: float = SUPPORT_TOL) -> None:
    """Refuse configurations whose basis has a label outside the state's
    support; correlations there are not defined for every label."""
    probs = born_weights(state, basis)
    for i, p in enumerate(probs):
        if p <= support_tol:
            raise ConfigError(
                f"basis label {i} ({basis.labels[i]}) has Born probability "
                f"{p:.3e} <= {support_tol}; the configuration is refused")


@dataclass
class RunSpec:
    """Fully keyed run description; unset fields fall back to per-mode
    defaults during resolution."""

    mode: str
    state: str = "singlet"
    basis: str = "yx"
    xi: str = "two-point"
    angles: object = None
    rounds: int | None = None
    seed: int = 0
    strategy_a: str | None = None
    strategy_b: str | None = None
    sigma_k: float = 3.0
    particle: int = 1
    workers: str = "auto"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.rounds is not None and self.rounds < 1:
            raise ConfigError("rounds must be >= 1")
        if self.sigma_k <= 0:
            raise ConfigError("sigma-k must be positive")
        if self.particle not in (1, 2):
            raise ConfigError("particle must be 1 or 2")
