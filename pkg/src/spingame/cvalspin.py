"""Continuous spin values over a factorizable reference basis.

A particle's spin along a direction is assigned a real number built from
the prepared two-qubit state, a reference-basis label, and a shared hidden
variable xi: the real part of the normalized transition amplitude plus
(xi / hbar) times its imaginary part. The label is distributed by the Born
rule; xi has zero mean and second moment hbar^2. Only those two moments
enter any average, which is why the exact correlation of two such spin
values reproduces the quantum expectation value of the corresponding
spin-observable product (see ``correlation_exact``).

hbar is fixed to 1: xi only ever appears as xi / hbar, so the constant is
a pure scale. Basis labels whose Born probability is at or below
``SUPPORT_TOL`` are treated as outside the support: they are excluded from
exact sums and sampling, and requesting a spin value there raises
ZeroSupportError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroSupportError
from .hilbert import (
    ATOL,
    Direction,
    ReferenceBasis,
    TwoQubitState,
    direction_operator,
    embed,
    partial_trace,
)

HBAR = 1.0
SUPPORT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class XiDistribution:
    """Finite-support distribution of the shared hidden variable.

    Weights must be nonnegative and sum to 1; the mean must vanish and the
    second moment must equal hbar^2 = 1, both within ATOL.
    """

    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        support = np.array(self.support, dtype=float).reshape(-1)
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if support.size == 0 or support.size != weights.size:
            raise ValueError("support and weights must be equal-length, non-empty")
        if np.any(weights < 0):
            raise ValueError("weights must be nonnegative")
        if abs(float(weights.sum()) - 1.0) > ATOL:
            raise ValueError("weights must sum to 1")
        if abs(float(weights @ support)) > ATOL:
            raise ValueError("xi must have zero mean")
        if abs(float(weights @ support**2) - HBAR**2) > ATOL:
            raise ValueError(f"xi must have second moment {HBAR**2}")
        support.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def two_point(cls) -> "XiDistribution":
        """xi in {+1, -1} with equal weights; the minimal valid choice."""
        return cls(np.array([1.0, -1.0]), np.array([0.5, 0.5]))

    @classmethod
    def three_point(cls) -> "XiDistribution":
        """xi in {-sqrt(2), 0, +sqrt(2)} with weights 1/4, 1/2, 1/4."""
        r = math.sqrt(2.0)
        return cls(np.array([-r, 0.0, r]), np.array([0.25, 0.5, 0.25]))

    @property
    def mean(self) -> float:
        return float(self.weights @ self.support)

    @property
    def second_moment(self) -> float:
        return float(self.weights @ self.support**2)


@dataclass(frozen=True)
class WeakValueParts:
    """Real and imaginary part of the normalized transition amplitude
    <eta| sigma_n (on one particle) |psi> / <eta|psi>."""

    re_part: float
    im_part: float


@dataclass(frozen=True)
class HiddenSample:
    """One draw of the hidden data: a basis label index and a xi value."""

    eta_index: int
    xi: float


def basis_amplitude(state: TwoQubitState, basis: ReferenceBasis, eta_index: int) -> complex:
    """<eta|psi> for one basis label."""
    return complex(basis.vectors[eta_index].conj() @ state.amplitudes)


def born_weights(state: TwoQubitState, basis: ReferenceBasis) -> np.ndarray:
    """Born probabilities |<eta|psi>|^2 for all four labels."""
    amps = basis.vectors.conj() @ state.amplitudes
    return np.abs(amps) ** 2


def born_probability(state: TwoQubitState, basis: ReferenceBasis, eta_index: int) -> float:
    return float(born_weights(state, basis)[eta_index])


def support_indices(
    state: TwoQubitState, basis: ReferenceBasis, support_tol: float = SUPPORT_TOL
):
    """Indices of basis labels with Born probability above ``support_tol``."""
    probs = born_weights(state, basis)
    return [int(i) for i in np.flatnonzero(probs > support_tol)]


def weak_value_parts(
    state: TwoQubitState,
    basis: ReferenceBasis,
    eta_index: int,
    n: Direction,
    particle: int,
    support_tol: float = SUPPORT_TOL,
) -> WeakValueParts:
    """Normalized transition amplitude of the spin observable along ``n``
    acting on ``particle``, split into real and imaginary parts.

    Raises ZeroSupportError when the label's Born probability is at or
    below ``support_tol``.
    """
    denom = basis_amplitude(state, basis, eta_index)
    if abs(denom) ** 2 <= support_tol:
        raise ZeroSupportError(
            f"basis label {eta_index} ({basis.labels[eta_index]}) has Born probability "
            f"{abs(denom) ** 2:.3e} <= {support_tol}"
        )
    numer = complex(
        basis.vectors[eta_index].conj() @ (embed(direction_operator(n), particle) @ state.amplitudes)
    )
    ratio = numer / denom
    return WeakValueParts(ratio.real, ratio.imag)


def cval_spin(
    state: TwoQubitState,
    basis: ReferenceBasis,
    eta_index: int,
    xi: float,
    n: Direction,
    particle: int,
    support_tol: float = SUPPORT_TOL,
) -> float:
    """The continuous spin value: re_part + (xi / hbar) * im_part."""
    parts = weak_value_parts(state, basis, eta_index, n, particle, support_tol)
    return parts.re_part + (xi / HBAR) * parts.im_part


def sample_hidden(
    state: TwoQubitState,
    basis: ReferenceBasis,
    xi_dist: XiDistribution,
    rng: np.random.Generator,
    support_tol: float = SUPPORT_TOL,
) -> HiddenSample:
    """Draw (eta, xi): eta from the Born weights restricted to the support,
    xi independently from its distribution."""
    probs = born_weights(state, basis)
    probs = np.where(probs > support_tol, probs, 0.0)
    probs = probs / probs.sum()
    eta_index = int(np.searchsorted(np.cumsum(probs), rng.random(), side="right"))
    xi_index = int(np.searchsorted(np.cumsum(xi_dist.weights), rng.random(), side="right"))
    xi_index = min(xi_index, xi_dist.support.size - 1)
    return HiddenSample(eta_index=min(eta_index, 3), xi=float(xi_dist.support[xi_index]))


def _weak_value_table(state, basis, n, particle, support_tol):
    """(support indices, Born weights, complex weak values) for one direction."""
    probs = born_weights(state, basis)
    indices = [int(i) for i in np.flatnonzero(probs > support_tol)]
    values = []
    for eta in indices:
        parts = weak_value_parts(state, basis, eta, n, particle, support_tol)
        values.append(complex(parts.re_part, parts.im_part))
    return indices, probs, np.array(values)


def correlation_exact(
    state: TwoQubitState,
    basis: ReferenceBasis,
    xi_dist: XiDistribution,
    n1: Direction,
    n2: Direction,
    support_tol: float = SUPPORT_TOL,
) -> float:
    """Exact ensemble average of the product of the two particles' spin
    values, summed over the finite hidden support (no sampling).

    The xi sum is carried out analytically. With w1, w2 the complex weak
    values of the two particles at a label, the xi average of the product
    is re1*re2 + m2*im1*im2 + m1*(re1*im2 + re2*im1) where m1, m2 are the
    first two xi moments; only those moments ever enter, with m1 = 0 and
    m2 = hbar^2 = 1 they reduce the sum to Re(w1 * conj(w2)).
    """
    indices, probs, w1 = _weak_value_table(state, basis, n1, 1, support_tol)
    _, _, w2 = _weak_value_table(state, basis, n2, 2, support_tol)
    m1 = xi_dist.mean
    m2 = xi_dist.second_moment
    per_label = (
        w1.real * w2.real
        + m2 * w1.imag * w2.imag
        + m1 * (w1.real * w2.imag + w2.real * w1.imag)
    )
    return float(sum(probs[eta] * term for eta, term in zip(indices, per_label)))


def local_average_exact(
    state: TwoQubitState,
    basis: ReferenceBasis,
    xi_dist: XiDistribution,
    n: Direction,
    particle: int,
    support_tol: float = SUPPORT_TOL,
) -> float:
    """Exact ensemble average of one particle's spin value; equals the
    quantum expectation Tr{sigma_n rho} of that particle's reduced state."""
    indices, probs, w = _weak_value_table(state, basis, n, particle, support_tol)
    m1 = xi_dist.mean
    return float(sum(probs[eta] * (val.real + m1 * val.imag) for eta, val in zip(indices, w)))


def local_quantum_average(state: TwoQubitState, n: Direction, particle: int) -> float:
    """Tr{sigma_n rho_particle}, the quantum-side counterpart of
    ``local_average_exact``."""
    rho = partial_trace(state, keep=particle)
    return float(np.trace(direction_operator(n) @ rho).real)
