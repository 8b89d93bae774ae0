"""Dense complex linear algebra for two-qubit spin problems.

Everything lives in 2 or 4 dimensions, so all operations are direct numpy
computations accurate to machine rounding. ``ATOL`` is the global absolute
tolerance used by invariant checks (norms, orthonormality, hermiticity);
``IMAG_TOL`` bounds the imaginary residue tolerated in expectation values
of Hermitian operators.

Basis ordering convention: the computational two-qubit basis is
|00>, |01>, |10>, |11> with particle 1 as the left tensor factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolationError, InvalidDirectionError

ATOL = 1e-12
IMAG_TOL = 1e-10

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)
IDENTITY_4 = np.eye(4, dtype=complex)

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_X_PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)
KET_X_MINUS = np.array([1, -1], dtype=complex) / math.sqrt(2)
KET_Y_PLUS = np.array([1, 1j], dtype=complex) / math.sqrt(2)
KET_Y_MINUS = np.array([1, -1j], dtype=complex) / math.sqrt(2)


def _as_finite_complex(values, shape, what):
    arr = np.array(values, dtype=complex).reshape(shape)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{what} must contain only finite amplitudes")
    return arr


@dataclass(frozen=True)
class Direction:
    """Unit vector in three dimensions selecting a spin observable."""

    nx: float
    ny: float
    nz: float

    def __post_init__(self):
        norm = math.sqrt(self.nx * self.nx + self.ny * self.ny + self.nz * self.nz)
        if not math.isfinite(norm) or abs(norm - 1.0) > ATOL:
            raise InvalidDirectionError(
                f"direction ({self.nx}, {self.ny}, {self.nz}) has norm {norm}, expected 1"
            )

    @classmethod
    def from_polar(cls, theta: float) -> "Direction":
        """Direction in the xz-plane at polar angle ``theta`` from +z."""
        return cls(math.sin(theta), 0.0, math.cos(theta))

    def as_array(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz])


@dataclass(frozen=True, eq=False)
class TwoQubitState:
    """Normalized pure state of two qubits.

    Amplitudes are ordered |00>, |01>, |10>, |11>.
    """

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _as_finite_complex(self.amplitudes, (4,), "state")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > ATOL:
            raise ValueError(f"state norm^2 = {norm_sq}, expected 1 within {ATOL}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "TwoQubitState":
        return cls(np.array(amplitudes, dtype=complex))

    @classmethod
    def product(cls, ket1, ket2) -> "TwoQubitState":
        """Factorizable state ket1 (x) ket2; both factors are normalized first."""
        k1 = _as_finite_complex(ket1, (2,), "ket")
        k2 = _as_finite_complex(ket2, (2,), "ket")
        k1 = k1 / math.sqrt(float(np.vdot(k1, k1).real))
        k2 = k2 / math.sqrt(float(np.vdot(k2, k2).real))
        return cls(np.kron(k1, k2))


@dataclass(frozen=True, eq=False)
class ReferenceBasis:
    """Factorizable orthonormal basis of the two-qubit space.

    Stored as four labeled (particle-1 ket, particle-2 ket) pairs, which
    keeps factorizability structural. ``vectors`` holds the four tensor
    products as rows.
    """

    labels: tuple
    pairs: tuple
    vectors: np.ndarray

    def __post_init__(self):
        if len(self.labels) != 4 or len(self.pairs) != 4:
            raise ValueError("reference basis needs exactly 4 labeled ket pairs")
        gram = self.vectors @ self.vectors.conj().T
        if not np.allclose(gram, np.eye(4), atol=ATOL, rtol=0.0):
            raise ValueError("reference basis vectors are not orthonormal")

    @classmethod
    def from_pairs(cls, labels, pairs) -> "ReferenceBasis":
        kets = []
        norm_pairs = []
        for k1, k2 in pairs:
            a = _as_finite_complex(k1, (2,), "basis ket")
            b = _as_finite_complex(k2, (2,), "basis ket")
            a.setflags(write=False)
            b.setflags(write=False)
            norm_pairs.append((a, b))
            kets.append(np.kron(a, b))
        vectors = np.array(kets)
        vectors.setflags(write=False)
        return cls(tuple(labels), tuple(norm_pairs), vectors)


def direction_operator(n: Direction) -> np.ndarray:
    """Spin observable n . (sigma_x, sigma_y, sigma_z) as a 2x2 matrix."""
    return n.nx * SIGMA_X + n.ny * SIGMA_Y + n.nz * SIGMA_Z


def embed(op: np.ndarray, particle: int) -> np.ndarray:
    """Lift a single-qubit operator to the pair: op (x) I for particle 1,
    I (x) op for particle 2."""
    if particle == 1:
        return np.kron(op, IDENTITY_2)
    if particle == 2:
        return np.kron(IDENTITY_2, op)
    raise ValueError(f"particle must be 1 or 2, got {particle}")


def expectation(state: TwoQubitState, op: np.ndarray, atol: float = ATOL) -> float:
    """<psi|op|psi> for a Hermitian 4x4 operator, returned as a real number.

    Raises ContractViolationError if ``op`` is not Hermitian within ``atol``
    or if the imaginary residue of the raw bracket exceeds IMAG_TOL.
    """
    op = np.asarray(op, dtype=complex)
    if op.shape != (4, 4):
        raise ValueError(f"expected a 4x4 operator, got shape {op.shape}")
    if not np.allclose(op, op.conj().T, atol=atol, rtol=0.0):
        raise ContractViolationError("expectation requires a Hermitian operator")
    value = complex(np.vdot(state.amplitudes, op @ state.amplitudes))
    if abs(value.imag) > IMAG_TOL:
        raise ContractViolationError(
            f"expectation has imaginary residue {value.imag}, above {IMAG_TOL}"
        )
    return value.real


def eigenprojectors(n: Direction):
    """Projectors onto the +1 and -1 eigenspaces of the spin observable
    along ``n``: P_pm = (I pm sigma_n) / 2."""
    sigma = direction_operator(n)
    return (IDENTITY_2 + sigma) / 2.0, (IDENTITY_2 - sigma) / 2.0


def partial_trace(state: TwoQubitState, keep: int) -> np.ndarray:
    """Reduced density matrix of one particle of a pure two-qubit state."""
    m = state.amplitudes.reshape(2, 2)
    if keep == 1:
        return np.einsum("ij,kj->ik", m, m.conj())
    if keep == 2:
        return np.einsum("ia,ib->ab", m, m.conj())
    raise ValueError(f"keep must be 1 or 2, got {keep}")


def make_singlet() -> TwoQubitState:
    """The spin singlet (|01> - |10>) / sqrt(2)."""
    return TwoQubitState.from_amplitudes([0.0, 1.0 / math.sqrt(2), -1.0 / math.sqrt(2), 0.0])


def make_reference_basis_yx() -> ReferenceBasis:
    """Reference basis {|y+>|x+>, |y+>|x->, |y->|x+>, |y->|x->}.

    Every vector overlaps the singlet with probability 1/4, which makes
    this the canonical basis for singlet experiments.
    """
    return ReferenceBasis.from_pairs(
        ("y+,x+", "y+,x-", "y-,x+", "y-,x-"),
        (
            (KET_Y_PLUS, KET_X_PLUS),
            (KET_Y_PLUS, KET_X_MINUS),
            (KET_Y_MINUS, KET_X_PLUS),
            (KET_Y_MINUS, KET_X_MINUS),
        ),
    )


def make_reference_basis_computational() -> ReferenceBasis:
    """Reference basis {|0>|0>, |0>|1>, |1>|0>, |1>|1>}."""
    return ReferenceBasis.from_pairs(
        ("0,0", "0,1", "1,0", "1,1"),
        (
            (KET_0, KET_0),
            (KET_0, KET_1),
            (KET_1, KET_0),
            (KET_1, KET_1),
        ),
    )
