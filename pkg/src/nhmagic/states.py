"""Single- and few-qubit state representations.

Basis convention used throughout the package: the two-dimensional basis is
ordered (|f>, |e>) where |e> is the decaying excited state.  With this
ordering sigma_z = |f><f| - |e><e|, the excited-state projector is
Pi = diag(0, 1), and strong decay drives the Bloch coordinate z -> +1.

Pauli strings are materialized as dense 2^L x 2^L matrices; this module is
meant as a desk-scale oracle (L <= 6), not a scalability layer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

# tolerances shared by the validators below
NORM_TOL = 1e-9
HERM_TOL = 1e-12
PSD_TOL = -1e-10

MAX_QUBITS = 6

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)

# |e><e| in the (|f>, |e>) ordering
PROJ_E = np.array([[0, 0], [0, 1]], dtype=complex)


class StateError(ValueError):
    """Raised when a state fails its physical validity checks."""


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector (x, y, z) with ||r|| <= 1; equality means pure."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        if self.norm() > 1.0 + 1e-6:
            raise StateError(
                f"unphysical Bloch vector, ||r|| = {self.norm():.6g} > 1"
            )

    @classmethod
    def from_array(cls, r) -> "BlochVector":
        r = np.asarray(r, dtype=float)
        return cls(float(r[0]), float(r[1]), float(r[2]))

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))

    def is_pure(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) <= tol


@dataclass(frozen=True)
class PureState2:
    """Normalized two-level amplitude pair (c_f, c_e)."""

    c_f: complex
    c_e: complex

    @classmethod
    def from_array(cls, psi) -> "PureState2":
        psi = np.asarray(psi, dtype=complex)
        n = np.linalg.norm(psi)
        if n == 0:
            raise StateError("cannot normalize the zero vector")
        psi = psi / n
        return cls(complex(psi[0]), complex(psi[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.c_f, self.c_e], dtype=complex)

    def density(self) -> np.ndarray:
        psi = self.as_array()
        return np.outer(psi, psi.conj())

    def bloch(self) -> BlochVector:
        return density_to_bloch(self.density())


def validate_density(rho, trace_tol: float = HERM_TOL) -> np.ndarray:
    """Check Hermiticity, unit trace and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise StateError(f"density matrix must be square, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=HERM_TOL, rtol=0):
        raise StateError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > max(trace_tol, 1e-12):
        raise StateError(f"density matrix trace {tr:.15g} != 1")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < PSD_TOL:
        raise StateError(f"density matrix has negative eigenvalue {evals.min():.3g}")
    return rho


def bloch_to_density(r) -> np.ndarray:
    """Map a Bloch vector to the 2x2 density matrix (1 + r.sigma)/2."""
    if not isinstance(r, BlochVector):
        r = BlochVector.from_array(r)
    rho = 0.5 * (SIGMA_0 + r.x * SIGMA_X + r.y * SIGMA_Y + r.z * SIGMA_Z)
    return rho


def density_to_bloch(rho) -> BlochVector:
    """Bloch coordinates r_i = Tr(rho sigma_i) of a valid 2x2 density matrix."""
    rho = validate_density(rho)
    if rho.shape != (2, 2):
        raise StateError("density_to_bloch expects a single-qubit state")
    x = float(np.trace(rho @ SIGMA_X).real)
    y = float(np.trace(rho @ SIGMA_Y).real)
    z = float(np.trace(rho @ SIGMA_Z).real)
    return BlochVector(x, y, z)


def purity(rho) -> float:
    rho = np.asarray(rho, dtype=complex)
    return float(np.trace(rho @ rho).real)


def num_qubits(rho) -> int:
    dim = np.asarray(rho).shape[0]
    L = int(round(np.log2(dim)))
    if 2**L != dim:
        raise StateError(f"dimension {dim} is not a power of two")
    if L > MAX_QUBITS:
        raise StateError(f"L = {L} exceeds the dense-oracle cap of {MAX_QUBITS}")
    return L


def pauli_matrix(label) -> np.ndarray:
    """Dense matrix of the Pauli string with per-site labels in {0,1,2,3}."""
    label = tuple(int(m) for m in label)
    if len(label) > MAX_QUBITS:
        raise StateError(f"Pauli string length {len(label)} exceeds {MAX_QUBITS}")
    if any(m not in (0, 1, 2, 3) for m in label):
        raise StateError(f"invalid Pauli label {label}")
    m = np.eye(1, dtype=complex)
    for mu in label:
        m = np.kron(m, PAULIS[mu])
    return m


def pauli_strings(L: int):
    """Iterate over all 4^L Pauli labels for an L-qubit register."""
    if L > MAX_QUBITS:
        raise StateError(f"L = {L} exceeds the dense-oracle cap of {MAX_QUBITS}")
    return itertools.product(range(4), repeat=L)


def pauli_expectation(rho, label) -> float:
    """Hilbert-Schmidt expectation Tr(sigma_mu rho); real for Hermitian rho."""
    rho = np.asarray(rho, dtype=complex)
    L = num_qubits(rho)
    label = tuple(int(m) for m in label)
    if len(label) != L:
        raise StateError(
            f"Pauli string length {len(label)} does not match register size {L}"
        )
    sigma = pauli_matrix(label)
    return float(np.trace(sigma @ rho).real)


def pauli_spectrum(rho) -> np.ndarray:
    """All 4^L expectations <sigma_mu, rho> as a flat real array."""
    rho = np.asarray(rho, dtype=complex)
    L = num_qubits(rho)
    out = np.empty(4**L)
    for k, label in enumerate(pauli_strings(L)):
        out[k] = np.trace(pauli_matrix(label) @ rho).real
    return out
