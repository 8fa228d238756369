"""Non-stabilizerness measures.

Implements the stabilizer Renyi entropy M_alpha over the Pauli spectrum, the
second Renyi entropy, the purity-corrected single-qubit measure, and two
upper bounds on the corrected measure.  All logarithms are base 2.

The corrected measure for a single qubit depends on the state only through
its Bloch coordinates,

    M2t(r) = -log2[(1 + x^4 + y^4 + z^4) / (1 + x^2 + y^2 + z^2)],

which vanishes on the six stabilizer poles and on the maximally mixed state,
and attains its largest value log2(3/2) on the T-state.
"""

from __future__ import annotations

import numpy as np

from .states import (
    BlochVector,
    num_qubits,
    pauli_spectrum,
    purity,
    validate_density,
)

# single-qubit landmarks
M2_H = np.log2(4.0 / 3.0)  # H-state value, ~0.4150
M2_T = np.log2(3.0 / 2.0)  # T-state value, ~0.5850 (universal single-qubit max)


def sre_alpha(rho, alpha: float) -> float:
    """Stabilizer Renyi entropy M_alpha of an L-qubit density matrix.

    M_alpha = 1/(1-alpha) * log2[ 2^-L sum_mu |<sigma_mu, rho>|^(2 alpha) ],
    valid for alpha > 0, alpha != 1.
    """
    if alpha <= 0 or alpha == 1:
        raise ValueError(f"alpha must be positive and != 1, got {alpha}")
    rho = validate_density(rho)
    L = num_qubits(rho)
    c = pauli_spectrum(rho)
    s = np.sum(np.abs(c) ** (2.0 * alpha)) / 2**L
    return float(np.log2(s) / (1.0 - alpha))


def renyi2(rho) -> float:
    """Second Renyi entropy S2 = -log2 Tr(rho^2)."""
    rho = validate_density(rho)
    return float(-np.log2(purity(rho)))


def m2_tilde_bloch(r) -> float:
    """Corrected single-qubit measure evaluated from Bloch coordinates."""
    if not isinstance(r, BlochVector):
        r = BlochVector.from_array(r)
    x, y, z = r.x, r.y, r.z
    num = 1.0 + x**4 + y**4 + z**4
    den = 1.0 + x**2 + y**2 + z**2
    return float(-np.log2(num / den))


def m2_tilde_generic(rho) -> float:
    """Corrected measure -log2[sum c^4 / sum c^2] over the Pauli spectrum.

    Agrees with ``m2_tilde_bloch`` for one qubit and with
    ``sre_alpha(rho, 2) - renyi2(rho)`` identically.
    """
    rho = validate_density(rho)
    num_qubits(rho)  # enforces the dense-oracle cap
    c = pauli_spectrum(rho)
    return float(-np.log2(np.sum(c**4) / np.sum(c**2)))


def sre_upper_bounds(rho) -> tuple[float, float]:
    """Upper bounds on the corrected single-qubit measure.

    Returns (entropy_bound, universal_bound) = (S2(rho) + 1, log2(3/2));
    the corrected measure never exceeds the smaller of the two, and the
    universal bound is attained by the T-state.
    """
    rho = validate_density(rho)
    if rho.shape != (2, 2):
        raise ValueError("bounds are derived for single-qubit states")
    return renyi2(rho) + 1.0, float(M2_T)
