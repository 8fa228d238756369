"""Steady-state magic of the deterministic dissipative qubit.

A two-level system with hopping Upsilon and decay Gamma on the excited
level relaxes, after post-selecting on no decay event, onto its
slowest-decaying eigenstate.  This script walks the three coupling cases
and shows where the attractor becomes a magic state:

- real hopping (Upsilon = J): the attractor reaches the H-state and the
  magic peaks at log2(4/3) for Gamma = 2 sqrt(2) J;
- complex hopping (Upsilon = (1-i)J/sqrt(2)): the attractor reaches the
  T-state, the single-qubit maximum log2(3/2), at Gamma = sqrt(6) J;
- real hopping with detuning delta = J: the same maximum at Gamma = sqrt(3) J.

Run:  python3 demos/steady_state_magic.py
"""

import numpy as np

from nhmagic import (
    COMPLEX_HOPPING,
    DQParams,
    M2_H,
    M2_T,
    REAL_HOPPING,
    nh_spectrum,
    sre_asymptotic,
    sre_complex_hopping,
    sre_real_hopping,
)
from nhmagic.dissipative import steady_sre, steady_state_bloch

GAMMA_H = 2.0 * np.sqrt(2.0)
GAMMA_T = np.sqrt(6.0)


def describe(label, p):
    spec = nh_spectrum(p)
    r = steady_state_bloch(p)
    print(f"{label}:")
    print(f"  eigenvalues      eps_+ = {spec.eps_plus:.6f}, eps_- = {spec.eps_minus:.6f}")
    print(f"  attractor Bloch  ({r.x:+.6f}, {r.y:+.6f}, {r.z:+.6f})")
    print(f"  steady magic     {steady_sre(p):.6f}")
    print()


print("reference values: M2(H) = log2(4/3) =", f"{float(M2_H):.6f},",
      "M2(T) = log2(3/2) =", f"{float(M2_T):.6f}")
print()

describe("real hopping, Gamma = 2 sqrt(2) J",
         DQParams(**REAL_HOPPING, gamma_decay=GAMMA_H))
describe("complex hopping, Gamma = sqrt(6) J",
         DQParams(**COMPLEX_HOPPING, gamma_decay=GAMMA_T))
describe("real hopping, delta = J, Gamma = sqrt(3) J",
         DQParams(jx=1.0, jy=0.0, delta=1.0, gamma_decay=np.sqrt(3.0)))

# the closed-form family for real hopping: zero at the coalescence point
# Gamma = 2J, a single maximum at 2 sqrt(2) J, and a 1/Gamma^2 tail
print("real-hopping magic vs decay rate (closed form):")
for G in (2.0, 2.4, GAMMA_H, 4.0, 8.0, 30.0):
    line = f"  Gamma = {G:6.3f} J   M2 = {sre_real_hopping(G):.6f}"
    if G >= 30.0:
        line += f"   (asymptote 4J^2/(ln2 Gamma^2) = {sre_asymptotic(G):.6f})"
    print(line)

print()
print("complex-hopping magic vs decay rate (closed form):")
for G in (np.sqrt(3.0), 2.0, GAMMA_T, 4.0, 8.0):
    print(f"  Gamma = {G:6.3f} J   M2 = {sre_complex_hopping(G):.6f}")
