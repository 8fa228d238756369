"""Magic-state production in a dissipative qubit, deterministic and stochastic.

The package follows the physics pipeline:

- ``states``: single- and few-qubit state containers and Pauli algebra.
- ``magic``: stabilizer Renyi entropies and the corrected Bloch measure.
- ``dissipative``: non-Hermitian qubit, spectra, attractors, closed forms.
- ``antidephasing``: noise-averaged Liouvillian, gap and steady state.
- ``sde``: strong order-1.5 trajectory integration and ensembles.
- ``sweep``: phase diagrams over (noise strength, decay rate).
- ``verify``: the acceptance suite behind ``nhmagic verify``.
"""

from .states import (
    BlochVector,
    PureState2,
    StateError,
    bloch_to_density,
    density_to_bloch,
    pauli_expectation,
    pauli_spectrum,
    purity,
    validate_density,
)
from .magic import (
    M2_H,
    M2_T,
    m2_tilde_bloch,
    m2_tilde_generic,
    renyi2,
    sre_alpha,
    sre_upper_bounds,
)
from .dissipative import (
    COMPLEX_HOPPING,
    DQParams,
    ExceptionalPointWarning,
    NHSpectrum,
    NoAttractorError,
    REAL_HOPPING,
    evolve_density,
    evolve_pure,
    m2_analytic_broken,
    nh_spectrum,
    sre_asymptotic,
    sre_complex_hopping,
    sre_detuned,
    sre_real_hopping,
    steady_state_bloch,
)
from .antidephasing import (
    DegenerateSteadyStateError,
    LiouvillianAnalysis,
    SDQParams,
    SpectrumMismatchError,
    build_liouvillian,
    bloch_drift,
    cubic_roots,
    dissipative_gap,
    evolve_average,
    liouvillian_spectrum,
    steady_state,
)
from .sde import (
    NoiseIncrement,
    SDESystem,
    StepDivergedError,
    TrajectoryEnsemble,
    bloch_sde,
    derive_seed,
    kp15_step,
    simulate_ensemble,
    splitmix64,
)
from .sweep import (
    AxisSpec,
    GridSpec,
    PhaseDiagram,
    gap_diagram,
    gap_weighted_diagram,
    locate_maximum,
    steady_diagram,
    trajectory_diagram,
)

from . import dissipative, antidephasing  # noqa: F401  (steady_sre lives in both)

__version__ = "0.1.0"
