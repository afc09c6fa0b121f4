"""cglmplab: numerical laboratory for CGLMP Bell inequalities on two qudits.

Builds the d-outcome Bell expressions and their operators for Fourier-type
measurement settings, certifies classical bounds by enumeration, finds
maximal violations (spectrally and by see-saw search), computes
noise-resistance thresholds under several noise models, and analyzes the
associated entanglement witnesses (decomposability, distillability).
"""

from .bell_functional import (
    BellFunctional,
    ProbabilityTable,
    cglmp_functional,
    chsh_functional,
    evaluate,
    lv_bound,
)
from .quantum_model import (
    MeasurementSettings,
    PhaseSettings,
    TwoOutcomeSettings,
    bell_operator,
    canonical_phases,
    canonical_settings,
    chsh_embedded_settings,
    fourier_settings,
    joint_probabilities,
)
from .resistance import (
    NoiseModel,
    ThresholdReport,
    chsh_embed_resistance,
    chsh_embed_resistance_numeric,
    compare_measures,
    noise_state,
    threshold,
)
from .seesaw import (
    OptimizationResult,
    OptimizerConfig,
    ascend_settings,
    optimize_violation,
    unitary_from_params,
)
from .spectra import (
    ViolationReport,
    block_decompose,
    canonical_operator,
    max_violation,
    table1,
    varied_red1,
    violation_report,
)
from .tensor_core import (
    DensityMatrix,
    PureState,
    UnitaryMatrix,
    fourier_matrix,
    hermitian_spectrum,
    max_entangled,
    partial_trace,
    partial_transpose,
    schmidt_state,
    swap_operator,
)
from .witness import (
    DecompositionScan,
    DistillabilityVerdict,
    Witness,
    antisym_projector,
    distillable_by_fidelity,
    scan_decomposition,
    singlet_fraction,
    witness_from,
)

__version__ = "0.1.0"
