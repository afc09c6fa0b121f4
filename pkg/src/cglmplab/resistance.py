"""Noise-resistance thresholds for Bell violations under three noise models.

A threshold is operational: it is the minimal weight lambda of the signal
state in a mixture with a chosen noise state such that the mixture still
violates the GIVEN functional with the GIVEN settings. It makes no claim
about the non-existence of local models for other measurement choices.

Noise models for a pure signal state:
- White: the maximally mixed state 1/d^2.
- ProductMarginals: the tensor product of the state's reduced matrices.
- ClosestSeparablePure: the separable state minimizing the relative
  entropy from the pure signal, which is the dephasing of the state in
  its own Schmidt basis (weights = squared Schmidt coefficients).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bell_functional import BellFunctional, chsh_functional, evaluate
from .errors import DimensionError, NoViolationError
from .quantum_model import chsh_embedded_settings, joint_probabilities
from .tensor_core import DensityMatrix, PureState, partial_trace, schmidt_state


class NoiseModel(enum.Enum):
    WHITE = "white"
    PRODUCT_MARGINALS = "marginals"
    CLOSEST_SEPARABLE_PURE = "closest-sep"


@dataclass(frozen=True)
class ThresholdReport:
    """Threshold lambda_star with the Bell values that produced it.

    lambda_star = (bound - noise_value) / (signal_value - noise_value),
    clipped to [0, 1]; `clipped` records whether clipping was applied.
    """

    lambda_star: float
    signal_value: float
    noise_value: float
    model: NoiseModel
    clipped: bool = False


def noise_state(phi: PureState, model: NoiseModel) -> DensityMatrix:
    """The noise state a given model assigns to a pure signal state."""
    d = phi.d
    if model is NoiseModel.WHITE:
        return DensityMatrix.maximally_mixed(d)
    if model is NoiseModel.PRODUCT_MARGINALS:
        rho = phi.density()
        return DensityMatrix(d, np.kron(partial_trace(rho, "B"), partial_trace(rho, "A")))
    if model is NoiseModel.CLOSEST_SEPARABLE_PURE:
        u, s, vh = np.linalg.svd(phi.amplitude_matrix())
        out = np.zeros((d * d, d * d), dtype=complex)
        for i in range(d):
            if s[i] == 0.0:
                continue
            w = np.kron(u[:, i], vh[i, :].conj())
            out += (s[i] ** 2) * np.outer(w, w.conj())
        return DensityMatrix(d, out)
    raise ValueError(f"unknown noise model {model!r}")


def threshold(
    phi: PureState, f: BellFunctional, settings, model: NoiseModel
) -> ThresholdReport:
    """Minimal signal weight keeping the mixture above the classical bound.

    Solves lambda * signal + (1 - lambda) * noise = bound for the stored
    classical bound of the functional (certified separately by
    enumeration). Raises NoViolationError when the signal state itself
    does not violate.
    """
    n = f.n_outcomes
    signal = evaluate(f, joint_probabilities(phi.density(), settings, n))
    bound = f.claimed_lv_bound
    if signal <= bound:
        raise NoViolationError(
            f"signal value {signal:.6f} does not exceed the classical bound {bound:g}"
        )
    noise = evaluate(f, joint_probabilities(noise_state(phi, model), settings, n))
    lam = (bound - noise) / (signal - noise)
    clipped = not 0.0 <= lam <= 1.0
    return ThresholdReport(
        lambda_star=float(min(max(lam, 0.0), 1.0)),
        signal_value=signal,
        noise_value=noise,
        model=model,
        clipped=clipped,
    )


def compare_measures(
    phi: PureState, f: BellFunctional, settings
) -> tuple[ThresholdReport, ThresholdReport, ThresholdReport]:
    """Thresholds under all three noise models, in declaration order."""
    return tuple(threshold(phi, f, settings, m) for m in NoiseModel)


def chsh_embed_resistance(d: int) -> float:
    """Closed-form white-noise threshold of the two-term Schmidt state
    under the embedded CHSH measurements in dimension d.

    Equals (1 - q) / (sqrt(2) - q) with q = ((d - 2)/d)^2; it decreases
    monotonically in d and tends to 0, which is why resistance to white
    noise fails as a measure of non-locality.
    """
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    q = ((d - 2) / d) ** 2
    return (1.0 - q) / (math.sqrt(2) - q)


def chsh_embed_resistance_numeric(d: int) -> float:
    """The same threshold computed through the operator machinery."""
    psi2 = schmidt_state([1.0, 1.0] + [0.0] * (d - 2))
    report = threshold(psi2, chsh_functional(d), chsh_embedded_settings(d), NoiseModel.WHITE)
    return report.lambda_star
