"""Maximal violations from Bell-operator spectra and the shift-block structure.

Operators built from Fourier-type settings conserve the difference
(jh - j) mod d of the two local indices, so they split into d blocks of
size d. The canonical d = 3 operator has one 3x3 block carrying the
maximal eigenvalue 1 + sqrt(11/3) and two degenerate blocks with spectrum
(0, +-2/sqrt(3)).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .bell_functional import cglmp_functional
from .errors import NotBlockDiagonalError
from .quantum_model import bell_operator, canonical_settings
from .tensor_core import PureState, hermitian_spectrum, max_entangled

DEGENERACY_GAP = 1e-10


@dataclass(frozen=True)
class ViolationReport:
    """One row of the violation table for local dimension d.

    gamma is the ratio of the middle to the outer Schmidt amplitude of the
    maximizing state; it is populated only for d = 3 where the closed form
    (sqrt(11) - sqrt(3))/2 exists.
    """

    d: int
    value_max_entangled: float
    value_operator_max: float
    difference_percent: float
    gamma: float | None
    optimal_state: PureState


def max_violation(b: np.ndarray) -> tuple[float, PureState]:
    """Largest eigenvalue of a Bell operator and the state attaining it.

    The eigenvector's global phase is fixed so its largest-magnitude
    amplitude is real positive. A (near-)degenerate top eigenvalue is
    reported via a warning; the returned vector then spans an arbitrary
    direction in the top eigenspace.
    """
    vals, vecs = hermitian_spectrum(b)
    if vals.size > 1 and vals[0] - vals[1] < DEGENERACY_GAP:
        warnings.warn(
            f"top eigenvalue is degenerate within {DEGENERACY_GAP}; "
            "the maximizing state is not unique",
            stacklevel=2,
        )
    vec = vecs[:, 0]
    pivot = vec[np.argmax(np.abs(vec))]
    vec = vec * (pivot.conjugate() / abs(pivot))
    d = math.isqrt(vec.size)
    return float(vals[0]), PureState(d, vec)


def block_decompose(b: np.ndarray, tol: float = 1e-10) -> list[np.ndarray]:
    """Split a d^2 x d^2 operator into its d shift blocks.

    Block r is the restriction to span{|j, (j+r) mod d> : j = 0..d-1} with
    basis vectors ordered by j. Raises NotBlockDiagonalError when the mass
    outside the blocks exceeds tol in Frobenius norm.
    """
    m = np.asarray(b)
    d = math.isqrt(m.shape[0])
    groups = [[j * d + (j + r) % d for j in range(d)] for r in range(d)]
    mask = np.zeros(m.shape, dtype=bool)
    for idx in groups:
        mask[np.ix_(idx, idx)] = True
    residual = float(np.linalg.norm(m[~mask]))
    if residual > tol:
        raise NotBlockDiagonalError(residual)
    return [m[np.ix_(idx, idx)] for idx in groups]


def varied_red1(alpha: float, beta: float) -> np.ndarray:
    """The diagonal block of the d = 3 canonical operator under a phase twist.

    Twisting the first phase vector to (0, alpha, beta) while keeping the
    other three canonical splits the block into two pieces with identical
    spectra (-1, (1 -+ sqrt(11/3))/2), which bounds the twisted maximal
    eigenvalue by 1 + sqrt(11/3).
    """
    s3 = math.sqrt(3)
    base = np.array([[0, s3, 3], [s3, 0, s3], [3, s3, 0]], dtype=complex) / 3
    ea, eb = np.exp(1j * alpha), np.exp(1j * beta)
    twisted = (
        np.array(
            [
                [0, s3 * ea, 3 * eb],
                [s3 * ea.conjugate(), 0, s3 * eb * ea.conjugate()],
                [3 * eb.conjugate(), s3 * ea * eb.conjugate(), 0],
            ]
        )
        / 3
    )
    return base + twisted


def canonical_operator(d: int) -> np.ndarray:
    """Bell operator of the d-outcome functional at the canonical settings."""
    return bell_operator(cglmp_functional(d), canonical_settings(d))


def violation_report(d: int) -> ViolationReport:
    op = canonical_operator(d)
    psi = max_entangled(d)
    value_psi = float(np.real(psi.amplitudes.conj() @ op @ psi.amplitudes))
    value_max, state = max_violation(op)
    gamma = None
    if d == 3:
        amps = state.amplitudes
        gamma = float(np.real(amps[4] / amps[0]))
    return ViolationReport(
        d=d,
        value_max_entangled=value_psi,
        value_operator_max=value_max,
        difference_percent=100.0 * (value_max / value_psi - 1.0),
        gamma=gamma,
        optimal_state=state,
    )


def table1(d_min: int = 3, d_max: int = 8) -> list[ViolationReport]:
    """Violation reports for each d in [d_min, d_max] (d_min >= 3)."""
    if not 3 <= d_min <= d_max:
        raise ValueError(f"need 3 <= d_min <= d_max, got ({d_min}, {d_max})")
    return [violation_report(d) for d in range(d_min, d_max + 1)]
