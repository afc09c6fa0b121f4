"""Entanglement witnesses from Bell operators and their decomposability.

W = bound*1 - B has nonnegative expectation on every separable state and
detects the states whose Bell value exceeds the classical bound. The scan
searches for a decomposition W = P + k*Pa^{T_A} with P >= 0 and Pa the
antisymmetric projector: feasibility of any k certifies that W is
decomposable, hence blind to states with positive partial transposition,
and implies that every detected state has singlet fraction above 1/d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionError, DomainError
from .tensor_core import (
    DensityMatrix,
    max_entangled,
    partial_transpose,
    swap_operator,
)

FEASIBILITY_TOL = -1e-10


@dataclass(frozen=True)
class Witness:
    """Hermitian witness matrix together with the bound used to build it."""

    d: int
    matrix: np.ndarray
    bound: float

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if np.max(np.abs(m - m.conj().T)) > 1e-10:
            raise DomainError("witness matrix is not Hermitian")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class DecompositionScan:
    """Minimum eigenvalue of W - k*Pa^{T_A} on a grid of k values.

    feasible_interval is the (bisection-refined) range of k where the
    minimum eigenvalue clears the feasibility tolerance, or None when no
    grid point does.
    """

    k_values: np.ndarray
    min_eigenvalues: np.ndarray
    feasible_interval: tuple[float, float] | None


class DistillabilityVerdict(NamedTuple):
    distillable: bool
    margin: float


def witness_from(b: np.ndarray, bound: float) -> Witness:
    """bound*identity - B for a Hermitian Bell operator B."""
    m = np.asarray(b, dtype=complex)
    if np.max(np.abs(m - m.conj().T)) > 1e-10:
        raise DomainError("Bell operator is not Hermitian")
    d = math.isqrt(m.shape[0])
    return Witness(d, bound * np.eye(m.shape[0]) - m, float(bound))


def antisym_projector(d: int) -> np.ndarray:
    """Projector onto the antisymmetric subspace, (identity - SWAP)/2.

    Rank d(d-1)/2; its partial transpose equals (identity - d*|Psi><Psi|)/2
    with |Psi> the maximally entangled state.
    """
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    return (np.eye(d * d) - swap_operator(d)) / 2


def _min_eig(w: np.ndarray, pa_ta: np.ndarray, k: float) -> float:
    return float(np.linalg.eigvalsh(w - k * pa_ta)[0])


def scan_decomposition(
    w: Witness,
    k_min: float,
    k_max: float,
    steps: int,
    refine_tol: float = 1e-6,
    map_fn=None,
) -> DecompositionScan:
    """Grid scan of min eig(W - k*Pa^{T_A}) with bisection-refined edges.

    The minimum eigenvalue is concave in k, so the feasible set is a
    single interval; its edges are located between neighbouring grid
    points and bisected down to refine_tol in k. Grid points are
    independent; pass a pool's map as map_fn to evaluate them concurrently.
    """
    if not k_min < k_max:
        raise ValueError(f"need k_min < k_max, got ({k_min}, {k_max})")
    if steps < 2:
        raise ValueError(f"need at least 2 grid points, got {steps}")
    pa_ta = partial_transpose(antisym_projector(w.d), "A")
    ks = np.linspace(k_min, k_max, steps)
    mapper = map if map_fn is None else map_fn
    mins = np.array(list(mapper(lambda k: _min_eig(w.matrix, pa_ta, k), ks)))
    feasible = mins >= FEASIBILITY_TOL
    if not feasible.any():
        return DecompositionScan(ks, mins, None)

    idx = np.nonzero(feasible)[0]
    lo, hi = float(ks[idx[0]]), float(ks[idx[-1]])

    def bisect(inside: float, outside: float) -> float:
        while abs(inside - outside) > refine_tol:
            mid = 0.5 * (inside + outside)
            if _min_eig(w.matrix, pa_ta, mid) >= FEASIBILITY_TOL:
                inside = mid
            else:
                outside = mid
        return inside

    if idx[0] > 0:
        lo = bisect(lo, float(ks[idx[0] - 1]))
    if idx[-1] < steps - 1:
        hi = bisect(hi, float(ks[idx[-1] + 1]))
    return DecompositionScan(ks, mins, (lo, hi))


def write_scan_csv(scan: DecompositionScan, path) -> None:
    """Plot-ready scan data: header `k,min_eigenvalue`, 12 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("k,min_eigenvalue\n")
        for k, v in zip(scan.k_values, scan.min_eigenvalues):
            fh.write(f"{k:.12g},{v:.12g}\n")


def singlet_fraction(rho) -> float:
    """Overlap <Psi| rho |Psi> with the computational-basis maximally
    entangled state.

    For states whose relevant Schmidt basis is not computational, rotate
    rho into that basis first; this function does not rotate.
    """
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    d = math.isqrt(m.shape[0])
    psi = max_entangled(d).amplitudes
    return float(np.real(psi.conj() @ m @ psi))


def distillable_by_fidelity(rho) -> DistillabilityVerdict:
    """Fidelity criterion: singlet fraction above 1/d certifies distillability."""
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    d = math.isqrt(m.shape[0])
    margin = singlet_fraction(m) - 1.0 / d
    return DistillabilityVerdict(distillable=margin > 0, margin=float(margin))
