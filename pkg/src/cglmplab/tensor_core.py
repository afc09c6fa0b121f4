"""Bipartite complex linear algebra on C^d (x) C^d.

Index convention used everywhere in the package: the product basis state
|j, jh> is flattened row-major as j*d + jh (A index major, B index minor).
A d^2 x d^2 operator acts on vectors in this ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, ShapeError

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-10


def _local_dim(side: int) -> int:
    d = math.isqrt(side)
    if d * d != side:
        raise ShapeError(f"matrix side {side} is not a perfect square")
    return d


@dataclass(frozen=True)
class PureState:
    """Normalized pure state of two d-level systems.

    amplitudes[j*d + jh] is the coefficient of |j, jh>.
    """

    d: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.d < 2:
            raise DimensionError(f"local dimension must be >= 2, got {self.d}")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.d * self.d:
            raise ShapeError(f"expected {self.d ** 2} amplitudes, got {amps.size}")
        if abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise DomainError("amplitude vector is not normalized")
        object.__setattr__(self, "amplitudes", amps)

    def amplitude_matrix(self) -> np.ndarray:
        """The d x d coefficient matrix A with A[j, jh] = <j, jh | state>."""
        return self.amplitudes.reshape(self.d, self.d)

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def density(self) -> "DensityMatrix":
        return DensityMatrix(self.d, self.projector())

    def schmidt_coefficients(self) -> np.ndarray:
        """Schmidt coefficients, descending, squares summing to 1."""
        return np.linalg.svd(self.amplitude_matrix(), compute_uv=False)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, positive semidefinite, unit-trace d^2 x d^2 matrix."""

    d: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        if self.d < 2:
            raise DimensionError(f"local dimension must be >= 2, got {self.d}")
        m = np.asarray(self.entries, dtype=complex)
        side = self.d * self.d
        if m.shape != (side, side):
            raise ShapeError(f"expected a {side}x{side} matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-12:
            raise DomainError(f"trace is {np.trace(m).real!r}, expected 1")
        if np.linalg.eigvalsh(m).min() < -1e-10:
            raise DomainError("density matrix has a negative eigenvalue")
        object.__setattr__(self, "entries", m)

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityMatrix":
        return cls(d, np.eye(d * d, dtype=complex) / (d * d))


@dataclass(frozen=True)
class UnitaryMatrix:
    """A d x d unitary; columns are used as measurement directions."""

    d: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.shape != (self.d, self.d):
            raise ShapeError(f"expected a {self.d}x{self.d} matrix, got {m.shape}")
        if np.max(np.abs(m.conj().T @ m - np.eye(self.d))) > UNITARY_TOL:
            raise DomainError("matrix is not unitary")
        object.__setattr__(self, "entries", m)


def max_entangled(d: int) -> PureState:
    """The state (1/sqrt(d)) * sum_j |jj>."""
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    amps = np.zeros(d * d, dtype=complex)
    amps[:: d + 1] = 1.0 / math.sqrt(d)
    return PureState(d, amps)


def schmidt_state(coeffs) -> PureState:
    """Normalized sum_i c_i |ii> from nonnegative coefficients c."""
    c = np.asarray(coeffs, dtype=float).reshape(-1)
    if c.size < 2:
        raise DimensionError("need at least two Schmidt coefficients")
    if np.any(c < 0):
        raise DomainError("Schmidt coefficients must be nonnegative")
    norm = np.linalg.norm(c)
    if norm == 0:
        raise DomainError("Schmidt coefficients must not all vanish")
    d = c.size
    amps = np.zeros(d * d, dtype=complex)
    amps[:: d + 1] = c / norm
    return PureState(d, amps)


def partial_trace(rho, traced_out: str) -> np.ndarray:
    """Trace out one subsystem of a d^2 x d^2 operator.

    Parameters
    ----------
    rho : DensityMatrix or array
        Bipartite operator in the row-major product basis.
    traced_out : "A" or "B"
        The subsystem that is removed; "B" returns the reduced state of A.
    """
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    d = _local_dim(m.shape[0])
    r4 = m.reshape(d, d, d, d)
    if traced_out.upper() == "B":
        return np.trace(r4, axis1=1, axis2=3)
    if traced_out.upper() == "A":
        return np.trace(r4, axis1=0, axis2=2)
    raise ValueError("traced_out must be 'A' or 'B'")


def partial_transpose(x: np.ndarray, subsystem: str = "A") -> np.ndarray:
    """Transpose the indices of one subsystem of a d^2 x d^2 matrix."""
    m = np.asarray(x)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    d = _local_dim(m.shape[0])
    r4 = m.reshape(d, d, d, d)
    if subsystem.upper() == "A":
        out = r4.transpose(2, 1, 0, 3)
    elif subsystem.upper() == "B":
        out = r4.transpose(0, 3, 2, 1)
    else:
        raise ValueError("subsystem must be 'A' or 'B'")
    return out.reshape(m.shape)


def hermitian_spectrum(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and matching orthonormal eigenvector columns."""
    m = np.asarray(h, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise DomainError("matrix is not Hermitian")
    vals, vecs = np.linalg.eigh(m)
    return vals[::-1], vecs[:, ::-1]


def fourier_matrix(d: int) -> UnitaryMatrix:
    """Discrete Fourier matrix with entries exp(2i*pi*j*k/d)/sqrt(d)."""
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    j = np.arange(d)
    return UnitaryMatrix(d, np.exp(2j * np.pi * np.outer(j, j) / d) / math.sqrt(d))


def swap_operator(d: int) -> np.ndarray:
    """The operator exchanging the two subsystems: SWAP |jk> = |kj>."""
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    s = np.zeros((d * d, d * d))
    for j in range(d):
        for k in range(d):
            s[j * d + k, k * d + j] = 1.0
    return s
