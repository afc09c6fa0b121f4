"""Joint-probability tables and Bell operators from projective measurements.

Measurement convention: a settings object yields, per party and setting,
a stack of orthogonal projectors summing to the identity. Probabilities
are P[a][b][j][l] = tr((Pi_j^a (x) Pi_l^b) rho) and the Bell operator is
the same contraction with the coefficient tensor in place of rho.

For the Fourier-type family the parties dial local phases, apply the
Fourier transform (its conjugate on side B) and detect in the fixed
basis. The measured directions are therefore the computational basis
pulled back through that transform, i.e. the columns of its adjoint;
`fourier_settings` stores exactly those adjoints so the column convention
holds for every settings object in the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell_functional import BellFunctional, ProbabilityTable
from .errors import DimensionError, ShapeError
from .tensor_core import DensityMatrix, UnitaryMatrix, fourier_matrix


@dataclass(frozen=True)
class PhaseSettings:
    """Local phase vectors (radians) for the Fourier measurement family."""

    d: int
    phi_1: np.ndarray
    phi_2: np.ndarray
    varphi_1: np.ndarray
    varphi_2: np.ndarray

    def __post_init__(self) -> None:
        for name in ("phi_1", "phi_2", "varphi_1", "varphi_2"):
            v = np.asarray(getattr(self, name), dtype=float).reshape(-1)
            if v.size != self.d:
                raise ShapeError(f"{name} must have length {self.d}, got {v.size}")
            if not np.all(np.isfinite(v)):
                raise ValueError(f"{name} contains non-finite entries")
            object.__setattr__(self, name, v)


def canonical_phases(d: int) -> PhaseSettings:
    """The standard optimal phase family: 0, j*pi/d, j*pi/(2d), -j*pi/(2d)."""
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    j = np.arange(d)
    return PhaseSettings(d, np.zeros(d), j * np.pi / d, j * np.pi / (2 * d), -j * np.pi / (2 * d))


@dataclass(frozen=True)
class MeasurementSettings:
    """Two complete Von Neumann measurements per party.

    The columns of each unitary are the measured orthonormal directions:
    outcome j of observable a on side A projects onto column j of
    party_a[a].
    """

    d: int
    party_a: tuple[UnitaryMatrix, UnitaryMatrix]
    party_b: tuple[UnitaryMatrix, UnitaryMatrix]

    def __post_init__(self) -> None:
        for u in (*self.party_a, *self.party_b):
            if u.d != self.d:
                raise ShapeError(f"settings mix dimensions {u.d} and {self.d}")

    @property
    def n_outcomes(self) -> int:
        return self.d

    def projector_stack(self, party: str, setting: int, n_outcomes: int | None = None) -> np.ndarray:
        """(n, d, d) stack of outcome projectors for one observable.

        n_outcomes = d gives one rank-1 projector per column; n_outcomes = 2
        collapses to column 0 versus its orthogonal complement (the
        two-outcome reading used by CHSH-type functionals).
        """
        u = (self.party_a if party.upper() == "A" else self.party_b)[setting].entries
        cols = np.einsum("mj,pj->jmp", u, u.conj())
        n = self.d if n_outcomes is None else n_outcomes
        if n == self.d:
            return cols
        if n == 2:
            return np.stack([cols[0], np.eye(self.d) - cols[0]])
        raise ShapeError(f"n_outcomes must be {self.d} or 2, got {n}")

    def unitary_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Contiguous (2, d, d) arrays of the stored unitaries, per party."""
        ua = np.ascontiguousarray([u.entries for u in self.party_a])
        ub = np.ascontiguousarray([u.entries for u in self.party_b])
        return ua, ub


@dataclass(frozen=True)
class TwoOutcomeSettings:
    """Binary measurements given by explicit accept projectors.

    Each observable is (P, 1 - P); outcome index 0 is the accept (+1)
    class. Used for the CHSH measurements embedded in dimension d.
    """

    d: int
    party_a: tuple[np.ndarray, np.ndarray]
    party_b: tuple[np.ndarray, np.ndarray]

    @property
    def n_outcomes(self) -> int:
        return 2

    def projector_stack(self, party: str, setting: int, n_outcomes: int | None = None) -> np.ndarray:
        if n_outcomes not in (None, 2):
            raise ShapeError("two-outcome settings only expose 2 outcome classes")
        p = (self.party_a if party.upper() == "A" else self.party_b)[setting]
        return np.stack([p, np.eye(self.d) - p])


def fourier_settings(p: PhaseSettings) -> MeasurementSettings:
    """Measured bases for the phase family (see the module docstring).

    Side A measures the columns of (U_FT diag(e^{i phi_a}))^dagger, side B
    those of (conj(U_FT) diag(e^{i varphi_b}))^dagger.
    """
    f = fourier_matrix(p.d).entries
    mk = lambda ft, ph: UnitaryMatrix(p.d, (ft @ np.diag(np.exp(1j * ph))).conj().T)
    return MeasurementSettings(
        p.d,
        (mk(f, p.phi_1), mk(f, p.phi_2)),
        (mk(f.conj(), p.varphi_1), mk(f.conj(), p.varphi_2)),
    )


def canonical_settings(d: int) -> MeasurementSettings:
    """fourier_settings at the canonical phases."""
    return fourier_settings(canonical_phases(d))


def joint_probabilities(rho, settings, n_outcomes: int | None = None) -> ProbabilityTable:
    """Outcome table P[a][b][j][l] = tr((Pi_j^a (x) Pi_l^b) rho).

    n_outcomes defaults to the settings' native outcome count; pass 2 to
    collapse Von Neumann settings into CHSH outcome classes.
    """
    m = rho.entries if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    d = settings.d
    if m.shape != (d * d, d * d):
        raise ShapeError(f"state has shape {m.shape}, settings expect {(d * d, d * d)}")
    n = settings.n_outcomes if n_outcomes is None else n_outcomes
    r4 = m.reshape(d, d, d, d)
    out = np.empty((2, 2, n, n))
    for a in range(2):
        pa = settings.projector_stack("A", a, n)
        for b in range(2):
            pb = settings.projector_stack("B", b, n)
            out[a, b] = np.real(np.einsum("jmp,lnq,pqmn->jl", pa, pb, r4, optimize=True))
    return ProbabilityTable(out)


def bell_operator(f: BellFunctional, settings) -> np.ndarray:
    """The Hermitian operator whose expectation equals the Bell value.

    B = sum_{a,b,j,l} M[a][b][j][l] Pi_j^a (x) Pi_l^b, so that
    tr(B rho) = evaluate(f, joint_probabilities(rho, settings)).
    """
    d = settings.d
    n = f.n_outcomes
    out = np.zeros((d * d, d * d), dtype=complex)
    for a in range(2):
        pa = settings.projector_stack("A", a, n)
        for b in range(2):
            pb = settings.projector_stack("B", b, n)
            out += np.einsum("jl,jmp,lnq->mnpq", f.M[a, b], pa, pb, optimize=True).reshape(
                d * d, d * d
            )
    return out


def plane_projector(d: int, omega: float) -> np.ndarray:
    """Projector onto (|0> + e^{i omega} |1>)/sqrt(2) inside C^d."""
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    v = np.zeros(d, dtype=complex)
    v[0] = 1.0
    v[1] = np.exp(1j * omega)
    v /= np.sqrt(2)
    return np.outer(v, v.conj())


def chsh_embedded_settings(d: int) -> TwoOutcomeSettings:
    """The qubit-optimal CHSH measurements embedded in dimension d.

    Accept projectors are rank 1 in the {|0>, |1>} plane (A at angles 0 and
    pi/2, B at -pi/4 and pi/4); reject operators have rank d - 1.
    """
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    return TwoOutcomeSettings(
        d,
        (plane_projector(d, 0.0), plane_projector(d, np.pi / 2)),
        (plane_projector(d, -np.pi / 4), plane_projector(d, np.pi / 4)),
    )
