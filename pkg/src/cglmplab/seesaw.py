"""See-saw search for the maximal violation of a Bell functional.

The search alternates two monotone half-steps:
- state step: for fixed settings the optimal state is the top eigenvector
  of the Bell operator (exact);
- measurement step: for a fixed state each of the four unitaries is
  improved by finite-difference gradient ascent in a local chart of the
  unitary group (left multiplication by exp of an anti-Hermitian
  generator), accepting only improvements.

Every accepted update can only raise the objective, so the value trace
within one restart is nondecreasing. Restarts draw independent random
initial settings from the seeded generator and the best restart wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell_functional import BellFunctional
from .errors import ShapeError
from .kernels import pure_state_value
from .quantum_model import MeasurementSettings, bell_operator
from .tensor_core import PureState, UnitaryMatrix


@dataclass(frozen=True)
class OptimizerConfig:
    """Search budget and reproducibility knobs.

    tolerance is the sweep-improvement threshold that stops a restart;
    gradient_step the central-difference step in the unitary chart.
    """

    restarts: int = 20
    max_iterations: int = 50
    tolerance: float = 1e-9
    seed: int = 0
    gradient_step: float = 1e-5
    ascent_rounds: int = 3

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.tolerance <= 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")


@dataclass(frozen=True)
class OptimizationResult:
    """Best value found with the inputs attaining it.

    history holds the objective after every half-step of the winning
    restart (state step, then each of the four unitary ascents per sweep).
    """

    best_value: float
    best_settings: MeasurementSettings
    best_state: PureState
    iterations_used: int
    converged: bool
    history: tuple[float, ...]


def antihermitian_from_params(theta: np.ndarray, d: int) -> np.ndarray:
    """Anti-Hermitian generator from d^2 real parameters.

    The first d entries give the imaginary diagonal; the remaining
    d(d-1)/2 (real, imaginary) pairs fill the strict upper triangle in
    row-major order.
    """
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if theta.size != d * d:
        raise ShapeError(f"expected {d * d} parameters, got {theta.size}")
    a = np.zeros((d, d), dtype=complex)
    np.fill_diagonal(a, 1j * theta[:d])
    pos = d
    for i in range(d):
        for j in range(i + 1, d):
            x, y = theta[pos], theta[pos + 1]
            pos += 2
            a[i, j] = x + 1j * y
            a[j, i] = -x + 1j * y
    return a


def _expm_antihermitian(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(-1j * a)
    return (v * np.exp(1j * w)) @ v.conj().T


def unitary_from_params(theta) -> UnitaryMatrix:
    """exp of the anti-Hermitian generator; surjective onto the unitaries."""
    theta = np.asarray(theta, dtype=float).reshape(-1)
    d = math.isqrt(theta.size)
    if d * d != theta.size:
        raise ShapeError(f"parameter count {theta.size} is not a perfect square")
    return UnitaryMatrix(d, _expm_antihermitian(antihermitian_from_params(theta, d)))


def _settings_from_stacks(d: int, ua: np.ndarray, ub: np.ndarray) -> MeasurementSettings:
    return MeasurementSettings(
        d,
        (UnitaryMatrix(d, ua[0]), UnitaryMatrix(d, ua[1])),
        (UnitaryMatrix(d, ub[0]), UnitaryMatrix(d, ub[1])),
    )


def _ascend_unitary(m, ua, ub, phi, n_outcomes, party, setting, cfg) -> float:
    """Gradient-ascend one unitary in place; returns the objective after."""
    stack = ua if party == 0 else ub
    d = stack.shape[1]
    nparams = d * d
    u0 = stack[setting].copy()
    v0 = pure_state_value(m, ua, ub, phi, n_outcomes)
    h = cfg.gradient_step

    def probe(gen_params: np.ndarray, exact: bool) -> float:
        a = antihermitian_from_params(gen_params, d)
        if exact:
            g = _expm_antihermitian(a)
        else:
            # 2nd-order expansion: unitary to O(h^3), ample for h ~ 1e-5
            g = np.eye(d) + a + 0.5 * (a @ a)
        stack[setting] = g @ u0
        return pure_state_value(m, ua, ub, phi, n_outcomes)

    for _ in range(cfg.ascent_rounds):
        grad = np.empty(nparams)
        e = np.zeros(nparams)
        for i in range(nparams):
            e[i] = h
            vp = probe(e, exact=False)
            e[i] = -h
            vm = probe(e, exact=False)
            e[i] = 0.0
            grad[i] = (vp - vm) / (2 * h)
        gnorm = float(np.linalg.norm(grad))
        if gnorm < 1e-12:
            break
        direction = grad / gnorm
        step = 1.0
        improved = False
        for _ in range(18):
            v = probe(step * direction, exact=True)
            if v > v0:
                u0 = stack[setting].copy()
                v0 = v
                improved = True
                break
            step *= 0.5
        if not improved:
            break
    stack[setting] = u0
    return v0


def ascend_settings(
    f: BellFunctional, state: PureState, settings: MeasurementSettings, cfg: OptimizerConfig
) -> tuple[MeasurementSettings, float]:
    """One measurement half-step: ascend all four unitaries at fixed state.

    Returns the updated settings and the objective value reached. Useful
    on its own for probing local maximality of a given configuration.
    """
    m = np.ascontiguousarray(f.M)
    ua, ub = settings.unitary_arrays()
    phi = np.ascontiguousarray(state.amplitude_matrix())
    value = pure_state_value(m, ua, ub, phi, f.n_outcomes)
    for party, setting in ((0, 0), (0, 1), (1, 0), (1, 1)):
        value = _ascend_unitary(m, ua, ub, phi, f.n_outcomes, party, setting, cfg)
    return _settings_from_stacks(settings.d, ua, ub), value


def _top_eigenstate(op: np.ndarray) -> tuple[float, np.ndarray]:
    vals, vecs = np.linalg.eigh(op)
    return float(vals[-1]), vecs[:, -1]


def _run_restart(f, d, cfg, rng):
    m = np.ascontiguousarray(f.M)
    n = f.n_outcomes
    ua = np.ascontiguousarray(
        [unitary_from_params(rng.standard_normal(d * d)).entries for _ in range(2)]
    )
    ub = np.ascontiguousarray(
        [unitary_from_params(rng.standard_normal(d * d)).entries for _ in range(2)]
    )
    history: list[float] = []
    prev_sweep = -np.inf
    converged = False
    state_vec = None
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        op = bell_operator(f, _settings_from_stacks(d, ua, ub))
        value, state_vec = _top_eigenstate(op)
        history.append(value)
        phi = np.ascontiguousarray(state_vec.reshape(d, d))
        for party, setting in ((0, 0), (0, 1), (1, 0), (1, 1)):
            value = _ascend_unitary(m, ua, ub, phi, n, party, setting, cfg)
            history.append(value)
        if value - prev_sweep < cfg.tolerance:
            converged = True
            break
        prev_sweep = value
    return value, ua, ub, state_vec, iterations, converged, history


def optimize_violation(f: BellFunctional, d: int, cfg: OptimizerConfig) -> OptimizationResult:
    """Best violation over cfg.restarts random starts of the see-saw.

    Deterministic for a fixed config: restart initializations are drawn
    sequentially from a generator seeded with cfg.seed.
    """
    rng = np.random.default_rng(cfg.seed)
    best = None
    for _ in range(cfg.restarts):
        out = _run_restart(f, d, cfg, rng)
        if best is None or out[0] > best[0]:
            best = out
    value, ua, ub, state_vec, iterations, converged, history = best
    pivot = state_vec[np.argmax(np.abs(state_vec))]
    state_vec = state_vec * (pivot.conjugate() / abs(pivot))
    return OptimizationResult(
        best_value=float(value),
        best_settings=_settings_from_stacks(d, ua, ub),
        best_state=PureState(d, state_vec),
        iterations_used=iterations,
        converged=converged,
        history=tuple(history),
    )
