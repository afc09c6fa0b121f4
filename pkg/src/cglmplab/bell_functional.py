"""Bell expressions as coefficient tensors over joint outcome probabilities.

A functional is a real tensor M[a][b][j][l] contracted against tables
P[a][b][j][l] = P(A_a = j, B_b = l), where a, b in {0, 1} index each
party's two measurement settings. Terms of the form P(A_a = B_b + k)
place weight on the cells l = (j - k) mod d; terms P(B_b = A_a + k) on
the cells l = (j + k) mod d.

The CGLMP and CHSH constructors additionally carry an exact integer
representation (entries scaled by d - 1) so that the deterministic
local-variable bound can be certified in integer arithmetic, free of
floating-point round-off.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError, DimensionError, ShapeError

ENUMERATION_LIMIT = 10 ** 7


@dataclass(frozen=True)
class BellFunctional:
    """Coefficient tensor of a two-setting bipartite Bell expression.

    n_outcomes is the number of outcome labels per measurement (the local
    dimension for CGLMP, 2 for the CHSH correlation form). When
    exact_numerator is present, M == exact_numerator / exact_denominator
    entrywise and the local bound is enumerated exactly.
    """

    n_outcomes: int
    M: np.ndarray
    claimed_lv_bound: float
    n_settings: int = 2
    exact_numerator: np.ndarray | None = None
    exact_denominator: int = 1

    def __post_init__(self) -> None:
        m = np.asarray(self.M, dtype=float)
        n = self.n_outcomes
        if m.shape != (2, 2, n, n):
            raise ShapeError(f"expected coefficient shape (2, 2, {n}, {n}), got {m.shape}")
        if not np.isfinite(self.claimed_lv_bound):
            raise ValueError("claimed_lv_bound must be finite")
        object.__setattr__(self, "M", m)


@dataclass(frozen=True)
class ProbabilityTable:
    """Joint outcome probabilities P[a][b][j][l], one distribution per (a, b)."""

    table: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.table, dtype=float)
        if t.ndim != 4 or t.shape[:2] != (2, 2) or t.shape[2] != t.shape[3]:
            raise ShapeError(f"expected shape (2, 2, n, n), got {t.shape}")
        if t.min() < -1e-12:
            raise ValueError(f"negative probability {t.min()!r}")
        sums = t.sum(axis=(2, 3))
        if np.max(np.abs(sums - 1.0)) > 1e-10:
            raise ValueError("each (a, b) slice must sum to 1")
        object.__setattr__(self, "table", t)

    @property
    def n_outcomes(self) -> int:
        return self.table.shape[2]


def cglmp_functional(d: int) -> BellFunctional:
    """The d-outcome CGLMP expression with classical bound 2.

    For each k = 0 .. floor(d/2)-1, with weight (1 - 2k/(d-1)) (weight 1
    when d = 2), adds

        + P(A1 = B1 + k)  + P(B1 = A2 + k + 1)
        + P(A2 = B2 + k)  + P(B2 = A1 + k)
        - P(A1 = B1 - k - 1) - P(B1 = A2 - k)
        - P(A2 = B2 - k - 1) - P(B2 = A1 - k - 1)
    """
    if d < 2:
        raise DimensionError(f"outcome count must be >= 2, got {d}")
    den = d - 1
    num = np.zeros((2, 2, d, d), dtype=np.int64)
    j = np.arange(d)
    for k in range(d // 2):
        w = den - 2 * k  # numerator of (1 - 2k/(d-1))
        num[0, 0, j, (j - k) % d] += w
        num[1, 0, j, (j + k + 1) % d] += w
        num[1, 1, j, (j - k) % d] += w
        num[0, 1, j, (j + k) % d] += w
        num[0, 0, j, (j + k + 1) % d] -= w
        num[1, 0, j, (j - k) % d] -= w
        num[1, 1, j, (j + k + 1) % d] -= w
        num[0, 1, j, (j - k - 1) % d] -= w
    return BellFunctional(
        n_outcomes=d,
        M=num / den,
        claimed_lv_bound=2.0,
        exact_numerator=num,
        exact_denominator=den,
    )


def chsh_functional(d: int) -> BellFunctional:
    """The CHSH correlation expression over two outcome classes (+1, -1).

    Outcome index 0 is the +1 class and index 1 the -1 class, in every
    local dimension d; the coefficient of P(s, t | a, b) is
    sign(a, b) * s * t with sign negative only for the (2, 2) setting pair.
    """
    if d < 2:
        raise DimensionError(f"local dimension must be >= 2, got {d}")
    sign = np.array([[1, 1], [1, -1]])
    cls = np.array([1, -1])
    num = np.einsum("ab,s,t->abst", sign, cls, cls).astype(np.int64)
    return BellFunctional(
        n_outcomes=2,
        M=num.astype(float),
        claimed_lv_bound=2.0,
        exact_numerator=num,
        exact_denominator=1,
    )


def lv_bound(f: BellFunctional) -> float:
    """Maximum of the functional over deterministic local strategies.

    A strategy fixes one outcome per observable per party; by convexity the
    maximum over these d^4 assignments equals the supremum over all
    local-variable models. For a fixed pair of party-A outcomes the optimal
    party-B response decouples per observable, so the enumeration costs
    d^2 strategies x 2 observables x d responses instead of d^4.
    """
    n = f.n_outcomes
    if n ** (2 * f.n_settings) > ENUMERATION_LIMIT:
        raise CapacityError(
            f"{n ** (2 * f.n_settings)} deterministic strategies exceed the "
            f"enumeration limit of {ENUMERATION_LIMIT}"
        )
    m = f.exact_numerator if f.exact_numerator is not None else f.M
    total = None
    for b in range(2):
        # value of responding beta to observable b given A plays (a1, a2)
        resp = m[0, b][:, None, :] + m[1, b][None, :, :]
        best = resp.max(axis=2)
        total = best if total is None else total + best
    value = total.max()
    if f.exact_numerator is not None:
        return float(Fraction(int(value), f.exact_denominator))
    return float(value)


def evaluate(f: BellFunctional, p) -> float:
    """Contract the coefficient tensor against a probability table."""
    t = p.table if isinstance(p, ProbabilityTable) else np.asarray(p, dtype=float)
    if t.shape != f.M.shape:
        raise ShapeError(f"table shape {t.shape} does not match coefficients {f.M.shape}")
    return float(np.sum(f.M * t))
