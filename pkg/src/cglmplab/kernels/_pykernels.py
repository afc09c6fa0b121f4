"""Reference NumPy implementation of the hot kernels.

Conventions match the compiled twin exactly:
- ua, ub: (2, d, d) complex arrays, ua[a] columns = measured directions;
- phi: (d, d) amplitude matrix of the pure state;
- n_outcomes: d (one outcome per column) or 2 (column 0 vs the rest).
"""

import numpy as np


def _amplitude_grid(ua, ub, phi, a, b):
    # <basis_j (x) basis_l | state> for all j, l at once
    return ua[a].conj().T @ phi @ ub[b].conj()


def pure_state_table(ua, ub, phi, n_outcomes):
    d = phi.shape[0]
    out = np.empty((2, 2, n_outcomes, n_outcomes))
    for a in range(2):
        for b in range(2):
            p = np.abs(_amplitude_grid(ua, ub, phi, a, b)) ** 2
            if n_outcomes == d:
                out[a, b] = p
            elif n_outcomes == 2:
                out[a, b, 0, 0] = p[0, 0]
                out[a, b, 0, 1] = p[0, 1:].sum()
                out[a, b, 1, 0] = p[1:, 0].sum()
                out[a, b, 1, 1] = p[1:, 1:].sum()
            else:
                raise ValueError(f"n_outcomes must be {d} or 2, got {n_outcomes}")
    return out


def pure_state_value(M, ua, ub, phi, n_outcomes):
    return float(np.sum(M * pure_state_table(ua, ub, phi, n_outcomes)))
