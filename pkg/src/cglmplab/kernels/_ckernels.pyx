# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _pykernels; see that module for the conventions."""

import numpy as np

cimport cython


cdef inline double _sqabs(double complex z) noexcept:
    return z.real * z.real + z.imag * z.imag


cdef void _amplitude_grid(const double complex[:, :, ::1] ua,
                          const double complex[:, :, ::1] ub,
                          const double complex[:, ::1] phi,
                          Py_ssize_t a, Py_ssize_t b,
                          double complex[:, ::1] tmp,
                          double complex[:, ::1] grid) noexcept:
    cdef Py_ssize_t d = phi.shape[0]
    cdef Py_ssize_t j, l, m
    cdef double complex acc
    # tmp = ua[a]^H @ phi
    for j in range(d):
        for l in range(d):
            acc = 0
            for m in range(d):
                acc = acc + ua[a, m, j].conjugate() * phi[m, l]
            tmp[j, l] = acc
    # grid = tmp @ conj(ub[b])
    for j in range(d):
        for l in range(d):
            acc = 0
            for m in range(d):
                acc = acc + tmp[j, m] * ub[b, m, l].conjugate()
            grid[j, l] = acc


def pure_state_table(ua, ub, phi, int n_outcomes):
    cdef const double complex[:, :, ::1] ua_v = np.ascontiguousarray(ua, dtype=np.complex128)
    cdef const double complex[:, :, ::1] ub_v = np.ascontiguousarray(ub, dtype=np.complex128)
    cdef const double complex[:, ::1] phi_v = np.ascontiguousarray(phi, dtype=np.complex128)
    cdef Py_ssize_t d = phi_v.shape[0]
    if n_outcomes != d and n_outcomes != 2:
        raise ValueError(f"n_outcomes must be {d} or 2, got {n_outcomes}")
    out = np.empty((2, 2, n_outcomes, n_outcomes))
    cdef double[:, :, :, ::1] out_v = out
    tmp = np.empty((d, d), dtype=np.complex128)
    grid = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] tmp_v = tmp
    cdef double complex[:, ::1] grid_v = grid
    cdef Py_ssize_t a, b, j, l
    cdef double p, row0, col0, rest
    for a in range(2):
        for b in range(2):
            _amplitude_grid(ua_v, ub_v, phi_v, a, b, tmp_v, grid_v)
            if n_outcomes == d:
                for j in range(d):
                    for l in range(d):
                        out_v[a, b, j, l] = _sqabs(grid_v[j, l])
            else:
                row0 = 0
                col0 = 0
                rest = 0
                for l in range(1, d):
                    row0 += _sqabs(grid_v[0, l])
                for j in range(1, d):
                    col0 += _sqabs(grid_v[j, 0])
                for j in range(1, d):
                    for l in range(1, d):
                        rest += _sqabs(grid_v[j, l])
                out_v[a, b, 0, 0] = _sqabs(grid_v[0, 0])
                out_v[a, b, 0, 1] = row0
                out_v[a, b, 1, 0] = col0
                out_v[a, b, 1, 1] = rest
    return out


def pure_state_value(M, ua, ub, phi, int n_outcomes):
    cdef const double[:, :, :, ::1] m_v = np.ascontiguousarray(M, dtype=np.float64)
    cdef const double complex[:, :, ::1] ua_v = np.ascontiguousarray(ua, dtype=np.complex128)
    cdef const double complex[:, :, ::1] ub_v = np.ascontiguousarray(ub, dtype=np.complex128)
    cdef const double complex[:, ::1] phi_v = np.ascontiguousarray(phi, dtype=np.complex128)
    cdef Py_ssize_t d = phi_v.shape[0]
    if n_outcomes != d and n_outcomes != 2:
        raise ValueError(f"n_outcomes must be {d} or 2, got {n_outcomes}")
    if m_v.shape[2] != n_outcomes or m_v.shape[3] != n_outcomes:
        raise ValueError("coefficient tensor does not match n_outcomes")
    tmp = np.empty((d, d), dtype=np.complex128)
    grid = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] tmp_v = tmp
    cdef double complex[:, ::1] grid_v = grid
    cdef Py_ssize_t a, b, j, l
    cdef double value = 0
    cdef double row0, col0, rest
    for a in range(2):
        for b in range(2):
            _amplitude_grid(ua_v, ub_v, phi_v, a, b, tmp_v, grid_v)
            if n_outcomes == d:
                for j in range(d):
                    for l in range(d):
                        value += m_v[a, b, j, l] * _sqabs(grid_v[j, l])
            else:
                row0 = 0
                col0 = 0
                rest = 0
                for l in range(1, d):
                    row0 += _sqabs(grid_v[0, l])
                for j in range(1, d):
                    col0 += _sqabs(grid_v[j, 0])
                for j in range(1, d):
                    for l in range(1, d):
                        rest += _sqabs(grid_v[j, l])
                value += m_v[a, b, 0, 0] * _sqabs(grid_v[0, 0])
                value += m_v[a, b, 0, 1] * row0
                value += m_v[a, b, 1, 0] * col0
                value += m_v[a, b, 1, 1] * rest
    return value
