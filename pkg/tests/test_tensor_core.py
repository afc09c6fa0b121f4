import math

import numpy as np
import pytest
from conftest import random_density, random_pure

from cglmplab import (
    DensityMatrix,
    PureState,
    fourier_matrix,
    hermitian_spectrum,
    max_entangled,
    partial_trace,
    partial_transpose,
    schmidt_state,
    swap_operator,
)
from cglmplab.errors import DimensionError, DomainError, ShapeError

GAMMA = (math.sqrt(11) - math.sqrt(3)) / 2  # middle Schmidt amplitude of the
# maximal-violation qutrit state


def test_max_entangled_d2():
    st = max_entangled(2)
    np.testing.assert_allclose(st.amplitudes, np.array([1, 0, 0, 1]) / math.sqrt(2))


def test_max_entangled_d3_positions():
    st = max_entangled(3)
    expected = np.zeros(9)
    expected[[0, 4, 8]] = 1 / math.sqrt(3)
    np.testing.assert_allclose(st.amplitudes, expected)


def test_max_entangled_marginal_is_maximally_mixed():
    red = partial_trace(max_entangled(3).density(), "B")
    np.testing.assert_allclose(red, np.eye(3) / 3, atol=1e-14)


def test_max_entangled_rejects_small_dimension():
    with pytest.raises(DimensionError):
        max_entangled(1)


def test_schmidt_state_equal_coeffs():
    np.testing.assert_allclose(
        schmidt_state([1, 1, 1]).amplitudes, max_entangled(3).amplitudes
    )


def test_schmidt_state_gamma_normalization():
    st = schmidt_state([1, GAMMA, 1])
    n = 2 + GAMMA ** 2
    np.testing.assert_allclose(st.amplitudes[0], 1 / math.sqrt(n))
    np.testing.assert_allclose(st.amplitudes[4], GAMMA / math.sqrt(n))
    np.testing.assert_allclose(st.amplitudes[8], 1 / math.sqrt(n))


def test_schmidt_state_two_term_in_higher_dimension():
    st = schmidt_state([1, 1, 0, 0, 0])
    assert st.d == 5
    np.testing.assert_allclose(st.amplitudes[0], 1 / math.sqrt(2))
    np.testing.assert_allclose(st.amplitudes[6], 1 / math.sqrt(2))
    assert np.count_nonzero(st.amplitudes) == 2


def test_schmidt_state_rejects_negative_and_zero():
    with pytest.raises(DomainError):
        schmidt_state([1, -0.5, 1])
    with pytest.raises(DomainError):
        schmidt_state([0, 0, 0])


def test_pure_state_must_be_normalized():
    with pytest.raises(DomainError):
        PureState(2, np.array([1.0, 0, 0, 1.0]))


def test_partial_trace_product_state():
    rng = np.random.default_rng(3)
    sa = random_density(rng, 3)[:3, :3]
    sa /= np.trace(sa).real
    sb = np.diag([0.7, 0.2, 0.1]).astype(complex)
    rho = np.kron(sa, sb)
    np.testing.assert_allclose(partial_trace(rho, "B"), sa, atol=1e-13)
    np.testing.assert_allclose(partial_trace(rho, "A"), sb, atol=1e-13)


def test_partial_trace_gamma_state():
    st = schmidt_state([1, GAMMA, 1])
    # independent oracle: contract the amplitude tensor by hand
    amp = st.amplitude_matrix()
    oracle = np.zeros((3, 3), dtype=complex)
    for j in range(3):
        for m in range(3):
            for h in range(3):
                oracle[j, m] += amp[j, h] * np.conj(amp[m, h])
    red = partial_trace(st.density(), "B")
    np.testing.assert_allclose(red, oracle, atol=1e-14)
    np.testing.assert_allclose(
        red, np.diag([1, GAMMA ** 2, 1]) / (2 + GAMMA ** 2), atol=1e-14
    )


def test_partial_trace_marginals_share_spectrum():
    rng = np.random.default_rng(7)
    for d in (2, 3, 4):
        for _ in range(10):
            v = random_pure(rng, d)
            rho = np.outer(v, v.conj())
            ev_a = np.sort(np.linalg.eigvalsh(partial_trace(rho, "B")))
            ev_b = np.sort(np.linalg.eigvalsh(partial_trace(rho, "A")))
            np.testing.assert_allclose(ev_a, ev_b, atol=1e-10)


def test_partial_transpose_identity_and_product():
    rng = np.random.default_rng(5)
    np.testing.assert_allclose(partial_transpose(np.eye(9), "A"), np.eye(9))
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    np.testing.assert_allclose(
        partial_transpose(np.kron(a, b), "A"), np.kron(a.T, b), atol=1e-13
    )
    np.testing.assert_allclose(
        partial_transpose(np.kron(a, b), "B"), np.kron(a, b.T), atol=1e-13
    )


@pytest.mark.parametrize("d", range(2, 9))
def test_partial_transpose_of_swap(d):
    expected = d * max_entangled(d).projector()
    np.testing.assert_allclose(
        partial_transpose(swap_operator(d), "A"), expected, atol=1e-12
    )


def test_partial_transpose_involution_and_trace():
    rng = np.random.default_rng(9)
    for _ in range(20):
        h = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        h = h + h.conj().T
        pt = partial_transpose(h, "A")
        np.testing.assert_allclose(partial_transpose(pt, "A"), h, atol=0)
        np.testing.assert_allclose(np.trace(pt), np.trace(h), atol=1e-13)


def test_partial_transpose_rejects_bad_shapes():
    with pytest.raises(ShapeError):
        partial_transpose(np.zeros((3, 4)))
    with pytest.raises(ShapeError):
        partial_transpose(np.zeros((5, 5)))  # 5 is not a square


def test_hermitian_spectrum_identity():
    vals, vecs = hermitian_spectrum(np.eye(3))
    np.testing.assert_allclose(vals, [1, 1, 1])
    np.testing.assert_allclose(vecs @ vecs.conj().T, np.eye(3), atol=1e-12)


def test_hermitian_spectrum_diagonal_block():
    s3 = math.sqrt(3)
    red1 = 2 / 3 * np.array([[0, s3, 3], [s3, 0, s3], [3, s3, 0]])
    vals, _ = hermitian_spectrum(red1)
    target = [1 + math.sqrt(11 / 3), 1 - math.sqrt(11 / 3), -2]
    np.testing.assert_allclose(vals, target, atol=1e-12)


def test_hermitian_spectrum_offdiagonal_block():
    s3 = math.sqrt(3)
    red2 = 2 / 3 * np.array([[0, s3, 0], [s3, 0, 0], [0, 0, 0]])
    vals, _ = hermitian_spectrum(red2)
    np.testing.assert_allclose(vals, [2 / s3, 0, -2 / s3], atol=1e-12)


def test_hermitian_spectrum_reconstructs():
    rng = np.random.default_rng(13)
    for n in (4, 16, 64):
        h = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = (h + h.conj().T) / 2
        vals, vecs = hermitian_spectrum(h)
        assert np.all(np.diff(vals) <= 1e-12)
        recon = (vecs * vals) @ vecs.conj().T
        assert np.linalg.norm(recon - h) < 1e-9
        resid = h @ vecs - vecs * vals
        assert np.max(np.abs(resid)) < 1e-9


def test_hermitian_spectrum_rejects_non_hermitian():
    with pytest.raises(DomainError):
        hermitian_spectrum(np.array([[0, 1], [0, 0]], dtype=complex))


def test_fourier_matrix_small_cases():
    f2 = fourier_matrix(2).entries
    np.testing.assert_allclose(np.abs(f2), np.full((2, 2), 1 / math.sqrt(2)))
    np.testing.assert_allclose(f2[1, 1], -1 / math.sqrt(2))
    f3 = fourier_matrix(3).entries
    np.testing.assert_allclose(f3[1, 1], np.exp(2j * np.pi / 3) / math.sqrt(3))


@pytest.mark.parametrize("d", range(2, 9))
def test_fourier_matrix_unitary(d):
    f = fourier_matrix(d).entries
    np.testing.assert_allclose(f @ f.conj().T, np.eye(d), atol=1e-12)


def test_density_matrix_validation():
    with pytest.raises(DomainError):
        DensityMatrix(2, np.eye(4))  # trace 4
    bad = np.eye(4, dtype=complex) / 4
    bad[0, 1] = 0.3  # not Hermitian
    with pytest.raises(DomainError):
        DensityMatrix(2, bad)
    neg = np.diag([0.8, 0.4, -0.1, -0.1]).astype(complex)
    with pytest.raises(DomainError):
        DensityMatrix(2, neg)
