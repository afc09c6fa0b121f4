import numpy as np
import pytest
from conftest import random_pure, random_unitary

from cglmplab.kernels import BACKEND, _pykernels, pure_state_table, pure_state_value

try:
    from cglmplab.kernels import _ckernels
except ImportError:
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None, reason="compiled kernels unavailable")


def make_inputs(rng, d):
    ua = np.ascontiguousarray([random_unitary(rng, d) for _ in range(2)])
    ub = np.ascontiguousarray([random_unitary(rng, d) for _ in range(2)])
    phi = np.ascontiguousarray(random_pure(rng, d).reshape(d, d))
    return ua, ub, phi


def test_backend_is_reported():
    assert BACKEND in ("cython", "python")


@pytest.mark.parametrize("d", (2, 3, 5, 8))
def test_table_is_a_distribution(d):
    rng = np.random.default_rng(d)
    ua, ub, phi = make_inputs(rng, d)
    for n in (d, 2):
        table = pure_state_table(ua, ub, phi, n)
        assert table.shape == (2, 2, n, n)
        assert table.min() >= -1e-14
        np.testing.assert_allclose(table.sum(axis=(2, 3)), np.ones((2, 2)), atol=1e-12)


@needs_compiled
@pytest.mark.parametrize("d", (2, 3, 4, 5, 8))
def test_backends_agree(d):
    rng = np.random.default_rng(100 + d)
    m_full = rng.normal(size=(2, 2, d, d))
    m_two = rng.normal(size=(2, 2, 2, 2))
    for _ in range(20):
        ua, ub, phi = make_inputs(rng, d)
        np.testing.assert_allclose(
            _ckernels.pure_state_table(ua, ub, phi, d),
            _pykernels.pure_state_table(ua, ub, phi, d),
            atol=1e-13,
        )
        np.testing.assert_allclose(
            _ckernels.pure_state_table(ua, ub, phi, 2),
            _pykernels.pure_state_table(ua, ub, phi, 2),
            atol=1e-13,
        )
        assert _ckernels.pure_state_value(m_full, ua, ub, phi, d) == pytest.approx(
            _pykernels.pure_state_value(m_full, ua, ub, phi, d), abs=1e-12
        )
        assert _ckernels.pure_state_value(m_two, ua, ub, phi, 2) == pytest.approx(
            _pykernels.pure_state_value(m_two, ua, ub, phi, 2), abs=1e-12
        )


def test_value_equals_table_contraction():
    rng = np.random.default_rng(55)
    d = 4
    ua, ub, phi = make_inputs(rng, d)
    m = rng.normal(size=(2, 2, d, d))
    expected = float(np.sum(m * pure_state_table(ua, ub, phi, d)))
    assert pure_state_value(m, ua, ub, phi, d) == pytest.approx(expected, abs=1e-13)


def test_kernel_matches_joint_probabilities():
    # the kernel is the pure-state shortcut of the general machinery
    from cglmplab import PureState, joint_probabilities
    from conftest import random_settings

    rng = np.random.default_rng(56)
    d = 3
    s = random_settings(rng, d)
    amps = random_pure(rng, d)
    state = PureState(d, amps)
    ua, ub = s.unitary_arrays()
    table = pure_state_table(ua, ub, np.ascontiguousarray(amps.reshape(d, d)), d)
    np.testing.assert_allclose(
        table, joint_probabilities(state.density(), s).table, atol=1e-12
    )


def test_invalid_outcome_count_rejected():
    rng = np.random.default_rng(57)
    ua, ub, phi = make_inputs(rng, 4)
    with pytest.raises(ValueError):
        pure_state_table(ua, ub, phi, 3)


def test_force_python_env(monkeypatch):
    import importlib
    import sys

    monkeypatch.setenv("CGLMPLAB_PURE_PYTHON", "1")
    saved = {k: sys.modules.pop(k) for k in list(sys.modules) if k.startswith("cglmplab.kernels")}
    try:
        import cglmplab.kernels as fresh

        importlib.reload(fresh)
        assert fresh.BACKEND == "python"
    finally:
        sys.modules.update(saved)
