import math

import numpy as np
import pytest
from conftest import random_settings

from cglmplab import (
    bell_operator,
    block_decompose,
    canonical_operator,
    cglmp_functional,
    max_entangled,
    max_violation,
    table1,
    varied_red1,
    violation_report,
)
from cglmplab.errors import DomainError, NotBlockDiagonalError

TOP = 1 + math.sqrt(11 / 3)
GAMMA = (math.sqrt(11) - math.sqrt(3)) / 2
S3 = math.sqrt(3)
RED1 = 2 / 3 * np.array([[0, S3, 3], [S3, 0, S3], [3, S3, 0]])
RED2 = 2 / 3 * np.array([[0, S3, 0], [S3, 0, 0], [0, 0, 0]])

# reference table: (violation for the maximally entangled state, operator
# maximum, percent difference) for d = 3..8
REFERENCE_ROWS = {
    3: (2.8729, 2.9149, 1.4591),
    4: (2.8962, 2.9727, 2.6398),
    5: (2.9105, 3.0157, 3.6133),
    6: (2.9202, 3.0497, 4.4345),
    7: (2.9272, 3.0776, 5.1411),
    8: (2.9324, 3.1013, 5.7588),
}


def test_max_violation_canonical_d3():
    value, state = max_violation(canonical_operator(3))
    assert value == pytest.approx(TOP, abs=1e-12)
    amps = state.amplitudes
    assert abs(amps[0] - amps[8]) < 1e-10
    assert np.real(amps[4] / amps[0]) == pytest.approx(GAMMA, abs=1e-10)
    # off-diagonal amplitudes vanish
    mat = state.amplitude_matrix()
    assert np.max(np.abs(mat - np.diag(np.diag(mat)))) < 1e-10


def test_max_violation_identity_warns_on_degeneracy():
    with pytest.warns(UserWarning):
        value, _ = max_violation(np.eye(9))
    assert value == pytest.approx(1.0)


def test_max_violation_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 1] = 1.0
    with pytest.raises(DomainError):
        max_violation(m)


def test_block_decompose_canonical_d3():
    blocks = block_decompose(canonical_operator(3))
    assert len(blocks) == 3
    np.testing.assert_allclose(blocks[0], RED1, atol=1e-12)
    np.testing.assert_allclose(blocks[1], RED2, atol=1e-12)
    # the third block equals the second after a cyclic relabeling of its
    # basis (j -> j - 1); entrywise it couples elements 1 and 2
    perm = np.array([1, 2, 0])
    np.testing.assert_allclose(blocks[2][np.ix_(perm, perm)], RED2, atol=1e-12)
    for blk in blocks[1:]:
        np.testing.assert_allclose(
            np.sort(np.linalg.eigvalsh(blk)), [-2 / S3, 0, 2 / S3], atol=1e-10
        )
    np.testing.assert_allclose(
        np.sort(np.linalg.eigvalsh(blocks[0])), [-2, 1 - math.sqrt(11 / 3), TOP], atol=1e-10
    )


def test_block_decompose_reassembles():
    for d in (3, 4, 5):
        op = canonical_operator(d)
        blocks = block_decompose(op)
        rebuilt = np.zeros_like(op)
        for r, blk in enumerate(blocks):
            idx = [j * d + (j + r) % d for j in range(d)]
            rebuilt[np.ix_(idx, idx)] = blk
        assert np.max(np.abs(rebuilt - op)) < 1e-12


def test_block_decompose_rejects_generic_settings():
    rng = np.random.default_rng(42)
    op = bell_operator(cglmp_functional(3), random_settings(rng, 3))
    with pytest.raises(NotBlockDiagonalError) as err:
        block_decompose(op)
    assert err.value.residual > 1e-6


def test_varied_red1_at_zero():
    np.testing.assert_allclose(varied_red1(0.0, 0.0), RED1, atol=1e-14)


def test_varied_red1_summand_spectra():
    # each summand alone has spectrum (-1, (1 -+ sqrt(11/3))/2)
    half = varied_red1(0.0, 0.0) / 2
    target = np.sort([-1, (1 - math.sqrt(11 / 3)) / 2, (1 + math.sqrt(11 / 3)) / 2])
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(half)), target, atol=1e-10)
    rng = np.random.default_rng(4)
    for _ in range(5):
        a, b = rng.uniform(-np.pi, np.pi, 2)
        s3 = math.sqrt(3)
        twisted = (
            np.array(
                [
                    [0, s3 * np.exp(1j * a), 3 * np.exp(1j * b)],
                    [s3 * np.exp(-1j * a), 0, s3 * np.exp(1j * (b - a))],
                    [3 * np.exp(-1j * b), s3 * np.exp(1j * (a - b)), 0],
                ]
            )
            / 3
        )
        np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(twisted)), target, atol=1e-10)


def test_varied_red1_never_exceeds_top():
    rng = np.random.default_rng(6)
    worst = -np.inf
    for _ in range(1000):
        a, b = rng.uniform(-np.pi, np.pi, 2)
        worst = max(worst, np.linalg.eigvalsh(varied_red1(a, b))[-1])
    assert worst <= TOP + 1e-9


@pytest.mark.parametrize("d", range(3, 9))
def test_table_rows_match_reference(d):
    r = violation_report(d)
    ref = REFERENCE_ROWS[d]
    assert r.value_max_entangled == pytest.approx(ref[0], abs=1e-3)
    assert r.value_operator_max == pytest.approx(ref[1], abs=1e-3)
    assert r.difference_percent == pytest.approx(ref[2], abs=1e-3)
    assert r.value_operator_max >= r.value_max_entangled - 1e-10
    expected_pct = 100 * (r.value_operator_max / r.value_max_entangled - 1)
    assert r.difference_percent == pytest.approx(expected_pct, abs=1e-9)


def test_table_difference_grows_with_dimension():
    rows = table1(3, 8)
    pct = [r.difference_percent for r in rows]
    assert all(b > a for a, b in zip(pct, pct[1:]))


def test_table_gamma_only_for_d3():
    rows = table1(3, 4)
    assert rows[0].gamma == pytest.approx(GAMMA, abs=1e-10)
    assert rows[1].gamma is None


def test_table_maximizer_is_schmidt_diagonal():
    for r in table1(3, 8):
        mat = r.optimal_state.amplitude_matrix()
        off = mat - np.diag(np.diag(mat))
        assert np.max(np.abs(off)) < 1e-8


def test_d5_value_matches_table_not_inline_quote():
    # one source lists 3.0517 for d = 5 in running text; the computed
    # operator maximum agrees with the tabulated 3.0157 instead
    r = violation_report(5)
    assert r.value_operator_max == pytest.approx(3.0157, abs=1e-3)
    assert abs(r.value_operator_max - 3.0517) > 0.03


def test_table1_range_guard():
    with pytest.raises(ValueError):
        table1(2, 5)
    with pytest.raises(ValueError):
        table1(5, 4)
