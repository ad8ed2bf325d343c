import numpy as np
import pytest
import scipy.linalg

from banachlab import linalg
from banachlab.exceptions import PowerIterationStalled, Singular


def _with_singular_values(values, rng):
    n = len(values)
    u, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    v, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return u @ np.diag(values) @ v.T


def test_clustered_singular_values():
    top = np.array([1.0, -1.0]) / np.sqrt(2.0)
    other = np.array([1.0, 1.0]) / np.sqrt(2.0)
    matrix = 1.01 * np.outer(top, top) + np.outer(other, other)
    value = linalg.largest_singular_value(matrix, rel_tol=1e-12, max_iter=20000)
    assert value == pytest.approx(scipy.linalg.svdvals(matrix)[0], rel=1e-9)


@pytest.mark.parametrize("values", [(3.0, 1.0, 0.5), (2.0, 1.9, 0.1, 0.0), (1.0, 1.0, 1.0)])
def test_largest_singular_value_matches_svd(rng, values):
    matrix = _with_singular_values(values, rng)
    value = linalg.largest_singular_value(matrix, rel_tol=1e-12, max_iter=20000)
    assert value == pytest.approx(max(values), rel=1e-9)


def test_zero_matrix_has_zero_norm():
    assert linalg.largest_singular_value(np.zeros((3, 3)), 1e-12, 10) == 0.0


def test_stalls_when_iterations_run_out():
    rotation = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0)
    matrix = np.diag([1.0, 0.5]) @ rotation.T
    with pytest.raises(PowerIterationStalled):
        linalg.largest_singular_value(matrix, rel_tol=1e-15, max_iter=1)


def test_lu_solve_singular():
    with pytest.raises(Singular):
        linalg.lu_solve(np.array([[1.0, 2.0], [2.0, 4.0]]), np.ones(2), 1e-12)


def test_same_span_ignores_basis_choice():
    a = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    b = np.array([[1.0, 1.0], [1.0, -1.0], [0.0, 0.0]]) / np.sqrt(2.0)
    assert linalg.same_span(a, b, 1e-10)
    assert not linalg.same_span(a, np.array([[1.0], [0.0], [1.0]]), 1e-10)
