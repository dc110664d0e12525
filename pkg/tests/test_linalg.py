import math

import numpy as np
import pytest

from polymono import linalg


def _check_decomposition(m):
    vals, vecs = linalg.sym_eigen(m)
    scale = max(1.0, np.linalg.norm(m))
    assert np.linalg.norm(m - (vecs * vals) @ vecs.T) <= 1e-12 * scale
    assert np.linalg.norm(vecs.T @ vecs - np.eye(len(m))) <= 1e-12
    assert np.all(np.diff(vals) <= 0)


def test_eigen_swap_matrix():
    vals, vecs = linalg.sym_eigen([[0, 1], [1, 0]])
    np.testing.assert_allclose(vals, [1, -1], atol=1e-15)
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(vecs, [[s, s], [s, -s]], atol=1e-15)


def test_eigen_identity():
    vals, _ = linalg.sym_eigen(np.eye(3))
    np.testing.assert_array_equal(vals, [1, 1, 1])


def test_eigen_legendre_gram():
    # characteristic polynomial -l^3 + 90.625 l
    vals, _ = linalg.sym_eigen([[0, -3.75, 0], [-3.75, 0, 8.75], [0, 8.75, 0]])
    r = math.sqrt(90.625)
    np.testing.assert_allclose(vals, [r, 0, -r], atol=1e-12)


def test_sign_convention_largest_component_positive(rng):
    for _ in range(50):
        a = rng.uniform(-10, 10, (4, 4))
        _, vecs = linalg.sym_eigen(a + a.T)
        for col in vecs.T:
            assert col[np.argmax(np.abs(col))] > 0


def test_eigen_random_against_numpy(rng):
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        a = rng.uniform(-10, 10, (n, n))
        m = (a + a.T) / 2
        _check_decomposition(m)
        np.testing.assert_allclose(linalg.sym_eigen(m).eigvals, np.linalg.eigvalsh(m)[::-1], atol=1e-9)


def test_eigen_is_deterministic(rng):
    a = rng.normal(size=(5, 5))
    m = a + a.T
    e1, e2 = linalg.sym_eigen(m), linalg.sym_eigen(m.copy())
    assert np.array_equal(e1.eigvals, e2.eigvals) and np.array_equal(e1.eigvecs, e2.eigvecs)


def test_eigenvalues_invariant_under_similarity(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        a = rng.uniform(-10, 10, (n, n))
        m = (a + a.T) / 2
        q, _ = np.linalg.qr(rng.normal(size=(n, n)))
        np.testing.assert_allclose(linalg.sym_eigen(q.T @ m @ q).eigvals, linalg.sym_eigen(m).eigvals, atol=1e-9)


def test_min_eigenvalue_examples():
    m = np.array([[3, -2, -1], [-2, 2, 0], [-1, 0, 1]], dtype=float)
    assert np.linalg.det(m) == pytest.approx(0.0, abs=1e-12)
    assert abs(linalg.min_eigenvalue(m)) <= 1e-9
    assert linalg.min_eigenvalue(np.eye(2)) == 1.0
    assert linalg.min_eigenvalue([[0, 1], [1, 0]]) == pytest.approx(-1.0, abs=1e-15)


def test_psd_project_examples():
    pd = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert np.linalg.norm(linalg.psd_project(pd) - pd) <= 1e-12
    np.testing.assert_allclose(linalg.psd_project([[0, 1], [1, 0]]), 0.5 * np.ones((2, 2)), atol=1e-15)
    np.testing.assert_array_equal(linalg.psd_project(-np.eye(2)), np.zeros((2, 2)))


def test_psd_project_idempotent_and_psd(rng):
    for _ in range(200):
        n = int(rng.integers(1, 7))
        a = rng.uniform(-10, 10, (n, n))
        m = (a + a.T) / 2
        p = linalg.psd_project(m)
        assert linalg.min_eigenvalue(p) >= -1e-12 * np.linalg.norm(m)
        assert np.linalg.norm(linalg.psd_project(p) - p) <= 1e-10


def test_norm_examples():
    half = 0.5 * np.ones((2, 2))
    assert linalg.frobenius_norm(half) == 1.0
    assert linalg.frobenius_norm(np.eye(3)) == pytest.approx(math.sqrt(3))
    assert linalg.induced_one_norm(np.eye(3)) == 1.0
    assert linalg.induced_one_norm([[0, 1], [1, 0]]) == 1.0
    assert linalg.induced_one_norm([[1, -2], [-2, 0]]) == 3.0
    assert linalg.entrywise_one_norm([[1, -2], [-2, 0]]) == 5.0


def test_sym_matrix_validation():
    m = linalg.sym_matrix([[1, 2], [2 + 1e-14, 3]])
    assert np.array_equal(m, m.T)
    with pytest.raises(ValueError):
        linalg.sym_matrix([[1, 2], [2.1, 3]])
    with pytest.raises(ValueError):
        linalg.sym_matrix([[1, 2, 3]])
    with pytest.raises(ValueError):
        linalg.sym_matrix([[math.nan]])


def test_json_round_trip():
    m = np.array([[1.5, -2.0], [-2.0, 0.25]])
    assert np.array_equal(linalg.from_json(linalg.to_json(m)), m)
    with pytest.raises(ValueError):
        linalg.from_json({"n": 3, "rows": [[1.0]]})
