"""
Dense linear-algebra kernels shared by the algebra modules
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg

from .exceptions import PowerIterationStalled, Singular

log = logging.getLogger(__name__)


def column_basis(matrix: np.ndarray, rel_tol: float) -> np.ndarray:
    """
    Orthonormal basis of the column span of a matrix

    Args:
        matrix: (n, m) complex matrix
        rel_tol: singular values below rel_tol * largest are dropped

    Returns:
        (n, r) matrix with orthonormal columns
    """
    matrix = np.atleast_2d(np.asarray(matrix, dtype=complex))
    n = matrix.shape[0]
    if matrix.size == 0:
        return np.zeros((n, 0), dtype=complex)
    u, s, _ = scipy.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((n, 0), dtype=complex)
    rank = int(np.sum(s > rel_tol * s[0]))
    return u[:, :rank]


def span_residual(basis: np.ndarray, vectors: np.ndarray) -> float:
    """Largest distance from a column of `vectors` to span(basis), relative to its length"""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=complex))
    if vectors.shape[1] == 0:
        return 0.0
    if basis.shape[1] == 0:
        projected = np.zeros_like(vectors)
    else:
        projected = basis @ (basis.conj().T @ vectors)
    lengths = np.maximum(np.linalg.norm(vectors, axis=0), 1.0)
    return float(np.max(np.linalg.norm(vectors - projected, axis=0) / lengths))


def same_span(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    """Compare two orthonormal bases as subspaces"""
    if a.shape[1] != b.shape[1]:
        return False
    return span_residual(a, b) <= tol and span_residual(b, a) <= tol


def intersect_spans(a: np.ndarray, b: np.ndarray, rel_tol: float) -> np.ndarray:
    """Orthonormal basis of span(a) ∩ span(b) for orthonormal a, b"""
    n = a.shape[0]
    if a.shape[1] == 0 or b.shape[1] == 0:
        return np.zeros((n, 0), dtype=complex)
    kernel = scipy.linalg.null_space(np.hstack([a, -b]), rcond=rel_tol)
    if kernel.shape[1] == 0:
        return np.zeros((n, 0), dtype=complex)
    return column_basis(a @ kernel[: a.shape[1]], rel_tol)


def is_rank_deficient(matrix: np.ndarray, rel_tol: float) -> bool:
    s = scipy.linalg.svdvals(matrix)
    return s.size == 0 or s[0] == 0.0 or s[-1] < rel_tol * s[0]


def lu_solve(matrix: np.ndarray, rhs: np.ndarray, rel_tol: float) -> np.ndarray:
    """
    Solve a square system by LU with partial pivoting

    Raises:
        Singular: if the matrix is numerically rank-deficient at rel_tol
    """
    if is_rank_deficient(matrix, rel_tol):
        raise Singular("matrix is numerically rank-deficient")
    lu, piv = scipy.linalg.lu_factor(matrix)
    return scipy.linalg.lu_solve((lu, piv), rhs)


def least_squares(matrix: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, float]:
    """Minimal-norm least-squares solution and its residual norm"""
    solution, _, _, _ = scipy.linalg.lstsq(matrix, rhs)
    residual = float(np.linalg.norm(matrix @ solution - rhs))
    return solution, residual


def largest_singular_value(matrix: np.ndarray, rel_tol: float, max_iter: int) -> float:
    """
    Largest singular value by power iteration on G = M^H M

    Starts from the largest column of G and stops once the eigen-residual
    ||G v - rho v|| is below rel_tol * rho.

    Raises:
        PowerIterationStalled: if the residual has not settled after max_iter steps
    """
    gram = matrix.conj().T @ matrix
    n = gram.shape[0]
    if not np.any(gram):
        return 0.0
    vector = gram[:, int(np.argmax(np.linalg.norm(gram, axis=0)))].astype(complex)
    vector /= np.linalg.norm(vector)
    for step in range(max_iter):
        image = gram @ vector
        length = np.linalg.norm(image)
        if length == 0.0:
            # start vector in the kernel; restart on a basis vector
            vector = np.zeros(n, dtype=complex)
            vector[step % n] = 1.0
            continue
        rayleigh = float(np.real(np.vdot(vector, image)))
        residual = np.linalg.norm(image - rayleigh * vector)
        if residual <= rel_tol * max(rayleigh, 1e-300):
            return float(np.sqrt(max(rayleigh, 0.0)))
        vector = image / length
    raise PowerIterationStalled(f"power iteration did not settle after {max_iter} steps")
