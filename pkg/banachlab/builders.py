"""
Named constructors for the algebras used throughout banachlab
"""

import numpy as np

from .algebra import AlgebraSpec, build_algebra
from .schemas import NormSpec


def scalar_algebra() -> AlgebraSpec:
    """The complex numbers as a one-dimensional Banach algebra"""
    return build_algebra(1, np.ones((1, 1, 1)), NormSpec.l1(), np.ones(1), "C")


def l1_group_algebra(n: int, weights=None) -> AlgebraSpec:
    """l1(Z_n) under convolution, basis delta_0 .. delta_{n-1}"""
    mult = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            mult[i, j, (i + j) % n] = 1.0
    identity = np.eye(n)[0]
    label = f"l1(Z{n})" if weights is None else f"l1(Z{n}, w)"
    return build_algebra(n, mult, NormSpec.l1(weights), identity, label)


def weighted_z2() -> AlgebraSpec:
    """l1(Z_2) with |||(a, b)||| = |a| + 2|b|"""
    return l1_group_algebra(2, weights=[1.0, 2.0])


def l1_semigroup_four() -> AlgebraSpec:
    """
    l1 algebra of the abelian semigroup {1, a, b, c} with a, b, c idempotent and ab = ac = bc = c

    Basis order is (1, a, b, c).
    """
    table = {
        (1, 1): 1, (1, 2): 3, (1, 3): 3,
        (2, 2): 2, (2, 3): 3,
        (3, 3): 3,
    }
    mult = np.zeros((4, 4, 4), dtype=complex)
    for j in range(4):
        mult[0, j, j] = 1.0
        mult[j, 0, j] = 1.0
    for (i, j), k in table.items():
        mult[i, j, k] = 1.0
        mult[j, i, k] = 1.0
    return build_algebra(4, mult, NormSpec.l1(), np.eye(4)[0], "l1_4")


def pointwise_l1(n: int = 3) -> AlgebraSpec:
    """C^n with the pointwise product and the l1 norm; its identity has norm n, so it is non-unital for n > 1"""
    mult = np.zeros((n, n, n), dtype=complex)
    for i in range(n):
        mult[i, i, i] = 1.0
    identity = np.ones(n) if n == 1 else None
    return build_algebra(n, mult, NormSpec.l1(), identity, f"pointwise l1_{n}")


def _matrix_units(shape: int, units):
    rep = np.zeros((len(units), shape, shape), dtype=complex)
    for index, (row, column) in enumerate(units):
        rep[index, row, column] = 1.0
    return rep


def _structure_from_rep(rep: np.ndarray) -> np.ndarray:
    """Structure constants of a matrix algebra spanned by the linearly independent matrices in rep"""
    dim = rep.shape[0]
    flat = rep.reshape(dim, -1).T
    products = np.einsum("iab,jbc->ijac", rep, rep).reshape(dim, dim, -1)
    solution, _, _, _ = np.linalg.lstsq(flat, products.reshape(dim * dim, -1).T, rcond=None)
    return solution.T.reshape(dim, dim, dim)


def matrix_algebra(units, shape: int = 2, domain: str = "l1", label: str = "", identity=None) -> AlgebraSpec:
    """
    Span of matrix units E_rc acting on l1, linf or l2 of dimension `shape`

    Args:
        units: (row, column) pairs, zero-based
        identity: coefficients of the identity over the units, if it lies in the span
    """
    rep = _matrix_units(shape, units)
    return build_algebra(len(units), _structure_from_rep(rep), NormSpec.opnorm(rep, domain), identity, label)


def lower_triangular_l1() -> AlgebraSpec:
    """Lower triangular 2x2 matrices as operators on l1_2, basis (E11, E21, E22)"""
    return matrix_algebra([(0, 0), (1, 0), (1, 1)], 2, "l1", "lower triangular on l1_2", [1.0, 0.0, 1.0])


def lower_left_ideal_algebra() -> AlgebraSpec:
    """span{E11, E21} on l1_2: non-unital, E11 is a right identity only"""
    return matrix_algebra([(0, 0), (1, 0)], 2, "l1", "span(E11, E21) on l1_2")


def upper_triangular_nilpotent() -> AlgebraSpec:
    """span{1, n} with n^2 = 0, realized as [[a, b], [0, a]] on l1_2"""
    rep = np.array([np.eye(2), [[0.0, 1.0], [0.0, 0.0]]], dtype=complex)
    return build_algebra(2, _structure_from_rep(rep), NormSpec.opnorm(rep, "l1"), [1.0, 0.0], "span(1, n)")


def truncated_l1_naturals(k: int = 8) -> AlgebraSpec:
    """l1(N) under convolution cut off at degree k: basis delta_0 .. delta_{k-1}, delta_i delta_j = 0 for i + j >= k"""
    mult = np.zeros((k, k, k), dtype=complex)
    for i in range(k):
        for j in range(k - i):
            mult[i, j, i + j] = 1.0
    return build_algebra(k, mult, NormSpec.l1(), np.eye(k)[0], f"l1(N_{k})")


GALLERY_ALGEBRAS = {
    "scalar": scalar_algebra,
    "l1_z2": lambda: l1_group_algebra(2),
    "l1_z3": lambda: l1_group_algebra(3),
    "weighted_z2": weighted_z2,
    "l1_4": l1_semigroup_four,
    "pointwise_l1_3": pointwise_l1,
    "lower_triangular": lower_triangular_l1,
    "upper_nilpotent": upper_triangular_nilpotent,
    "truncated_l1_n": truncated_l1_naturals,
}


def named_algebra(name: str) -> AlgebraSpec:
    try:
        return GALLERY_ALGEBRAS[name]()
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {', '.join(sorted(GALLERY_ALGEBRAS))}") from None
