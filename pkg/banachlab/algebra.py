"""
Finite-dimensional complex Banach algebras given by structure constants
"""

import logging
from functools import cached_property
from typing import Optional, Tuple, Union

import numpy as np
import scipy.linalg

from . import linalg
from .config import BANACHLAB_MAX_DIM, Tolerances, get_tolerances, make_rng
from .exceptions import (
    AlgebraMismatch,
    BoundViolation,
    InconsistentDimensions,
    InvalidIdentity,
    NotAssociative,
    NotIsometricRegularRep,
    NotSubmultiplicative,
    Singular,
    UnsupportedNormKind,
)
from .schemas import NormKind, NormSpec, OpDomain, _decode_complex, _encode_complex

log = logging.getLogger(__name__)

Scalar = Union[int, float, complex, np.number]

ISOMETRY_SAMPLES = 64


class AlgebraSpec:
    """A finite-dimensional complex algebra with a computable norm"""

    def __init__(
        self,
        dim: int,
        mult: np.ndarray,
        norm: NormSpec,
        identity: Optional[np.ndarray] = None,
        label: str = "",
    ):
        """
        Store an algebra without validation; use build_algebra to construct checked instances

        Args:
            dim: dimension
            mult: structure constants m[i, j, k] with e_i e_j = sum_k m[i, j, k] e_k
            norm: norm descriptor
            identity: coefficient vector of the identity, if any
            label: display name
        """
        self.dim = int(dim)
        self.mult = np.array(mult, dtype=complex)
        self.mult.setflags(write=False)
        self.norm_spec = norm
        self.identity = None if identity is None else np.array(identity, dtype=complex)
        if self.identity is not None:
            self.identity.setflags(write=False)
        self.label = label

    def __repr__(self) -> str:
        return f"AlgebraSpec(label={self.label!r}, dim={self.dim}, norm={self.norm_spec.kind.value})"

    @property
    def is_unital(self) -> bool:
        return self.identity is not None

    def element(self, coeffs) -> "Element":
        return Element(coeffs, self)

    def zero(self) -> "Element":
        return Element(np.zeros(self.dim, dtype=complex), self)

    def one(self) -> "Element":
        if self.identity is None:
            raise InvalidIdentity(f"{self.label or 'algebra'} has no identity; use unitize()")
        return Element(self.identity, self)

    def basis(self, index: int) -> "Element":
        coeffs = np.zeros(self.dim, dtype=complex)
        coeffs[index] = 1.0
        return Element(coeffs, self)

    def product(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", left, right, self.mult)

    def left_matrix(self, coeffs: np.ndarray) -> np.ndarray:
        """Matrix of y -> a y in coefficient coordinates"""
        return np.einsum("i,ijk->kj", coeffs, self.mult)

    def right_matrix(self, coeffs: np.ndarray) -> np.ndarray:
        """Matrix of y -> y a in coefficient coordinates"""
        return np.einsum("j,ijk->ki", coeffs, self.mult)

    def norm_of(self, coeffs: np.ndarray, tolerances: Optional[Tolerances] = None) -> float:
        spec = self.norm_spec
        if spec.kind == NormKind.L1:
            weights = 1.0 if spec.weights is None else spec.weights
            return float(np.sum(weights * np.abs(coeffs)))
        if spec.kind == NormKind.OPNORM:
            return operator_norm(np.einsum("i,ikl->kl", coeffs, spec.rep), spec.domain, spec.weights, tolerances)
        split = spec.left.dim
        return max(spec.left.norm_of(coeffs[:split], tolerances), spec.right.norm_of(coeffs[split:], tolerances))

    def is_commutative(self, tol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.mult - self.mult.transpose(1, 0, 2)), initial=0.0) <= tol)

    @cached_property
    def unitization(self) -> "Unitization":
        return Unitization(self)

    def to_dict(self) -> dict:
        """Convert to the JSON algebra-file layout with sparse structure constants"""
        entries = []
        for i in range(self.dim):
            for j in range(self.dim):
                if np.any(self.mult[i, j]):
                    entries.append([i, j, _encode_complex(self.mult[i, j])])
        return {
            "dim": self.dim,
            "label": self.label,
            "mult": entries,
            "norm": self.norm_spec.to_dict(),
            "identity": None if self.identity is None else _encode_complex(self.identity),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AlgebraSpec":
        """Build (and verify) an algebra from its JSON layout"""
        dim = int(data["dim"])
        mult = np.zeros((dim, dim, dim), dtype=complex)
        for entry in data.get("mult", []):
            i, j, values = entry
            row = _decode_complex(values)
            if row.shape != (dim,):
                raise InconsistentDimensions(f"mult entry ({i}, {j}) has {row.shape} values, expected {dim}")
            mult[int(i), int(j)] = row
        identity = data.get("identity")
        return build_algebra(
            dim,
            mult,
            NormSpec.from_dict(data.get("norm", {"type": "l1"})),
            identity_hint=None if identity is None else _decode_complex(identity),
            label=data.get("label", ""),
        )


class Element:
    """A coefficient vector bound to an algebra"""

    __slots__ = ("coeffs", "algebra")

    def __init__(self, coeffs, algebra: AlgebraSpec):
        coeffs = np.array(coeffs, dtype=complex).reshape(-1)
        if coeffs.shape[0] != algebra.dim:
            raise InconsistentDimensions(f"expected {algebra.dim} coefficients, got {coeffs.shape[0]}")
        coeffs.setflags(write=False)
        self.coeffs = coeffs
        self.algebra = algebra

    def __repr__(self) -> str:
        return f"Element({np.round(self.coeffs, 12).tolist()}, {self.algebra.label!r})"

    def _check(self, other: "Element") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(f"{self.algebra.label!r} vs {other.algebra.label!r}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.coeffs + other.coeffs, self.algebra)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(self.coeffs - other.coeffs, self.algebra)

    def __neg__(self) -> "Element":
        return Element(-self.coeffs, self.algebra)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return Element(self.coeffs * complex(other), self.algebra)

    def __rmul__(self, scalar: Scalar) -> "Element":
        return Element(self.coeffs * complex(scalar), self.algebra)

    def __truediv__(self, scalar: Scalar) -> "Element":
        return Element(self.coeffs / complex(scalar), self.algebra)

    def __pow__(self, n: int) -> "Element":
        if n < 1:
            raise ValueError("only positive integer powers")
        result = self
        for _ in range(n - 1):
            result = multiply(result, self)
        return result

    def norm(self, tolerances: Optional[Tolerances] = None) -> float:
        return self.algebra.norm_of(self.coeffs, tolerances)

    def left_matrix(self) -> np.ndarray:
        return self.algebra.left_matrix(self.coeffs)

    def right_matrix(self) -> np.ndarray:
        return self.algebra.right_matrix(self.coeffs)

    def distance(self, other: "Element") -> float:
        return (self - other).norm()

    def allclose(self, other: "Element", tol: float = 1e-9) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= tol)

    def to_dict(self) -> dict:
        return {"coeffs": _encode_complex(self.coeffs), "algebra": self.algebra.label}


def operator_norm(
    matrix: np.ndarray,
    domain: OpDomain,
    weights: Optional[np.ndarray] = None,
    tolerances: Optional[Tolerances] = None,
) -> float:
    """
    Norm of a matrix acting on a (weighted) coordinate space

    Args:
        matrix: (d, d) complex matrix
        domain: l1 (max weighted column sum), linf (max weighted row sum) or l2 (largest singular value)
        weights: positive coordinate weights for l1 / linf
        tolerances: l2 power-iteration settings
    """
    tol = get_tolerances(tolerances)
    absolute = np.abs(matrix)
    if domain == OpDomain.L1:
        if weights is None:
            return float(np.max(absolute.sum(axis=0)))
        return float(np.max((weights @ absolute) / weights))
    if domain == OpDomain.LINF:
        if weights is None:
            return float(np.max(absolute.sum(axis=1)))
        return float(np.max(weights * (absolute @ (1.0 / weights))))
    return linalg.largest_singular_value(matrix, tol.power_iteration, tol.power_iteration_cap)


def _check_shapes(dim: int, mult: np.ndarray, norm: NormSpec) -> None:
    if dim < 1 or dim > BANACHLAB_MAX_DIM:
        raise InconsistentDimensions(f"dimension {dim} outside 1..{BANACHLAB_MAX_DIM}")
    if mult.shape != (dim, dim, dim):
        raise InconsistentDimensions(f"structure tensor has shape {mult.shape}, expected {(dim, dim, dim)}")
    if norm.kind == NormKind.L1 and norm.weights is not None and norm.weights.shape != (dim,):
        raise InconsistentDimensions("l1 weights must have one entry per basis vector")
    if norm.kind == NormKind.OPNORM:
        if norm.rep is None or norm.rep.ndim != 3 or norm.rep.shape[0] != dim or norm.rep.shape[1] != norm.rep.shape[2]:
            raise InconsistentDimensions("opnorm rep must have shape (dim, d, d)")
        if norm.weights is not None and norm.weights.shape != (norm.rep.shape[1],):
            raise InconsistentDimensions("opnorm weights must have one entry per coordinate")
    if norm.kind == NormKind.LINF_SUM and norm.left.dim + norm.right.dim != dim:
        raise InconsistentDimensions("linf_sum parts do not add up to the algebra dimension")


def _discover_identity(mult: np.ndarray, tol: float) -> Optional[np.ndarray]:
    dim = mult.shape[0]
    rhs = np.eye(dim, dtype=complex).reshape(-1)
    system = np.vstack([mult.transpose(1, 2, 0).reshape(dim * dim, dim), mult.transpose(0, 2, 1).reshape(dim * dim, dim)])
    solution, residual = linalg.least_squares(system, np.concatenate([rhs, rhs]))
    return solution if residual <= tol else None


def build_algebra(
    dim: int,
    mult,
    norm: NormSpec,
    identity_hint=None,
    label: str = "",
    tolerances: Optional[Tolerances] = None,
    rng=None,
) -> AlgebraSpec:
    """
    Construct an algebra and verify the Banach algebra axioms

    Args:
        dim: dimension
        mult: structure constants m[i][j][k]
        norm: norm descriptor
        identity_hint: identity vector; discovered by a linear solve when absent
        label: display name
        tolerances: tolerance overrides
        rng: seed or Generator for the sampled submultiplicativity check

    Returns:
        Verified AlgebraSpec

    Raises:
        InconsistentDimensions, NotAssociative, NotSubmultiplicative, InvalidIdentity
    """
    tol = get_tolerances(tolerances)
    mult = np.asarray(mult, dtype=complex)
    _check_shapes(dim, mult, norm)

    left_first = np.einsum("ijl,lkm->ijkm", mult, mult)
    right_first = np.einsum("jkl,ilm->ijkm", mult, mult)
    defect = np.abs(left_first - right_first)
    if defect.max(initial=0.0) > tol.associativity * max(1.0, np.abs(mult).max(initial=0.0) ** 2):
        witness = tuple(int(v) for v in np.unravel_index(np.argmax(defect), defect.shape)[:3])
        raise NotAssociative(f"(e_i e_j) e_k != e_i (e_j e_k) for {witness}", witness)

    if norm.kind == NormKind.OPNORM:
        products = np.einsum("iab,jbc->ijac", norm.rep, norm.rep)
        expected = np.einsum("ijk,kac->ijac", mult, norm.rep)
        if np.abs(products - expected).max(initial=0.0) > tol.homomorphism * max(1.0, np.abs(norm.rep).max() ** 2):
            raise InconsistentDimensions("opnorm representation is not a homomorphism")

    algebra = AlgebraSpec(dim, mult, norm, None, label)

    basis_norms = np.array([algebra.norm_of(np.eye(dim)[i], tol) for i in range(dim)])
    for i in range(dim):
        for j in range(dim):
            value = algebra.norm_of(mult[i, j], tol)
            bound = basis_norms[i] * basis_norms[j]
            if value > bound + tol.submultiplicative * max(1.0, bound):
                raise NotSubmultiplicative(f"||e_{i} e_{j}|| = {value:.6g} > {bound:.6g}", (i, j))

    generator = make_rng(rng)
    for _ in range(200):
        x, y = (generator.standard_normal((2, dim)) + 1j * generator.standard_normal((2, dim)))
        value = algebra.norm_of(algebra.product(x, y), tol)
        bound = algebra.norm_of(x, tol) * algebra.norm_of(y, tol)
        if value > bound + tol.submultiplicative_sampled * max(1.0, bound):
            raise NotSubmultiplicative(f"sampled pair violates ||xy|| <= ||x|| ||y||: {value:.6g} > {bound:.6g}", (x, y))

    if identity_hint is not None:
        identity = np.asarray(identity_hint, dtype=complex)
        if identity.shape != (dim,):
            raise InconsistentDimensions("identity vector has the wrong length")
        acts = max(
            np.abs(algebra.left_matrix(identity) - np.eye(dim)).max(),
            np.abs(algebra.right_matrix(identity) - np.eye(dim)).max(),
        )
        if acts > tol.inverse_check:
            raise InvalidIdentity(f"supplied identity does not act as an identity (defect {acts:.3g})")
        if abs(algebra.norm_of(identity, tol) - 1.0) > tol.identity_norm:
            raise InvalidIdentity(f"identity has norm {algebra.norm_of(identity, tol):.12g}, expected 1")
    else:
        identity = _discover_identity(mult, tol.inverse_check)
        if identity is not None and abs(algebra.norm_of(identity, tol) - 1.0) > tol.identity_norm:
            log.warning(
                "%s: identity found with norm %.6g != 1; treating the algebra as non-unital",
                label or "algebra",
                algebra.norm_of(identity, tol),
            )
            identity = None

    log.info("built algebra %s (dim %d, %s, unital=%s)", label, dim, norm.kind.value, identity is not None)
    return AlgebraSpec(dim, mult, norm, identity, label)


class Unitization:
    """
    The multiplier unitization A^1 of an algebra

    Attributes:
        isometric: whether a -> a + 0 preserves norms on random samples, not only on
            the basis; pointwise l1 embeds contractively
    """

    def __init__(self, base: AlgebraSpec, tolerances: Optional[Tolerances] = None):
        """
        Adjoin an identity normed by the left action on Ball(A)

        Args:
            base: algebra to unitize; a unital base is returned unchanged

        Raises:
            NotIsometricRegularRep: if a -> L_a is not isometric on the base (l1 kinds)
            UnsupportedNormKind: for linf_sum bases without an identity
        """
        tol = get_tolerances(tolerances)
        self.base = base
        self.trivial = base.is_unital
        # OpNorm bases keep their own representation, so only l1 bases can lose isometry
        self.isometric = True
        if self.trivial:
            self.algebra = base
            return

        n = base.dim
        spec = base.norm_spec
        mult = np.zeros((n + 1, n + 1, n + 1), dtype=complex)
        mult[:n, :n, :n] = base.mult
        for j in range(n + 1):
            mult[n, j, j] = 1.0
            mult[j, n, j] = 1.0

        if spec.kind == NormKind.L1:
            weights = np.ones(n) if spec.weights is None else spec.weights
            rep = np.zeros((n + 1, n, n), dtype=complex)
            for i in range(n):
                rep[i] = base.left_matrix(np.eye(n)[i])
            rep[n] = np.eye(n)
            self._check_isometric(rep[:n], weights, tol)
            self.isometric = self._sampled_isometry(rep[:n], weights)
            if not self.isometric:
                log.warning("%s embeds contractively, not isometrically, in its unitization", base.label)
            norm = NormSpec.opnorm(rep, OpDomain.L1, weights)
        elif spec.kind == NormKind.OPNORM:
            d = spec.rep.shape[1]
            rep = np.concatenate([spec.rep, np.eye(d, dtype=complex)[None]], axis=0)
            norm = NormSpec.opnorm(rep, spec.domain, spec.weights)
        else:
            raise UnsupportedNormKind(f"no exact multiplier norm for {spec.kind.value}")

        identity = np.zeros(n + 1, dtype=complex)
        identity[n] = 1.0
        self.algebra = build_algebra(n + 1, mult, norm, identity, f"{base.label}^1", tolerances)

    def _check_isometric(self, rep: np.ndarray, weights: np.ndarray, tol: Tolerances) -> None:
        # basis vectors only: pointwise l1 has ||L_a|| = max |a_j| off the basis
        for coeffs in np.eye(self.base.dim):
            action = operator_norm(np.einsum("i,ikl->kl", coeffs, rep), OpDomain.L1, weights)
            own = self.base.norm_of(coeffs)
            if abs(action - own) > 1e-10 * max(1.0, own):
                raise NotIsometricRegularRep(
                    f"{self.base.label}: ||L_a|| = {action:.6g} but ||a|| = {own:.6g}"
                )

    def _sampled_isometry(self, rep: np.ndarray, weights: np.ndarray, samples: int = ISOMETRY_SAMPLES) -> bool:
        """Whether ||L_a|| = ||a|| also holds off the basis, on seeded random a"""
        rng = make_rng()
        for _ in range(samples):
            coeffs = rng.standard_normal(self.base.dim) + 1j * rng.standard_normal(self.base.dim)
            action = operator_norm(np.einsum("i,ikl->kl", coeffs, rep), OpDomain.L1, weights)
            own = self.base.norm_of(coeffs)
            if abs(action - own) > 1e-10 * max(1.0, own):
                return False
        return True

    def embed(self, a: "Element") -> "Element":
        if a.algebra is self.algebra:
            return a
        if a.algebra is not self.base:
            raise AlgebraMismatch("element does not belong to the base algebra")
        if self.trivial:
            return a
        return Element(np.append(a.coeffs, 0.0), self.algebra)

    def one(self) -> "Element":
        return self.algebra.one()

    def lift(self, a: "Element", lam: Scalar) -> "Element":
        """a + lam 1 in A^1"""
        return self.embed(a) + complex(lam) * self.one()

    def scalar_part(self, x: "Element") -> complex:
        """The trivial character a + lam 1 -> lam"""
        if self.trivial:
            raise InvalidIdentity("unital algebra has no trivial character")
        return complex(x.coeffs[-1])

    def base_part(self, x: "Element") -> "Element":
        if self.trivial:
            return x
        return Element(x.coeffs[:-1], self.base)


def unitize(algebra: AlgebraSpec) -> Unitization:
    return algebra.unitization


def to_unital(a: "Element") -> "Element":
    """The element viewed in its algebra if unital, else in the multiplier unitization"""
    return a if a.algebra.is_unital else a.algebra.unitization.embed(a)


def from_unital(result: "Element", original: "Element") -> "Element":
    """Bring a result computed in the unitization back to the algebra of `original` when it has no scalar part"""
    if original.algebra is result.algebra:
        return result
    unitization = original.algebra.unitization
    scalar = unitization.scalar_part(result)
    if abs(scalar) > 1e-9 * max(1.0, result.norm()):
        log.debug("result has scalar part %.3g; returned in the unitization", abs(scalar))
        return result
    return unitization.base_part(result)


def multiply(a: "Element", b: "Element") -> "Element":
    a._check(b)
    return Element(a.algebra.product(a.coeffs, b.coeffs), a.algebra)


def norm(a: "Element", tolerances: Optional[Tolerances] = None) -> float:
    return a.norm(tolerances)


def invert(a: "Element", tolerances: Optional[Tolerances] = None) -> "Element":
    """
    Inverse in a unital algebra by LU on the left-regular matrix

    Raises:
        InvalidIdentity: ambient algebra has no identity
        Singular: left multiplication is numerically rank-deficient, or the check a a^-1 = 1 fails
    """
    tol = get_tolerances(tolerances)
    algebra = a.algebra
    one = algebra.one()
    coeffs = linalg.lu_solve(a.left_matrix(), one.coeffs, tol.singular_rank)
    inverse = Element(coeffs, algebra)
    scale = max(1.0, a.norm(tol) * inverse.norm(tol))
    for product in (multiply(a, inverse), multiply(inverse, a)):
        if np.max(np.abs(product.coeffs - one.coeffs)) > tol.inverse_check * scale:
            raise Singular("inverse check failed")
    return inverse


def resolvent(a: "Element", lam: Scalar, accretive: bool = False, tolerances: Optional[Tolerances] = None) -> "Element":
    """
    (lam 1 + a)^-1 in the unitization

    Args:
        a: element
        lam: shift
        accretive: caller has verified a is accretive; for real lam > 0 the bound ||(t + a)^-1|| <= 1/t is then enforced

    Raises:
        Singular, BoundViolation
    """
    x = to_unital(a)
    result = invert(complex(lam) * x.algebra.one() + x, tolerances)
    lam = complex(lam)
    if accretive and lam.imag == 0.0 and lam.real > 0.0:
        bound = 1.0 / lam.real + 1e-9
        if result.norm(tolerances) > bound:
            raise BoundViolation(f"||(t + a)^-1|| = {result.norm():.12g} exceeds 1/t = {1.0 / lam.real:.12g}")
    return result


def exp_scaled(a: "Element", t: float) -> "Element":
    """exp(-t a), computed with scipy's scaling-and-squaring on the left-regular matrix"""
    x = to_unital(a)
    return Element(scipy.linalg.expm(-t * x.left_matrix()) @ x.algebra.identity, x.algebra)


def spectrum(a: "Element") -> np.ndarray:
    """Eigenvalues of left multiplication in the unitization"""
    return scipy.linalg.eigvals(to_unital(a).left_matrix())


def quasiproduct(a: "Element", b: "Element") -> "Element":
    """a + b - ab"""
    return a + b - multiply(a, b)


def random_element(algebra: AlgebraSpec, rng=None, scale: Optional[float] = None) -> "Element":
    """Complex Gaussian coefficients, rescaled to norm `scale` when given"""
    generator = make_rng(rng)
    coeffs = generator.standard_normal(algebra.dim) + 1j * generator.standard_normal(algebra.dim)
    element = Element(coeffs, algebra)
    if scale is not None:
        size = element.norm()
        element = element * (scale / size) if size > 0 else element
    return element


def linf_sum(left: AlgebraSpec, right: AlgebraSpec, tolerances: Optional[Tolerances] = None) -> Tuple[AlgebraSpec, "MIdealIdeal"]:
    """
    The l-infinity direct sum B (+) C with its coordinate ideal B (+) 0

    Returns:
        (algebra, ideal) where the ideal carries the M-projection P(b, c) = (b, 0)
    """
    from .mideals import MIdealIdeal

    if not (left.is_unital and right.is_unital):
        raise InvalidIdentity("linf_sum needs unital summands")
    nl, nr = left.dim, right.dim
    mult = np.zeros((nl + nr,) * 3, dtype=complex)
    mult[:nl, :nl, :nl] = left.mult
    mult[nl:, nl:, nl:] = right.mult
    algebra = build_algebra(
        nl + nr,
        mult,
        NormSpec.linf_sum(left, right),
        np.concatenate([left.identity, right.identity]),
        f"{left.label}+{right.label}",
        tolerances,
    )
    projection = np.diag(np.concatenate([np.ones(nl), np.zeros(nr)])).astype(complex)
    return algebra, MIdealIdeal(algebra, projection, exact=True, tolerances=tolerances)


def _sign(values: np.ndarray) -> np.ndarray:
    magnitude = np.abs(values)
    return np.where(magnitude > 0.0, values / np.where(magnitude > 0.0, magnitude, 1.0), 0.0)


def norm_subgradient(a: "Element") -> np.ndarray:
    """
    A subgradient g of the norm at a: ||a + h|| >= ||a|| + Re(<g, h>) for all h

    Returns:
        complex coefficient vector, paired with h by Re(sum(conj(g) * h))
    """
    algebra = a.algebra
    spec = algebra.norm_spec
    coeffs = a.coeffs
    if spec.kind == NormKind.L1:
        weights = np.ones(algebra.dim) if spec.weights is None else spec.weights
        return weights * _sign(coeffs)
    if spec.kind == NormKind.LINF_SUM:
        nl = spec.left.dim
        parts = (Element(coeffs[:nl], spec.left), Element(coeffs[nl:], spec.right))
        gradient = np.zeros(algebra.dim, dtype=complex)
        if parts[0].norm() >= parts[1].norm():
            gradient[:nl] = norm_subgradient(parts[0])
        else:
            gradient[nl:] = norm_subgradient(parts[1])
        return gradient

    rep = spec.rep
    matrix = np.einsum("i,ikl->kl", coeffs, rep)
    d = matrix.shape[0]
    weights = np.ones(d) if spec.weights is None else spec.weights
    if spec.domain == OpDomain.L1:
        column = int(np.argmax((weights @ np.abs(matrix)) / weights))
        return np.einsum("k,ik->i", weights * _sign(matrix[:, column]), rep[:, :, column].conj()) / weights[column]
    if spec.domain == OpDomain.LINF:
        row = int(np.argmax(weights * (np.abs(matrix) @ (1.0 / weights))))
        return weights[row] * np.einsum("j,ij->i", _sign(matrix[row]) / weights, rep[:, row, :].conj())
    u, _, vh = scipy.linalg.svd(matrix)
    return np.einsum("k,ikl,l->i", u[:, 0].conj(), rep, vh[0].conj()).conj()


def minimize_norm(
    start: "Element",
    directions: np.ndarray,
    iterations: int,
    scale: Optional[float] = None,
) -> Tuple["Element", float, int]:
    """
    Minimize ||start + directions @ d|| over complex d by subgradient descent with step scale / sqrt(k)

    Returns:
        (best element, its norm, iterations used)
    """
    algebra = start.algebra
    best = start
    best_norm = start.norm()
    if directions.shape[1] == 0:
        return best, best_norm, 0
    scale = 0.5 * max(best_norm, 1e-3) if scale is None else scale
    d = np.zeros(directions.shape[1], dtype=complex)
    for k in range(1, iterations + 1):
        candidate = Element(start.coeffs + directions @ d, algebra)
        value = candidate.norm()
        if value < best_norm:
            best, best_norm = candidate, value
        gradient = directions.conj().T @ norm_subgradient(candidate)
        length = np.linalg.norm(gradient)
        if length == 0.0:
            return best, best_norm, k
        d = d - (scale / np.sqrt(k)) * gradient / length
    return best, best_norm, iterations
