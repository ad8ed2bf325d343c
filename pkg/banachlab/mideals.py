"""
M-ideal ideals, quotient norms and numerical ranges, and norm-preserving lifts
"""

import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from . import linalg
from .algebra import AlgebraSpec, Element, linf_sum, minimize_norm
from .builders import scalar_algebra
from .config import Tolerances, get_tolerances, make_rng
from .exceptions import (
    AlgebraMismatch,
    AlphaNotInterior,
    BoundViolation,
    EmptyInterior,
    InvalidIdentity,
    NotMIdeal,
    NotQuotientRealPositive,
    RouteDisagreement,
    SpanMismatch,
    SupportNotIdempotent,
)
from .ideals import IdealBasis
from .numrange import DEFAULT_DIRECTIONS, flatness, in_F, min_re_abscissa, numrange_outer, outer_polygon, sample_states, support_function
from .schemas import IdealSide, LiftMode, LiftStep, NumericalRangeEstimate

log = logging.getLogger(__name__)

M_PROPERTY_SAMPLES = 500
QUOTIENT_MIN_ITERATIONS = 20000
INTERIOR_MARGIN = 1e-4
FLAT_WIDTH = 1e-6
TRIANGLE_APEX = 0.05
APEX_HALVINGS = 10


def m_property_gap(algebra: AlgebraSpec, projection: np.ndarray, samples: int = M_PROPERTY_SAMPLES, rng=None) -> Tuple[float, np.ndarray]:
    """
    Largest relative violation of ||x|| = max(||Px||, ||x - Px||) over random x

    Returns:
        (gap, witness coefficients)
    """
    generator = make_rng(rng)
    worst, witness = 0.0, np.zeros(algebra.dim, dtype=complex)
    candidates = list(np.eye(algebra.dim, dtype=complex))
    candidates += list(generator.standard_normal((samples, algebra.dim)) + 1j * generator.standard_normal((samples, algebra.dim)))
    for coeffs in candidates:
        part = projection @ coeffs
        size = algebra.norm_of(coeffs)
        gap = abs(size - max(algebra.norm_of(part), algebra.norm_of(coeffs - part))) / max(1.0, size)
        if gap > worst:
            worst, witness = gap, coeffs
    return worst, witness


class MIdealIdeal:
    """
    A two-sided ideal J = zA with a contractive M-projection P and central support z = P(1)
    """

    def __init__(
        self,
        algebra: AlgebraSpec,
        projection: np.ndarray,
        exact: bool = False,
        tolerances: Optional[Tolerances] = None,
        rng=None,
    ):
        """
        Validate a projection as the M-projection of an ideal

        Args:
            algebra: unital ambient algebra
            projection: (dim, dim) matrix acting on coefficient vectors
            exact: the projection comes from an l-infinity sum construction
            tolerances: tolerance overrides
            rng: seed or Generator for the M-property samples

        Raises:
            InvalidIdentity: the algebra has no identity
            NotMIdeal: P is not idempotent, not multiplication by z, or fails the M-property
            SupportNotIdempotent: z is not a central idempotent in F_A
        """
        tol = get_tolerances(tolerances)
        if not algebra.is_unital:
            raise InvalidIdentity("M-ideal ideals are taken in unital algebras")
        projection = np.asarray(projection, dtype=complex)
        if projection.shape != (algebra.dim, algebra.dim):
            raise NotMIdeal(f"projection has shape {projection.shape}")
        if np.max(np.abs(projection @ projection - projection), initial=0.0) > 1e-12 * max(1.0, np.abs(projection).max()):
            raise NotMIdeal("P^2 != P")

        self.algebra = algebra
        self.P = projection
        self.exact = exact
        self.tolerances = tol
        self.z = Element(projection @ algebra.identity, algebra)

        z = self.z
        if (z * z - z).norm() > tol.support_defect:
            raise SupportNotIdempotent("P(1) is not idempotent")
        if np.max(np.abs(z.left_matrix() - z.right_matrix()), initial=0.0) > tol.centrality:
            raise SupportNotIdempotent("P(1) is not central")
        size = z.norm()
        if min(abs(size), abs(size - 1.0)) > tol.support_defect or not in_F(z, tol.cone):
            raise SupportNotIdempotent(f"support has norm {size:.6g} or lies outside F_A")
        if np.max(np.abs(z.left_matrix() - projection), initial=0.0) > 1e-10:
            raise NotMIdeal("P is not multiplication by its support")

        gap, witness = m_property_gap(algebra, projection, rng=rng)
        if gap > tol.m_property:
            raise NotMIdeal(f"M-property fails by {gap:.3g} at {np.round(witness, 6).tolist()}")

        self.ideal_basis = IdealBasis([z], linalg.column_basis(projection, tol.ideal_rank), IdealSide.TWO_SIDED, algebra)
        log.debug("M-ideal of rank %d in %s (exact=%s)", self.ideal_basis.rank, algebra.label, exact)

    def __repr__(self) -> str:
        return f"MIdealIdeal(algebra={self.algebra.label!r}, rank={self.ideal_basis.rank})"

    def project(self, x: Element) -> Element:
        self._check(x)
        return Element(self.P @ x.coeffs, self.algebra)

    def complement(self, x: Element) -> Element:
        """(I - P) x"""
        return x - self.project(x)

    def contains(self, x: Element, tol: float = 1e-9) -> bool:
        return self.complement(x).norm() <= tol * max(1.0, x.norm())

    def quotient_norm(self, x: Element) -> float:
        """||Q(x)|| = ||(I - P) x|| for an M-ideal"""
        return self.complement(x).norm()

    def quotient_norm_minimized(self, x: Element, iterations: int = QUOTIENT_MIN_ITERATIONS) -> float:
        """inf over j in J of ||x - j|| by subgradient descent, independent of P"""
        self._check(x)
        _, value, _ = minimize_norm(x, self.ideal_basis.basis, iterations)
        return value

    def quotient(self, x: Element) -> "QuotientElement":
        return QuotientElement(x, self, self.quotient_norm(x))

    def _check(self, x: Element) -> None:
        if x.algebra is not self.algebra:
            raise AlgebraMismatch("element does not belong to the ideal's algebra")


@dataclass
class QuotientElement:
    """A coset x + J"""
    representative: Element
    ideal: MIdealIdeal
    qnorm: float = field(default=float("nan"))

    def same_coset(self, other: Element, tol: float = 1e-12) -> bool:
        return self.ideal.complement(self.representative - other).norm() <= tol


def central_ideal(algebra: AlgebraSpec, support: Element, tolerances: Optional[Tolerances] = None, rng=None) -> MIdealIdeal:
    """The ideal zA of a central idempotent z, with P(x) = z x"""
    if support.algebra is not algebra:
        raise AlgebraMismatch("support does not belong to the algebra")
    return MIdealIdeal(algebra, support.left_matrix(), tolerances=tolerances, rng=rng)


def _same_algebra(ideals: Sequence[MIdealIdeal]) -> AlgebraSpec:
    if not ideals:
        raise ValueError("at least one ideal is required")
    algebra = ideals[0].algebra
    if any(j.algebra is not algebra for j in ideals):
        raise AlgebraMismatch("ideals live in different algebras")
    return algebra


def mideal_meet(first: MIdealIdeal, second: MIdealIdeal) -> MIdealIdeal:
    """
    J1 ∩ J2, with support z1 z2

    Raises:
        SupportNotIdempotent, SpanMismatch
    """
    algebra = _same_algebra([first, second])
    tol = first.tolerances
    meet = central_ideal(algebra, first.z * second.z, tol)
    expected = linalg.intersect_spans(first.ideal_basis.basis, second.ideal_basis.basis, tol.ideal_rank)
    if not linalg.same_span(meet.ideal_basis.basis, expected, tol.span_rank):
        raise SpanMismatch("span of z1 z2 A differs from J1 ∩ J2")
    return meet


def mideal_join(ideals: Sequence[MIdealIdeal]) -> MIdealIdeal:
    """
    Closed sum of M-ideal ideals, with pairwise support z1 + z2 - z1 z2

    Raises:
        SupportNotIdempotent, SpanMismatch
    """
    algebra = _same_algebra(ideals)

    def join_pair(first: MIdealIdeal, second: MIdealIdeal) -> MIdealIdeal:
        tol = first.tolerances
        joined = central_ideal(algebra, first.z + second.z - first.z * second.z, tol)
        expected = linalg.column_basis(np.hstack([first.ideal_basis.basis, second.ideal_basis.basis]), tol.ideal_rank)
        if not linalg.same_span(joined.ideal_basis.basis, expected, tol.span_rank):
            raise SpanMismatch("span of the joined support differs from J1 + J2")
        return joined

    return reduce(join_pair, ideals)


def quotient_numrange(x: Element, ideal: MIdealIdeal, **grid) -> NumericalRangeEstimate:
    """
    Williams outer body of Q(x) in A/J, using ||Q(x - lam 1)||

    Raises:
        InvalidIdentity: J is the whole algebra, so A/J has no identity of norm 1
    """
    ideal._check(x)
    if ideal.quotient_norm(ideal.algebra.one()) < 0.5:
        raise InvalidIdentity("quotient by the whole algebra")
    return numrange_outer(x, norm=ideal.quotient_norm, **grid)


def _exact_slack(x: Element, ideal: MIdealIdeal, alpha: complex, directions: np.ndarray) -> float:
    """Smallest gap between the quotient support function and the support of alpha"""
    support = support_function(x, directions, ideal.quotient_norm)
    return float(np.min(support - np.real(alpha * np.exp(-1j * directions))))


def _exact_centroid(x: Element, ideal: MIdealIdeal, directions: np.ndarray) -> complex:
    """Vertex mean of the polygon cut out by the exact quotient support function"""
    vertices = outer_polygon(directions, support_function(x, directions, ideal.quotient_norm))
    return complex(np.mean(vertices[:, 0]), np.mean(vertices[:, 1]))


def _is_flat(x: Element, ideal: MIdealIdeal) -> bool:
    return flatness(x, ideal.quotient_norm)[0] < FLAT_WIDTH


def _closed_form(x: Element, ideal: MIdealIdeal, alpha: complex) -> Element:
    return x - ideal.project(x - alpha * ideal.algebra.one())


def cssw_iteration(x: Element, ideal: MIdealIdeal, alpha: complex, steps: int = 20, body: Optional[NumericalRangeEstimate] = None) -> Tuple[Element, List[LiftStep]]:
    """
    x_{n+1} = x_n - 2^-n P(x_n - alpha 1), recording whether W(x_{n+1}) lies in
    N(C, alpha, 2^-n) = {alpha + (1 + 2^-n)(gamma - alpha) : gamma in C} for C = W(Q(x))
    """
    body = quotient_numrange(x, ideal) if body is None else body
    one = ideal.algebra.one()
    units = np.exp(1j * body.directions)
    anchor = np.real(alpha * units.conj())
    current = x
    trace = []
    for n in range(steps):
        current = current - 2.0 ** (-n) * ideal.project(current - alpha * one)
        epsilon = 2.0 ** (-n)
        dilated = anchor + (1.0 + epsilon) * (body.outer - anchor)
        estimate = numrange_outer(current, grid_from=body)
        slack = float(np.min(dilated - estimate.outer))
        contained = slack >= -1e-6
        trace.append(LiftStep(n + 1, epsilon, current.norm(), contained, slack))
        log.debug("lift step %d: ||x_n|| = %.9g, contained=%s", n + 1, current.norm(), contained)
    return current, trace


def cssw_lift(
    x: Element,
    ideal: MIdealIdeal,
    alpha: complex,
    mode: LiftMode = LiftMode.CLOSED_FORM,
    steps: int = 20,
) -> Element:
    """
    A representative v of Q(x) with ||v|| = ||Q(x)|| and W(v) inside W(Q(x))

    Args:
        x: element of the unital ambient algebra
        ideal: M-ideal ideal J
        alpha: point strictly inside the quotient numerical range
        mode: closed_form v = x - P(x - alpha 1), or the iteration checked against it
        steps: iteration length for the iteration mode

    Raises:
        EmptyInterior: W(Q(x)) is a point or a segment
        AlphaNotInterior: alpha is within the interior margin of the boundary
        BoundViolation: the lift does not attain the quotient norm, or an iteration
            step leaves its dilated set
        RouteDisagreement: the iteration ends away from the closed form
    """
    mode = LiftMode(mode)
    tol = ideal.tolerances
    if _is_flat(x, ideal):
        raise EmptyInterior("quotient numerical range has empty interior; use segment_lift")
    body = quotient_numrange(x, ideal)
    slack = _exact_slack(x, ideal, complex(alpha), body.directions)
    if slack < INTERIOR_MARGIN:
        raise AlphaNotInterior(f"alpha = {complex(alpha)} has interior slack {slack:.3g}")

    lifted = _closed_form(x, ideal, complex(alpha))
    target = ideal.quotient_norm(x)
    if abs(lifted.norm() - target) > 1e-8 * max(1.0, target):
        raise BoundViolation(f"||v|| = {lifted.norm():.12g} but ||Q(x)|| = {target:.12g}")
    estimate = numrange_outer(lifted, grid_from=body)
    if np.any(estimate.outer > body.outer + 1e-6):
        raise BoundViolation("W(v) leaves the quotient numerical range")
    if mode == LiftMode.ITERATION:
        final, trace = cssw_iteration(x, ideal, complex(alpha), steps, body)
        escaped = [step.step for step in trace if not step.contained]
        if escaped:
            raise BoundViolation(f"lift iteration leaves N(C, alpha, 2^-n) at steps {escaped}")
        if (final - lifted).norm() > 1e-7:
            raise RouteDisagreement("lift iteration does not reach the closed form")
        return final
    return lifted


def _segment_ends(x: Element, ideal: MIdealIdeal) -> Tuple[complex, complex]:
    """End points of a flat quotient numerical range, read off the exact support function"""
    _, theta = flatness(x, ideal.quotient_norm)
    normal = np.exp(1j * theta)
    along = 1j * normal
    h_normal, h_opposite, h_along, h_back = support_function(
        x, [theta, theta + np.pi, theta + np.pi / 2.0, theta - np.pi / 2.0], ideal.quotient_norm
    )
    offset = (h_normal - h_opposite) / 2.0 * normal
    return complex(offset - h_back * along), complex(offset + h_along * along)


def segment_lift(x: Element, ideal: MIdealIdeal, apex: float = TRIANGLE_APEX) -> Element:
    """
    Norm-preserving lift when W(Q(x)) is a point or a segment K

    A point {mu} means Q(x) = mu Q(1) and mu 1 is returned. For a segment, x is placed in
    A (+)inf C next to an auxiliary scalar at apex height off the midpoint of K, which opens
    W into a thin triangle with K as a side; the interior lift there is projected back.
    The apex height is halved until the norm is preserved.

    Raises:
        BoundViolation: the norm is not preserved after the allowed halvings
    """
    algebra = ideal.algebra
    target = ideal.quotient_norm(x)
    if target <= 1e-12:
        return algebra.zero()
    start, end = _segment_ends(x, ideal)
    length = abs(end - start)
    if length < FLAT_WIDTH:
        mu = (start + end) / 2.0
        return mu * algebra.one()

    direction = (end - start) / length
    normal = 1j * direction
    if normal.real < 0 or (normal.real == 0 and normal.imag < 0):
        normal = -normal

    extended, _ = linf_sum(algebra, scalar_algebra(), ideal.tolerances)
    projection = scipy.linalg.block_diag(ideal.P, np.zeros((1, 1)))
    lifted_ideal = MIdealIdeal(extended, projection, exact=ideal.exact, tolerances=ideal.tolerances)
    height = apex
    for _ in range(APEX_HALVINGS + 1):
        corner = (start + end) / 2.0 + height * length * normal
        x_ext = Element(np.append(x.coeffs, corner), extended)
        alpha = (start + end + corner) / 3.0
        lifted = _closed_form(x_ext, lifted_ideal, alpha)
        result = Element(lifted.coeffs[:-1], algebra)
        if abs(result.norm() - target) <= 1e-6 * max(1.0, target):
            return result
        log.warning("segment lift: apex %.3g breaks norm preservation, halving", height)
        height /= 2.0
    raise BoundViolation("segment lift could not preserve the quotient norm")


def real_positive_lift(x: Element, ideal: MIdealIdeal) -> Element:
    """
    An accretive a with Q(a) = Q(x) and ||a|| = ||Q(x)||, for Q(x) real positive in A/J

    Raises:
        NotQuotientRealPositive: the quotient numerical range reaches Re < 0
    """
    ideal._check(x)
    if ideal.quotient_norm(x) <= 1e-12:
        return ideal.algebra.zero()
    lowest = min_re_abscissa(x, ideal.tolerances, norm=ideal.quotient_norm)
    if lowest < -1e-8:
        raise NotQuotientRealPositive(f"quotient numerical range reaches Re = {lowest:.6g}")
    if _is_flat(x, ideal):
        return segment_lift(x, ideal)
    directions = 2.0 * np.pi * np.arange(DEFAULT_DIRECTIONS) / DEFAULT_DIRECTIONS
    alpha = _exact_centroid(x, ideal, directions)
    if alpha.real <= 0.0:
        alpha = complex(INTERIOR_MARGIN, alpha.imag)
    return cssw_lift(x, ideal, alpha)


def face_check(ideal: MIdealIdeal, n_samples: int = 2000, rng=None) -> Tuple[int, float]:
    """
    Sampled states vanishing on J must vanish at its support

    Returns:
        (number of sampled states vanishing on J, largest |phi(z)| among them)
    """
    states = sample_states(ideal.algebra, n_samples, rng)
    on_ideal = np.abs(states @ ideal.ideal_basis.basis)
    vanishing = states[np.all(on_ideal <= 1e-12, axis=1)] if ideal.ideal_basis.rank else states
    worst = float(np.max(np.abs(vanishing @ ideal.z.coeffs), initial=0.0))
    return int(vanishing.shape[0]), worst
