"""
Principal ideals, support idempotents, pseudo-inverses and Cohen factorization
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from . import linalg
from .algebra import AlgebraSpec, Element, from_unital, invert, minimize_norm, spectrum, to_unital
from .config import Tolerances, get_tolerances
from .exceptions import (
    BanachLabError,
    NonConvergent,
    NotAccretive,
    NotCommutative,
    NotInF,
    NotPseudoInvertible,
    PoolExhausted,
    RouteDisagreement,
    SpanMismatch,
    SupportNotIdempotent,
    TolNotReached,
)
from .numrange import in_F, is_accretive
from .roots import generated_subalgebra_basis, power
from .schemas import CohenStep, CohenTrace, IdealSide, MinNormIdentity, SupportIdempotent, SupportRoute, WsReport

log = logging.getLogger(__name__)

LIMIT_ROUTE_CAP = 64
COHEN_STEP_CAP = 60
MIN_NORM_ITERATIONS = 50000


@dataclass
class IdealBasis:
    """
    A one-sided or two-sided ideal as a subspace of coefficient space

    Attributes:
        generators: elements the ideal was generated from
        basis: (dim, r) matrix with orthonormal columns spanning the ideal
        side: right, left or two-sided
        algebra: ambient algebra
    """
    generators: List[Element]
    basis: np.ndarray
    side: IdealSide
    algebra: AlgebraSpec

    @property
    def rank(self) -> int:
        return int(self.basis.shape[1])

    def elements(self) -> List[Element]:
        return [Element(self.basis[:, j], self.algebra) for j in range(self.rank)]

    def contains(self, a: Element, tol: float = 1e-9) -> bool:
        return linalg.span_residual(self.basis, a.coeffs[:, None]) <= tol

    def closure_defect(self) -> float:
        """How far the span is from being closed under multiplication by basis elements on its side(s)"""
        images = []
        for j in range(self.rank):
            column = self.basis[:, j]
            for i in range(self.algebra.dim):
                e = np.eye(self.algebra.dim)[i]
                if self.side in (IdealSide.RIGHT, IdealSide.TWO_SIDED):
                    images.append(self.algebra.product(column, e))
                if self.side in (IdealSide.LEFT, IdealSide.TWO_SIDED):
                    images.append(self.algebra.product(e, column))
        if not images:
            return 0.0
        return linalg.span_residual(self.basis, np.column_stack(images))

    def same_span(self, other: "IdealBasis", tol: float = 1e-9) -> bool:
        return linalg.same_span(self.basis, other.basis, tol)


def ideal_from_generators(
    generators: Sequence[Element],
    side: IdealSide = IdealSide.RIGHT,
    tolerances: Optional[Tolerances] = None,
) -> IdealBasis:
    """
    Smallest ideal containing the generators: span of g, gA (right), Ag (left), AgA (two-sided)

    The generators themselves are included so the result is correct without an identity.
    """
    tol = get_tolerances(tolerances)
    side = IdealSide(side)
    if not generators:
        raise ValueError("at least one generator is required")
    algebra = generators[0].algebra
    columns = []
    for g in generators:
        g._check(generators[0])
        columns.append(g.coeffs[:, None])
        if side in (IdealSide.RIGHT, IdealSide.TWO_SIDED):
            columns.append(g.left_matrix())
        if side in (IdealSide.LEFT, IdealSide.TWO_SIDED):
            columns.append(g.right_matrix())
        if side == IdealSide.TWO_SIDED:
            multiples = g.right_matrix()
            columns.extend(algebra.right_matrix(np.eye(algebra.dim)[j]) @ multiples for j in range(algebra.dim))
    basis = linalg.column_basis(np.hstack(columns), tol.ideal_rank)
    return IdealBasis(list(generators), basis, side, algebra)


def principal_right_ideal(x: Element, tolerances: Optional[Tolerances] = None) -> IdealBasis:
    """Basis of xA from the columns of the left-multiplication matrix of x"""
    return ideal_from_generators([x], IdealSide.RIGHT, tolerances)


def principal_left_ideal(x: Element, tolerances: Optional[Tolerances] = None) -> IdealBasis:
    return ideal_from_generators([x], IdealSide.LEFT, tolerances)


def _is_central(a: Element, tol: float) -> bool:
    left = a.left_matrix()
    right = a.right_matrix()
    return float(np.max(np.abs(left - right), initial=0.0)) <= tol * max(1.0, a.norm())


def _support_algebraic(u: Element, tol: Tolerances) -> Element:
    """s(x) = r y where r = x^(1/2) and x y = r; any solution y gives the same s"""
    root = power(u, 0.5).value
    y, residual = linalg.least_squares(u.left_matrix(), root.coeffs)
    if residual > 1e-8 * max(1.0, root.norm()):
        raise SupportNotIdempotent(f"x y = x^(1/2) is inconsistent (residual {residual:.3g})")
    return root * Element(y, u.algebra)


def _support_limit(u: Element, tol: Tolerances) -> Element:
    """Limit of x^(1/2^k), taken by repeated square roots"""
    current = u
    for k in range(1, LIMIT_ROUTE_CAP + 1):
        following = power(current, 0.5).value
        step = (following - current).norm()
        current = following
        if step < tol.limit_step:
            log.debug("limit route settled after %d square roots", k)
            return current
    raise NonConvergent(f"x^(1/2^k) still moving after {LIMIT_ROUTE_CAP} square roots")


def support_idempotent(
    x: Element,
    route: SupportRoute = SupportRoute.ALGEBRAIC,
    crosscheck: bool = True,
    tolerances: Optional[Tolerances] = None,
) -> SupportIdempotent:
    """
    The support idempotent s(x) of an accretive element

    Args:
        x: accretive element
        route: algebraic (primary) or limit
        crosscheck: also run the other route and require agreement

    Returns:
        SupportIdempotent in the algebra of x

    Raises:
        NotAccretive: x is not accretive
        RouteDisagreement: the two routes differ by more than the tolerance
        SupportNotIdempotent: s fails idempotency, the absorption identities or ||1 - s|| <= 1
        SpanMismatch: span(sA) differs from span(xA)
    """
    tol = get_tolerances(tolerances)
    route = SupportRoute(route)
    if not is_accretive(x, tol.cone):
        raise NotAccretive("support idempotent needs an accretive element")
    u = to_unital(x)
    one = u.algebra.one()
    compute = {SupportRoute.ALGEBRAIC: _support_algebraic, SupportRoute.LIMIT: _support_limit}
    s = compute[route](u, tol)
    if crosscheck:
        other = SupportRoute.LIMIT if route == SupportRoute.ALGEBRAIC else SupportRoute.ALGEBRAIC
        gap = (compute[other](u, tol) - s).norm()
        if gap > tol.route_agreement:
            raise RouteDisagreement(f"algebraic and limit supports differ by {gap:.3g}")

    defects = (
        (s * s - s).norm(),
        (s * u - u).norm(),
        (u * s - u).norm(),
        (one - s).norm() - 1.0,
    )
    if max(defects) > tol.support_defect:
        raise SupportNotIdempotent(f"support defects {tuple(round(d, 12) for d in defects)}")

    ambient = from_unital(s, x)
    if ambient.algebra is x.algebra:
        s_ideal = principal_right_ideal(ambient, tol)
        x_ideal = principal_right_ideal(x, tol)
        if not s_ideal.same_span(x_ideal, tol.span_rank):
            raise SpanMismatch("span(s(x) A) differs from span(xA)")
    central = _is_central(ambient, tol.centrality)
    log.debug("support idempotent via %s, defects %s, central=%s", route.value, defects, central)
    return SupportIdempotent(ambient, route, defects, central)


def pseudo_invert(x: Element, tolerances: Optional[Tolerances] = None) -> Element:
    """
    Minimal-norm y with x y x = x, by least squares on the map y -> x y x

    Raises:
        NotPseudoInvertible: the system is inconsistent
    """
    tol = get_tolerances(tolerances)
    operator = x.left_matrix() @ x.right_matrix()
    y, residual = linalg.least_squares(operator, x.coeffs)
    if residual > tol.cohen_residual * max(1.0, x.norm()):
        raise NotPseudoInvertible(f"x y x = x has no solution (residual {residual:.3g})")
    return Element(y, x.algebra)


def _invertible_in_generated(x: Element, tol: Tolerances) -> bool:
    """Find the identity f of ba(x) and an inverse b of x inside span{x, x^2, ...}"""
    basis = generated_subalgebra_basis(x, tol.span_rank)
    if basis.shape[1] == 0:
        return True
    system = np.vstack([x.right_matrix() @ basis, x.left_matrix() @ basis])
    c, residual = linalg.least_squares(system, np.concatenate([x.coeffs, x.coeffs]))
    if residual > 1e-8 * max(1.0, x.norm()):
        return False
    identity = basis @ c
    d, residual = linalg.least_squares(x.left_matrix() @ basis, identity)
    return residual <= 1e-8 * max(1.0, np.linalg.norm(identity))


def ws_equivalences_report(x: Element, tolerances: Optional[Tolerances] = None) -> WsReport:
    """
    Check independently that s(x) exists, x is pseudo-invertible, x is invertible in ba(x)
    and 0 is isolated in the spectrum of L_x restricted to xA

    Raises:
        NotAccretive
    """
    tol = get_tolerances(tolerances)
    if not is_accretive(x, tol.cone):
        raise NotAccretive("ws report needs an accretive element")
    checks = {}
    for name, check in (("support", support_idempotent), ("pseudo", pseudo_invert)):
        try:
            check(x, tolerances=tol)
            checks[name] = True
        except BanachLabError as error:
            log.warning("%s check failed: %s", name, error)
            checks[name] = False

    ideal = principal_right_ideal(x, tol)
    if ideal.rank == 0:
        gap = float("inf")
    else:
        restricted = ideal.basis.conj().T @ x.left_matrix() @ ideal.basis
        gap = float(np.min(np.abs(scipy.linalg.eigvals(restricted))))
    return WsReport(
        support_in_algebra=checks["support"],
        pseudo_invertible=checks["pseudo"],
        invertible_in_ba=_invertible_in_generated(x, tol),
        zero_isolated=gap >= 1e-6,
        spectral_gap=gap,
        spectrum=spectrum(x),
    )


def _check_pool(pool: Sequence[Element], tol: Tolerances) -> List[Element]:
    if not pool:
        raise PoolExhausted("empty pool")
    lifted = [to_unital(f) for f in pool]
    for index, f in enumerate(lifted):
        if not in_F(f, tol.cone):
            raise NotInF(f"pool element {index} has ||1 - f|| = {(f.algebra.one() - f).norm():.6g} > 1")
    return lifted


def _cohen(
    targets: Sequence[Element],
    pool: Sequence[Element],
    eps: float,
    two_sided: bool,
    tolerances: Optional[Tolerances],
) -> Tuple[Element, List[Element], CohenTrace]:
    tol = get_tolerances(tolerances)
    if not targets:
        raise ValueError("at least one target is required")
    lifted = _check_pool(pool, tol)
    xs = [to_unital(x) for x in targets]
    algebra = lifted[0].algebra
    one = algebra.one()
    size = max(x.norm() for x in xs)
    planned = max(1, math.ceil(math.log2(max(size, eps) / eps))) + 4

    trace = CohenTrace()
    z = one
    z_inverse = one
    for n in range(COHEN_STEP_CAP):
        bound = (2.0 ** (-2 * n) if two_sided else 2.0 ** (-n)) * eps
        defects = []
        for f in lifted:
            gap = one - f
            if two_sided:
                values = [(gap * z_inverse * x).norm() + (x * z_inverse * gap).norm() for x in xs]
            else:
                values = [(gap * z_inverse * x).norm() for x in xs]
            defects.append(max(values))
        chosen = int(np.argmin(defects))
        if defects[chosen] > bound + tol.cohen_residual:
            raise PoolExhausted(
                f"no pool element meets the step bound {bound:.3g} at step {n} (best {defects[chosen]:.3g})",
                step=n,
                defect=defects[chosen],
            )
        f = lifted[chosen]
        weight = 2.0 ** (-(n + 1))
        z = z - weight * (one - f)
        if (one - z).norm() > 1.0 - weight + 1e-10:
            raise NotInF(f"||1 - z_{n + 1}|| exceeds 1 - 2^-{n + 1}")
        z_inverse = invert(z, tol)
        trace.steps.append(CohenStep(n + 1, chosen, float(defects[chosen]), z_inverse.norm()))
        trace.partial_products.append(z)
        log.debug("cohen step %d: pool %d, defect %.3g, ||z^-1|| %.6g", n + 1, chosen, defects[chosen], z_inverse.norm())

        # the infinite tail repeats the last choice, so the limit is z_n - 2^-n (1 - f)
        limit = z - weight * (one - f)
        if two_sided:
            factors = [z_inverse * x * z_inverse for x in xs]
            residuals = [(limit * w * limit - x).norm() for w, x in zip(factors, xs)]
        else:
            factors = [z_inverse * x for x in xs]
            residuals = [(limit * w - x).norm() for w, x in zip(factors, xs)]
        if n + 1 >= planned and max(residuals) <= tol.cohen_residual or max(residuals) == 0.0:
            break
    else:
        raise TolNotReached(f"factorization residual {max(residuals):.3g} after {COHEN_STEP_CAP} steps")

    trace.z = from_unital(limit, pool[0])
    trace.factors = [from_unital(w, x) for w, x in zip(factors, targets)]
    trace.residuals = [float(r) for r in residuals]
    return trace.z, trace.factors, trace


def cohen_factorize(
    targets: Sequence[Element],
    cai_pool: Sequence[Element],
    eps: float = 0.1,
    tolerances: Optional[Tolerances] = None,
) -> Tuple[Element, List[Element], CohenTrace]:
    """
    Factor every target as z w with a single z in J ∩ F_A

    z_n = sum_{k<=n} 2^-k f_k + 2^-n with f_{n+1} chosen greedily from the pool so that
    ||(1 - f_{n+1}) z_n^-1 x|| <= 2^-n eps for all targets; ties go to the lowest index.

    Args:
        targets: elements of the right ideal J
        cai_pool: candidate approximate left identities, all in F_A
        eps: factor accuracy, ||w - x|| <= 2 eps

    Returns:
        (z, factors w, trace)

    Raises:
        PoolExhausted: no pool element meets the step bound
        NotInF: a pool element lies outside F_A
    """
    return _cohen(targets, cai_pool, eps, False, tolerances)


def hsa_factorize(
    targets: Sequence[Element],
    bai_pool: Sequence[Element],
    eps: float = 0.1,
    tolerances: Optional[Tolerances] = None,
) -> Tuple[Element, List[Element], CohenTrace]:
    """
    Two-sided factorization x w x = target for a hereditary subalgebra with a bai in F_A

    Step bound ||(1 - f) z_n^-1 x|| + ||x z_n^-1 (1 - f)|| <= 2^-2n eps.
    """
    return _cohen(targets, bai_pool, eps, True, tolerances)


def min_norm_left_identity(
    ideal: IdealBasis,
    iterations: int = MIN_NORM_ITERATIONS,
    tolerances: Optional[Tolerances] = None,
) -> MinNormIdentity:
    """
    Smallest-norm u in J with u b = b for every b in J

    The solutions form an affine subspace c0 + N d of coefficients over the ideal basis;
    the norm is minimized over d by subgradient descent with step c / sqrt(k).
    The returned norm is an upper bound for the true minimum.
    """
    tol = get_tolerances(tolerances)
    algebra = ideal.algebra
    basis = ideal.basis
    if ideal.rank == 0:
        return MinNormIdentity(True, algebra.zero(), 0.0, 0.0, 0)
    system = np.vstack([algebra.right_matrix(basis[:, j]) @ basis for j in range(ideal.rank)])
    rhs = basis.T.reshape(-1)
    c0, residual = linalg.least_squares(system, rhs)
    if residual > 1e-8:
        log.info("no left identity in the ideal (residual %.3g)", residual)
        return MinNormIdentity(False, residual=residual)

    directions = basis @ scipy.linalg.null_space(system, rcond=tol.ideal_rank)
    best, best_norm, used = minimize_norm(Element(basis @ c0, algebra), directions, iterations)
    log.debug("min-norm left identity: norm %.9g after %d iterations", best_norm, used)
    return MinNormIdentity(True, best, best_norm, residual, used)


def _require_commutative(x: Element, tol: Tolerances) -> None:
    if not x.algebra.is_commutative(tol.centrality):
        raise NotCommutative(f"{x.algebra.label or 'algebra'} is not commutative")


def comm_join(x: Element, y: Element, tolerances: Optional[Tolerances] = None) -> Element:
    """
    m = (x + y) / 2, whose principal ideal is the closed sum xA + yA

    Raises:
        NotCommutative, NotInF, SpanMismatch
    """
    tol = get_tolerances(tolerances)
    x._check(y)
    _require_commutative(x, tol)
    for name, a in (("x", x), ("y", y)):
        if not in_F(a, tol.cone):
            raise NotInF(f"{name} is not in F_A")
    m = (x + y) / 2.0
    if not principal_right_ideal(m, tol).same_span(ideal_from_generators([x, y], IdealSide.RIGHT, tol), tol.span_rank):
        raise SpanMismatch("span((x + y) A / 2) differs from span(xA + yA)")
    return m


def support_join(x: Element, y: Element, tolerances: Optional[Tolerances] = None) -> Element:
    """
    s(x, y) = s(x) + s(y) - s(x) s(y) for commuting accretive x, y

    Raises:
        NotCommutative, SupportNotIdempotent, NotInF, SpanMismatch
    """
    tol = get_tolerances(tolerances)
    x._check(y)
    _require_commutative(x, tol)
    sx = support_idempotent(x, tolerances=tol).s
    sy = support_idempotent(y, tolerances=tol).s
    joined = sx + sy - sx * sy
    if (joined * joined - joined).norm() > tol.support_defect:
        raise SupportNotIdempotent("s(x) + s(y) - s(x) s(y) is not idempotent")
    if (joined * sx - sx).norm() > tol.support_defect or (joined * sy - sy).norm() > tol.support_defect:
        raise SupportNotIdempotent("join does not dominate s(x) and s(y)")
    if not in_F(joined, tol.cone):
        raise NotInF("support join lies outside F_A")
    if in_F(x, tol.cone) and in_F(y, tol.cone):
        expected = support_idempotent(comm_join(x, y, tol), tolerances=tol).s
        if (expected - joined).norm() > tol.route_agreement:
            raise SpanMismatch("support join differs from the support of (x + y) / 2")
    return joined


def corner_matches_intersection(z: Element, tolerances: Optional[Tolerances] = None) -> bool:
    """span(zAz) equals span(zA) ∩ span(Az)"""
    tol = get_tolerances(tolerances)
    corner = linalg.column_basis(z.left_matrix() @ z.right_matrix(), tol.ideal_rank)
    meet = linalg.intersect_spans(
        principal_right_ideal(z, tol).basis,
        principal_left_ideal(z, tol).basis,
        tol.ideal_rank,
    )
    return linalg.same_span(corner, meet, tol.span_rank)
