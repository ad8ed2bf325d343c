"""
States, numerical ranges and the cones F_A, (1/2)F_A, r_A
"""

import itertools
import logging
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from .algebra import Element, to_unital
from .config import Tolerances, get_tolerances, make_rng
from .exceptions import InvalidIdentity, NonConvergent, NormTooLarge, UnsupportedStateFamily
from .schemas import ConeReport, NormKind, NumericalRangeEstimate

log = logging.getLogger(__name__)

DEFAULT_RINGS = 8
DEFAULT_ANGLES = 16
DEFAULT_DIRECTIONS = 360
_PROBE_EXPONENTS = np.arange(4, 25)
# vertex lattice of the l1 state family is enumerated up to this many free coordinates
_MAX_LATTICE_COORDS = 5


NormFn = Callable[[Element], float]


def _element_norm(a: Element) -> float:
    return a.norm()


def _directional_derivative(x: Element, u: complex, norm: Optional[NormFn] = None) -> Tuple[float, float]:
    """
    lim_{t -> 0+} (||1 + t conj(u) x|| - 1) / t with Richardson extrapolation

    Args:
        x: element of a unital algebra
        u: unit direction
        norm: norm to differentiate, the algebra norm by default; any norm with ||1|| = 1 works

    Returns:
        (estimate, error estimate from successive extrapolants)
    """
    norm = norm or _element_norm
    one = x.algebra.one()
    direction = np.conj(u) * x
    steps = 2.0 ** (-_PROBE_EXPONENTS.astype(float))
    quotients = np.array([(norm(one + t * direction) - 1.0) / t for t in steps])
    extrapolated = 2.0 * quotients[1:] - quotients[:-1]
    errors = np.abs(np.diff(extrapolated))
    best = int(np.argmin(errors))
    return float(extrapolated[best + 1]), float(errors[best])


def support_value(a: Element, u: complex) -> float:
    """max Re(phi(a) conj(u)) over states phi, from the norm alone"""
    value, _ = _directional_derivative(to_unital(a), u)
    return value


def support_function(a: Element, angles, norm: Optional[NormFn] = None) -> np.ndarray:
    """Support function of W(a) at the given angles, each value from the norm derivative"""
    x = to_unital(a)
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    return np.array([_directional_derivative(x, np.exp(1j * theta), norm)[0] for theta in angles])


def flatness(a: Element, norm: Optional[NormFn] = None, n_directions: int = 72) -> Tuple[float, float]:
    """
    Minimal width of W(a) and the normal angle attaining it

    The coarse minimum over n_directions angles in [0, pi) is refined by a bounded scalar search,
    which locates the kink of the width function of a segment.
    """
    x = to_unital(a)

    def width(theta: float) -> float:
        return float(np.sum(support_function(x, [theta, theta + np.pi], norm)))

    angles = np.pi * np.arange(n_directions) / n_directions
    widths = np.array([width(theta) for theta in angles])
    best = int(np.argmin(widths))
    step = np.pi / n_directions
    refined = minimize_scalar(width, bounds=(angles[best] - step, angles[best] + step), method="bounded", options={"xatol": 1e-10})
    if refined.fun < widths[best]:
        return float(max(refined.fun, 0.0)), float(refined.x)
    return float(max(widths[best], 0.0)), float(angles[best])


def min_re_abscissa(a: Element, tolerances: Optional[Tolerances] = None, norm: Optional[NormFn] = None) -> float:
    """
    Lower bound of Re W(a): -lim (||1 - t a|| - 1) / t

    Raises:
        NonConvergent: if successive Richardson extrapolants disagree by more than the tolerance
    """
    tol = get_tolerances(tolerances)
    value, error = _directional_derivative(to_unital(a), -1.0, norm)
    if error > tol.abscissa:
        raise NonConvergent(f"abscissa estimate unsettled (error {error:.3g})")
    return -value


def _center_estimate(x: Element, norm: Optional[NormFn] = None) -> complex:
    """Centre of the bounding box of W(x)"""
    right, _ = _directional_derivative(x, 1.0, norm)
    left, _ = _directional_derivative(x, -1.0, norm)
    top, _ = _directional_derivative(x, 1j, norm)
    bottom, _ = _directional_derivative(x, -1j, norm)
    return complex((right - left) / 2.0, (top - bottom) / 2.0)


def lambda_grid(center: complex, radius: float, rings: int, angles: int) -> np.ndarray:
    """{0, center} together with `rings` concentric rings of `angles` points about center"""
    radii = radius * np.arange(1, rings + 1) / rings
    phases = np.exp(2j * np.pi * np.arange(angles) / angles)
    ring_points = center + np.outer(radii, phases).reshape(-1)
    return np.concatenate([[0.0, center], ring_points])


def williams_support(norm_of_shift, grid: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """
    Support samples of the intersection of the disks B(lam, ||x - lam 1||) over the grid

    Args:
        norm_of_shift: callable lam -> ||x - lam 1||
        grid: complex lambda values
        directions: angles of the support directions
    """
    radii = np.array([norm_of_shift(lam) for lam in grid])
    units = np.exp(1j * directions)
    offsets = np.real(np.outer(grid, units.conj()))
    return np.min(offsets + radii[:, None], axis=0)


def numrange_outer(
    a: Element,
    rings: int = DEFAULT_RINGS,
    angles: int = DEFAULT_ANGLES,
    n_directions: int = DEFAULT_DIRECTIONS,
    norm: Optional[NormFn] = None,
    grid_from: Optional[NumericalRangeEstimate] = None,
) -> NumericalRangeEstimate:
    """
    Outer convex estimate of W(a) from the Williams formula

    Args:
        a: element (unitized when its algebra has no identity)
        rings: number of concentric lambda rings, radius up to 3||a||
        angles: lambda points per ring
        n_directions: support directions
        norm: norm replacing the algebra norm, e.g. a quotient norm
        grid_from: reuse the lambda grid and directions of an earlier estimate so the two compare exactly

    Returns:
        NumericalRangeEstimate with the outer support samples filled in
    """
    x = to_unital(a)
    norm = norm or _element_norm
    one = x.algebra.one()
    if grid_from is not None:
        meta = grid_from.grid_meta
        rings, angles, n_directions = meta["rings"], meta["angles"], meta["n_directions"]
        center = complex(*meta["center"])
        radius = meta["radius"]
    else:
        center = _center_estimate(x, norm)
        radius = 3.0 * norm(x)
    grid = lambda_grid(center, radius, rings, angles)
    directions = 2.0 * np.pi * np.arange(n_directions) / n_directions
    outer = williams_support(lambda lam: norm(x - lam * one), grid, directions)
    return NumericalRangeEstimate(
        directions=directions,
        outer=outer,
        grid_meta={
            "rings": rings,
            "angles": angles,
            "radius": radius,
            "center": [center.real, center.imag],
            "n_directions": n_directions,
        },
    )


def _l1_state_family(algebra) -> Tuple[int, np.ndarray]:
    """Index of the identity basis vector and the dual weights of the remaining coordinates"""
    spec = algebra.norm_spec
    if spec.kind != NormKind.L1 or not algebra.is_unital:
        raise UnsupportedStateFamily("closed-form states need a unital l1 algebra")
    identity = algebra.identity
    index = int(np.argmax(np.abs(identity)))
    if abs(identity[index] - 1.0) > 1e-12 or np.sum(np.abs(identity)) - 1.0 > 1e-12:
        raise UnsupportedStateFamily("identity is not a basis vector")
    weights = np.ones(algebra.dim) if spec.weights is None else spec.weights
    return index, weights


def sample_states(algebra, n_samples: int, rng=None, include_lattice: bool = True) -> np.ndarray:
    """
    States of a unital l1 algebra (f(1) = 1, |f(e_j)| <= w_j) or of an l-infinity sum of such

    States of B (+)inf C are t f (+) (1 - t) g with f, g states and t in [0, 1];
    one eighth of the samples sit at t = 0 and another eighth at t = 1.

    Returns:
        (m, dim) array of state values on the basis
    """
    generator = make_rng(rng)
    spec = algebra.norm_spec
    if spec.kind == NormKind.LINF_SUM:
        if not algebra.is_unital:
            raise UnsupportedStateFamily("states of a sum need unital summands")
        left = sample_states(spec.left, n_samples, generator, include_lattice=False)
        right = sample_states(spec.right, n_samples, generator, include_lattice=False)
        share = generator.random(n_samples)
        share[: n_samples // 8] = 0.0
        share[n_samples // 8 : n_samples // 4] = 1.0
        return np.hstack([share[:, None] * left[:n_samples], (1.0 - share)[:, None] * right[:n_samples]])

    index, weights = _l1_state_family(algebra)
    free = [j for j in range(algebra.dim) if j != index]
    extreme = n_samples // 2
    phases = np.exp(2j * np.pi * generator.random((extreme, len(free))))
    radii = np.sqrt(generator.random((n_samples - extreme, len(free))))
    interior = radii * np.exp(2j * np.pi * generator.random((n_samples - extreme, len(free))))
    values = [np.vstack([phases, interior])]
    if include_lattice and 0 < len(free) <= _MAX_LATTICE_COORDS:
        corners = np.array([1, 1j, -1, -1j])
        values.append(np.array(list(itertools.product(corners, repeat=len(free)))))
    free_values = np.vstack(values) * weights[free][None, :]
    states = np.zeros((free_values.shape[0], algebra.dim), dtype=complex)
    states[:, index] = 1.0
    states[:, free] = free_values
    return states


def numrange_inner(a: Element, n_samples: int = 2000, rng=None) -> np.ndarray:
    """
    Point cloud of state values phi(a) for the closed-form l1 state family

    Raises:
        UnsupportedStateFamily: for other norm kinds
    """
    states = sample_states(a.algebra, n_samples, rng)
    return states @ a.coeffs


def outer_polygon(directions: np.ndarray, support: np.ndarray) -> np.ndarray:
    """
    Vertices of the polygon {z : Re(z conj(u_k)) <= h_k}, clipped half-plane by half-plane

    Returns:
        (m, 2) array of vertices in order; empty when the constraints are inconsistent
    """
    bound = 2.0 * float(np.max(np.abs(support))) + 1.0
    polygon = np.array([[-bound, -bound], [bound, -bound], [bound, bound], [-bound, bound]])
    normals = np.column_stack([np.cos(directions), np.sin(directions)])
    for normal, offset in zip(normals, support):
        if polygon.shape[0] == 0:
            break
        values = polygon @ normal - offset
        following = np.roll(polygon, -1, axis=0)
        next_values = np.roll(values, -1)
        inside = values <= 0.0
        crossing = inside != (next_values <= 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            fraction = np.where(crossing, values / (values - next_values), 0.0)
        intersections = polygon + fraction[:, None] * (following - polygon)
        candidates = np.stack([polygon, intersections], axis=1).reshape(-1, 2)
        keep = np.stack([inside, crossing], axis=1).reshape(-1)
        polygon = candidates[keep]
    return polygon


def polygon_support(vertices: np.ndarray, angles) -> np.ndarray:
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    if vertices.shape[0] == 0:
        return np.full(angles.shape, -np.inf)
    units = np.column_stack([np.cos(angles), np.sin(angles)])
    return np.max(vertices @ units.T, axis=0)


def hausdorff_gap(estimate: NumericalRangeEstimate, points: np.ndarray) -> float:
    """Largest support-function gap between the outer polygon and the hull of the points"""
    points = np.atleast_1d(np.asarray(points, dtype=complex))
    if points.size == 0:
        return float("nan")
    units = np.exp(1j * estimate.directions)
    inner_support = np.max(np.real(np.outer(points, units.conj())), axis=0)
    return float(np.max(estimate.support() - inner_support))


def disk_distance(estimate: NumericalRangeEstimate, center: complex, radius: float) -> float:
    """Hausdorff distance between the outer polygon and a closed disk"""
    units = np.exp(1j * estimate.directions)
    disk = np.real(center * units.conj()) + radius
    return float(np.max(np.abs(estimate.support() - disk)))


def numrange(a: Element, n_samples: int = 2000, rng=None, **grid) -> NumericalRangeEstimate:
    """Outer estimate plus inner cloud and gap where the state family is closed-form"""
    estimate = numrange_outer(a, **grid)
    try:
        estimate.inner = numrange_inner(a, n_samples, rng)
    except UnsupportedStateFamily:
        log.warning("inner numerical range omitted for %s", a.algebra.label)
        return estimate
    estimate.hausdorff_gap = hausdorff_gap(estimate, estimate.inner)
    return estimate


def cone_report(a: Element, tol: Optional[float] = None, tolerances: Optional[Tolerances] = None) -> ConeReport:
    """
    Membership of a in F_A, (1/2)F_A and r_A, with the norm criterion as cross-check

    Args:
        a: element (unitized when needed)
        tol: membership slack, default from the configured tolerances
    """
    tols = get_tolerances(tolerances)
    tol = tols.cone if tol is None else tol
    x = to_unital(a)
    one = x.algebra.one()
    norm_f = (one - x).norm()
    norm_half = (one - 2.0 * x).norm()
    derivative, _ = _directional_derivative(x, -1.0)
    min_re = -derivative
    size = x.norm()
    crosscheck = all(
        (one - t * x).norm() <= 1.0 + t * t * size * size + tol for t in 2.0 ** np.arange(-10, 5, dtype=float)
    )
    return ConeReport(
        in_F=bool(norm_f <= 1.0 + tol),
        in_halfF=bool(norm_half <= 1.0 + tol),
        min_re=float(min_re),
        accretive=bool(min_re >= -tol),
        crosscheck_ok=bool(crosscheck),
        norm_one_minus=float(norm_f),
        norm_one_minus_two=float(norm_half),
    )


def in_F(a: Element, tol: float = 1e-7) -> bool:
    x = to_unital(a)
    return (x.algebra.one() - x).norm() <= 1.0 + tol


def is_accretive(a: Element, tol: float = 1e-7) -> bool:
    derivative, _ = _directional_derivative(to_unital(a), -1.0)
    return -derivative >= -tol


def preceq(a: Element, b: Element, tol: Optional[float] = None) -> bool:
    """a <= b in the real-positive order, i.e. b - a accretive"""
    return is_accretive(b - a, get_tolerances().cone if tol is None else tol)


def decompose_unital(x: Element) -> Tuple[Element, Element]:
    """
    x = a - b with a, b in (1/2)F_A, for ||x|| < 1 in a unital algebra

    Raises:
        InvalidIdentity: ambient algebra has no identity
        NormTooLarge: ||x|| >= 1
    """
    if not x.algebra.is_unital:
        raise InvalidIdentity("decompose_unital needs a unital algebra")
    if x.norm() >= 1.0:
        raise NormTooLarge(f"||x|| = {x.norm():.6g} must be below 1")
    one = x.algebra.one()
    return (one + x) / 2.0, (one - x) / 2.0
