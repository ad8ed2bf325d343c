"""
Principal fractional powers, the F-transform and root inequalities
"""

import logging
import math
from typing import Iterable, Optional

import numpy as np
from scipy.special import roots_legendre

from . import linalg
from .algebra import Element, from_unital, invert, random_element, spectrum, to_unital
from .config import Tolerances, get_tolerances, make_rng
from .exceptions import NotAccretive, NotCommuting, NotInF, TolNotReached
from .numrange import in_F, is_accretive
from .schemas import LipschitzReport, PowerMethod, PowerResult, RootDefectProfile

log = logging.getLogger(__name__)

SERIES_TERM_CAP = 10 ** 6
GAUSS_ORDER = 16
MAX_REFINEMENTS = 8
ZERO_EIGENVALUE = 1e-8
CONTOUR_NODES = 64


def kernel_idempotent(x: Element, tolerances: Optional[Tolerances] = None) -> Element:
    """
    Riesz idempotent of x for the spectral point 0 (zero when x is invertible)

    Computed by the trapezoidal rule on a circle about 0 that encloses no other eigenvalue.
    """
    x = to_unital(x)
    one = x.algebra.one()
    moduli = np.abs(spectrum(x))
    scale = max(1.0, float(np.max(moduli, initial=0.0)))
    nonzero = moduli[moduli > ZERO_EIGENVALUE * scale]
    if nonzero.size == moduli.size:
        return x.algebra.zero()
    radius = 0.5 * float(np.min(nonzero)) if nonzero.size else 0.5 * scale
    nodes = radius * np.exp(2j * np.pi * np.arange(CONTOUR_NODES) / CONTOUR_NODES)
    terms = [lam * invert(lam * one - x, tolerances).coeffs for lam in nodes]
    return Element(np.sum(terms, axis=0) / CONTOUR_NODES, x.algebra)


def _binomial_coefficients(t: float):
    """Yield (k, (-1)^k binom(t, k)) by the recurrence binom(t, k) = binom(t, k-1) (t - k + 1) / k"""
    coefficient = 1.0
    k = 0
    while True:
        yield k, coefficient
        k += 1
        coefficient *= -(t - k + 1) / k


def power_series(
    x: Element,
    t: float,
    tol: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
    max_terms: int = SERIES_TERM_CAP,
) -> PowerResult:
    """
    x^t = sum_k binom(t, k) (-1)^k (1 - x)^k for x in F_A and t in [0, 1]

    The zero eigenspace is split off with the Riesz idempotent e of x: on it the partial
    sums equal the remaining coefficient mass, which is subtracted exactly, and on the
    complement ||(1 - x)^k (1 - e)|| is nonincreasing, so the stopping rule
    mass(K) * ||(1 - x)^K (1 - e)|| < tol bounds the tail.

    Raises:
        NotInF: ||1 - x|| > 1
        TolNotReached: tail bound still above tol after max_terms terms
    """
    tols = get_tolerances(tolerances)
    tol = tols.series if tol is None else tol
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    u = to_unital(x)
    one = u.algebra.one()
    y = one - u
    if y.norm() > 1.0 + tols.cone:
        raise NotInF(f"||1 - x|| = {y.norm():.6g} > 1")
    if t == 0.0:
        return PowerResult(from_unital(one, x), PowerMethod.SERIES, 0.0, 1)
    if t == 1.0:
        return PowerResult(x, PowerMethod.SERIES, 0.0, 1)

    e = kernel_idempotent(u, tols)
    complement = (one - e).right_matrix()
    step = y.left_matrix()
    term = one.coeffs.copy()
    total = np.zeros_like(term)
    mass = 1.0
    bound = float("inf")
    for k, coefficient in _binomial_coefficients(t):
        if k > 0:
            term = step @ term
            mass -= abs(coefficient)
        total = total + coefficient * term
        if k > 0:
            bound = max(mass, 0.0) * u.algebra.norm_of(complement @ term)
            if bound < tol:
                break
        if k >= max_terms:
            raise TolNotReached(f"series tail bound {bound:.3g} above {tol:.3g} after {k} terms")
    # on the zero eigenspace the partial sum equals the remaining mass times e
    value = Element(total - max(mass, 0.0) * e.coeffs, u.algebra)
    log.debug("power_series t=%.6g: %d terms, tail bound %.3g", t, k + 1, bound)
    return PowerResult(from_unital(value, x), PowerMethod.SERIES, bound, k + 1)


def _integration_window(alpha: float, size: float, tol: float):
    """Log-time window [-S1, S2] whose truncated tails each contribute below tol / 4"""
    weight = math.sin(alpha * math.pi) / math.pi
    lower = (tol * alpha / (8.0 * weight)) ** (1.0 / alpha)
    upper = (4.0 * weight * max(size, 1e-300) / ((1.0 - alpha) * tol)) ** (1.0 / (1.0 - alpha))
    return math.log(lower), math.log(max(upper, 1.0))


def _balakrishnan_panels(left: np.ndarray, coeffs: np.ndarray, one: np.ndarray, alpha: float, edges: np.ndarray) -> np.ndarray:
    """Composite Gauss-Legendre sum of e^(alpha s) (e^s + x)^-1 x over the panel edges"""
    nodes, weights = roots_legendre(GAUSS_ORDER)
    half = np.diff(edges) / 2.0
    middle = (edges[:-1] + edges[1:]) / 2.0
    s = (middle[:, None] + half[:, None] * nodes[None, :]).reshape(-1)
    w = (half[:, None] * weights[None, :]).reshape(-1)
    t = np.exp(s)
    dim = left.shape[0]
    systems = t[:, None, None] * np.eye(dim)[None] + left[None]
    large = t > 1.0
    # for t <= 1 use 1 - t (t + x)^-1, whose error stays O(eps) as t -> 0
    rhs = np.where(large[:, None], coeffs[None, :], one[None, :])
    solved = np.linalg.solve(systems, rhs[..., None])[..., 0]
    integrand = np.where(large[:, None], solved, one[None, :] - t[:, None] * solved)
    return np.sum((w * np.exp(alpha * s))[:, None] * integrand, axis=0)


def power_balakrishnan(
    x: Element,
    alpha: float,
    tol: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
) -> PowerResult:
    """
    x^alpha = sin(alpha pi)/pi * int_0^inf t^(alpha-1) (t + x)^-1 x dt for accretive x

    After t = e^s the integral is taken over a window sized from the bounds
    ||(t + x)^-1 x|| <= 2 near 0 and <= ||x|| / t at infinity, with composite
    Gauss-Legendre panels doubled until successive values agree to tol.
    A zero eigenvalue is split off first: with e the Riesz idempotent at 0 the
    integral is taken for the invertible x + e, and x^alpha = (x + e)^alpha - e.

    Raises:
        NotAccretive, TolNotReached
    """
    tols = get_tolerances(tolerances)
    tol = tols.quadrature if tol is None else tol
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    u = to_unital(x)
    if not np.any(u.coeffs):
        return PowerResult(x, PowerMethod.QUADRATURE, 0.0, 0)
    if not is_accretive(u, tols.cone):
        raise NotAccretive("power_balakrishnan needs an accretive element")

    kernel = kernel_idempotent(u, tols)
    shifted = u + kernel
    start, stop = _integration_window(alpha, shifted.norm(), tol)
    left = shifted.left_matrix()
    panels = max(8, int(math.ceil(stop - start)))
    previous = _balakrishnan_panels(left, shifted.coeffs, u.algebra.identity, alpha, np.linspace(start, stop, panels + 1))
    difference = float("inf")
    for _ in range(MAX_REFINEMENTS):
        panels *= 2
        current = _balakrishnan_panels(left, shifted.coeffs, u.algebra.identity, alpha, np.linspace(start, stop, panels + 1))
        difference = u.algebra.norm_of(current - previous) * math.sin(alpha * math.pi) / math.pi
        previous = current
        if difference < tol:
            break
    else:
        raise TolNotReached(f"quadrature refinements still differ by {difference:.3g}")
    value = Element(previous * math.sin(alpha * math.pi) / math.pi - kernel.coeffs, u.algebra)
    log.debug("power_balakrishnan alpha=%.6g: %d panels, difference %.3g", alpha, panels, difference)
    return PowerResult(from_unital(value, x), PowerMethod.QUADRATURE, difference + tol / 2.0, panels * GAUSS_ORDER)


def power(x: Element, t: float, method: Optional[PowerMethod] = None, tol: Optional[float] = None) -> PowerResult:
    """Series on F_A, quadrature otherwise, unless a method is forced"""
    if method is None:
        method = PowerMethod.SERIES if in_F(x) else PowerMethod.QUADRATURE
    if PowerMethod(method) == PowerMethod.SERIES:
        return power_series(x, t, tol)
    if t == 1.0:
        return PowerResult(x, PowerMethod.QUADRATURE, 0.0, 0)
    return power_balakrishnan(x, t, tol)


def f_transform(x: Element, tolerances: Optional[Tolerances] = None) -> Element:
    """F(x) = x (1 + x)^-1 = 1 - (1 + x)^-1"""
    u = to_unital(x)
    one = u.algebra.one()
    return from_unital(one - invert(one + u, tolerances), x)


def inverse_f_transform(y: Element, tolerances: Optional[Tolerances] = None) -> Element:
    """y (1 - y)^-1"""
    u = to_unital(y)
    one = u.algebra.one()
    return from_unital(u * invert(one - u, tolerances), y)


def root_defect_profile(x: Element, n_set: Iterable[int]) -> RootDefectProfile:
    """Defects ||x^(1/n) x - x|| over the requested n"""
    if not in_F(x) and not (x.norm() <= 1.0 + 1e-12 and is_accretive(x)):
        raise NotInF("root_defect_profile needs x in F_A, or ||x|| <= 1 and accretive")
    n_values = sorted(int(n) for n in n_set)
    defects = []
    for n in n_values:
        root = power(x, 1.0 / n).value
        defects.append((root * x - x).norm())
    return RootDefectProfile(n_values, defects)


def lipschitz_constant(alpha: float) -> float:
    return math.sin(alpha * math.pi) / math.pi * (4.0 / alpha + 1.0 / (1.0 - alpha))


def commuting_power_lipschitz_check(
    a: Element,
    b: Element,
    c: Element,
    alpha: float,
    trials: int = 0,
    rng=None,
) -> LipschitzReport:
    """
    Check ||(a^alpha - b^alpha) c|| <= K ||(a - b) c||^alpha for commuting accretive a, b

    Args:
        a, b: commuting accretive elements
        c: contraction
        alpha: exponent in (0, 1)
        trials: additional random contractions c to test

    Raises:
        ValueError: c is not a contraction
        NotCommuting, NotAccretive
    """
    if c.norm() > 1.0 + 1e-12:
        raise ValueError(f"c must be a contraction, got ||c|| = {c.norm():.6g}")
    if (a * b - b * a).norm() > 1e-10 * max(1.0, a.norm() * b.norm()):
        raise NotCommuting("a and b do not commute")
    constant = lipschitz_constant(alpha)
    a_power = power(a, alpha).value
    b_power = power(b, alpha).value
    generator = make_rng(rng)
    contractions = [c] + [random_element(c.algebra, generator, scale=generator.random()) for _ in range(trials)]
    worst = 0.0
    violations = 0
    for contraction in contractions:
        left = ((a_power - b_power) * contraction).norm()
        delta = ((a - b) * contraction).norm()
        bound = constant * delta ** alpha
        ratio = 0.0 if left <= 1e-12 else (left / bound if bound > 0 else float("inf"))
        worst = max(worst, ratio)
        if left > bound + 1e-9:
            violations += 1
    return LipschitzReport(alpha, constant, worst, len(contractions), violations)


def generated_subalgebra_basis(x: Element, rel_tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of span{x, x^2, ..., x^dim}, the finite-dimensional ba(x)"""
    powers = []
    current = x
    for _ in range(x.algebra.dim):
        powers.append(current.coeffs)
        current = current * x
    return linalg.column_basis(np.column_stack(powers), rel_tol)

