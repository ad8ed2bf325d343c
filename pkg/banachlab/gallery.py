"""
Regression gallery: executable claims about the example algebras

Each claim returns a margin in its own units; it passes when the margin is at least
ten times the claim's tolerance.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from . import __version__, linalg
from .algebra import AlgebraSpec, Element, linf_sum, random_element
from .builders import (
    l1_group_algebra,
    l1_semigroup_four,
    lower_triangular_l1,
    scalar_algebra,
    truncated_l1_naturals,
    weighted_z2,
)
from .config import BANACHLAB_SEED, make_rng
from .exceptions import BanachLabError, ClaimFailed, PoolExhausted
from .ideals import (
    comm_join,
    cohen_factorize,
    ideal_from_generators,
    min_norm_left_identity,
    principal_right_ideal,
    support_idempotent,
    support_join,
    ws_equivalences_report,
)
from .mideals import cssw_iteration, cssw_lift, m_property_gap, quotient_numrange, real_positive_lift
from .numrange import cone_report, decompose_unital, disk_distance, min_re_abscissa, numrange_outer
from .roots import commuting_power_lipschitz_check, generated_subalgebra_basis, power, power_series, root_defect_profile
from .schemas import ClaimResult, IdealSide, PowerMethod

log = logging.getLogger(__name__)

# slack for membership claims that sit exactly on a cone boundary
BOUNDARY_SLACK = 1e-7
ARITHMETIC = 1e-12

Check = Callable[[AlgebraSpec, np.random.Generator], Tuple[float, str]]


@dataclass
class Claim:
    description: str
    check: Check
    tolerance: float


@dataclass
class GalleryCase:
    """
    Attributes:
        id: case identifier used by --filter
        builder: constructor of the case's algebra
        claims: executable claims
        provenance: which example the claims come from
        notes: statements recorded without a check, with the reason
    """
    id: str
    builder: Callable[[], AlgebraSpec]
    claims: List[Claim]
    provenance: str
    notes: List[str] = field(default_factory=list)


def _run_claim(claim: Claim, algebra: AlgebraSpec, rng: np.random.Generator) -> ClaimResult:
    try:
        margin, detail = claim.check(algebra, rng)
    except BanachLabError as exc:
        log.warning("claim %r raised %s", claim.description, exc)
        return ClaimResult(claim.description, False, float("-inf"), claim.tolerance, f"{type(exc).__name__}: {exc}")
    margin = float(margin)
    return ClaimResult(claim.description, margin >= 10.0 * claim.tolerance, margin, claim.tolerance, detail)


def _distance(a: Element, b: Element) -> float:
    return (a - b).norm()


# semigroup algebra {1, a, b, c}

def _ex1_elements(algebra: AlgebraSpec):
    one, a, b, c = (algebra.basis(i) for i in range(4))
    p = one - a
    q = one - b
    return one, p, q, p * q


def _ex1_cones(algebra, rng):
    _, p, q, _ = _ex1_elements(algebra)
    reports = [cone_report(x) for x in (p, q)]
    in_f = min(1.0 + BOUNDARY_SLACK - r.norm_one_minus for r in reports)
    outside_half = min(r.norm_one_minus_two - 1.0 for r in reports)
    return min(in_f, outside_half), f"||1 - 2p|| = {reports[0].norm_one_minus_two:.6g}"


def _ex1_product_not_accretive(algebra, rng):
    _, _, _, d = _ex1_elements(algebra)
    lowest = min_re_abscissa(d)
    return -lowest, f"min Re W(pq) = {lowest:.9g}"


def _ex1_principal_ideal(algebra, rng):
    _, _, _, d = _ex1_elements(algebra)
    ideal = principal_right_ideal(d)
    residual = linalg.span_residual(linalg.column_basis(d.coeffs[:, None], 1e-12), ideal.basis)
    rank_gap = 0.0 if ideal.rank == 1 else float("inf")
    return 1e-8 - residual - rank_gap, f"rank(dA) = {ideal.rank}"


def _ex1_min_norm_identity(algebra, rng):
    _, _, _, d = _ex1_elements(algebra)
    found = min_norm_left_identity(principal_right_ideal(d))
    if not found.feasible:
        return float("-inf"), "no left identity found"
    return 1e-6 - abs(found.norm - 4.0), f"min-norm identity {found.norm:.12g}"


def _ex1_idempotent_roots(algebra, rng):
    _, p, _, _ = _ex1_elements(algebra)
    worst = max(_distance(power(p, 1.0 / n).value, p) for n in (2, 3, 5))
    return 1e-7 - worst, f"max ||p^(1/n) - p|| = {worst:.3g}"


def _ex1_half_cone_roots(algebra, rng):
    _, p, _, _ = _ex1_elements(algebra)
    x = 0.5 * p
    inside = 1.0 + BOUNDARY_SLACK - cone_report(x).norm_one_minus_two
    outside = min(cone_report(power(x, 1.0 / n).value).norm_one_minus_two - 1.0 for n in (2, 3, 4, 5))
    return min(inside, outside), f"min over n of ||1 - 2 x^(1/n)|| - 1 = {outside:.6g}"


def _ex1_product_of_roots(algebra, rng):
    _, p, q, d = _ex1_elements(algebra)
    error = _distance(power(p, 0.5).value * power(q, 0.5).value, d)
    return 1e-7 - error, f"||p^(1/2) q^(1/2) - pq|| = {error:.3g}"


# l1(Z_2)

def _ex2_disk(algebra, rng):
    p = algebra.element([0.5, 0.5])
    gap = disk_distance(numrange_outer(p), 0.5, 0.5)
    return 0.02 - gap, f"Hausdorff distance to B(1/2, 1/2) = {gap:.4g}"


def _z2_grid(rng: np.random.Generator, count: int = 60) -> List[Tuple[complex, complex]]:
    """Random (a, b) plus points on the accretive boundary |b| = Re a"""
    points = []
    for _ in range(count):
        a = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        b = rng.uniform(0.0, 1.0) * np.exp(2j * np.pi * rng.random())
        points.append((a, complex(b)))
    for radius in (0.1, 0.5, 1.0):
        for phase in np.exp(2j * np.pi * np.arange(8) / 8):
            points.append((complex(radius, 0.3), complex(radius * phase)))
    return points


def _ex2_accretive_criterion(algebra, rng):
    worst = 0.0
    for a, b in _z2_grid(rng):
        lowest = min_re_abscissa(algebra.element([a, b]))
        worst = max(worst, abs(lowest - (a.real - abs(b))))
    return 1e-6 - worst, f"max |min Re W(a, b) - (Re a - |b|)| = {worst:.3g}"


def _ex2_half_cone_criterion(algebra, rng):
    closest = float("inf")
    disagreements = 0
    for a, b in _z2_grid(rng):
        value = cone_report(algebra.element([a, b])).norm_one_minus_two - 1.0
        if abs(value) < 1e-3:
            continue
        predicted = abs(b) <= 0.5 and abs(b) - abs(b) ** 2 <= a.real - abs(a) ** 2
        if predicted != (value <= 0.0):
            disagreements += 1
        closest = min(closest, abs(value))
    if disagreements:
        return -float(disagreements), f"{disagreements} grid points disagree"
    return closest, "criterion |b| <= 1/2 and |b| - |b|^2 <= Re a - |a|^2 agrees off the boundary"


def _ex2_not_m_projection(algebra, rng):
    p = algebra.element([0.5, 0.5])
    witness = np.array([1.0, 1.0j])
    x = algebra.element(witness)
    projected = p * x
    gap = x.norm() - max(projected.norm(), (x - projected).norm())
    sampled, _ = m_property_gap(algebra, p.left_matrix(), rng=rng)
    return gap, f"witness (1, i): ||x|| = {x.norm():.6g}, sampled gap {sampled:.4g}"


def _ex2_subalgebra_identity(algebra, rng):
    p = algebra.element([0.5, 0.5])
    generator = algebra.element([1.0, 1.0])
    error = max(_distance(p * p, p), _distance(p * generator, generator), abs(p.norm() - 1.0))
    return 1e-9 - error, "identity of C(1, 1) is (1/2, 1/2)"


def _phi(x: Element) -> complex:
    return complex(x.coeffs[0] + 1j * x.coeffs[1])


def _ex2_kernel_not_ideal(algebra, rng):
    x = algebra.element([0.5, 0.5j])
    error = max(abs(_phi(x)), abs(_phi(x * x) + 0.5))
    return 1e-9 - error, f"phi(x) = {_phi(x):.3g}, phi(x^2) = {_phi(x * x):.3g}"


def _ex2_support_is_one(algebra, rng):
    x = algebra.element([0.5, 0.5j])
    s = support_idempotent(x).s
    error = _distance(s, algebra.one())
    return 1e-6 - error, f"phi(s(x)) = {_phi(s):.6g}"


def _weighted_identity(algebra, rng):
    p = algebra.element([0.5, 0.5])
    found = min_norm_left_identity(principal_right_ideal(p))
    if not found.feasible:
        return float("-inf"), "no left identity found"
    return 1e-6 - abs(found.norm - 1.5), f"smallest left identity of C(1/2, 1/2) has norm {found.norm:.12g}"


def _plain_identity(algebra, rng):
    plain = l1_group_algebra(2)
    found = min_norm_left_identity(principal_right_ideal(plain.element([0.5, 0.5])))
    return 1e-6 - abs(found.norm - 1.0), f"plain l1 norm gives {found.norm:.12g}"


# truncated l1(N)

def _ex3_generated(algebra, rng):
    x = algebra.one() + 0.5 * algebra.basis(1)
    rank = generated_subalgebra_basis(x).shape[1]
    in_f = 1.0 - cone_report(x).norm_one_minus
    return min(rank - (algebra.dim - 1), in_f), f"rank of ba(x) = {rank} of {algebra.dim} (truncation level)"


def _ex3_roots_not_increasing(algebra, rng):
    x = 0.5 * (algebra.one() - algebra.basis(1))
    inside = 1.0 + BOUNDARY_SLACK - cone_report(x).norm_one_minus_two
    gap = power_series(x, 0.5).value - x
    lowest = min_re_abscissa(gap)
    return min(inside, -lowest), f"min Re W(x^(1/2) - x) = {lowest:.9g} (truncation level)"


# lower triangular matrices on l1_2

def _ex7_pool(algebra):
    e11, e21 = algebra.basis(0), algebra.basis(1)
    return [e11 + e21, e11 - e21], [e11, e21]


def _ex7_pool_exhausted(algebra, rng):
    pool, targets = _ex7_pool(algebra)
    eps = 0.1
    try:
        cohen_factorize(targets, pool, eps)
    except PoolExhausted as exc:
        return exc.defect - eps, f"exhausted at step {exc.step} with defect {exc.defect:.6g}"
    return float("-inf"), "factorization unexpectedly succeeded"


def _ex7_corner(algebra, rng):
    pool, targets = _ex7_pool(algebra)
    left = ideal_from_generators(pool, IdealSide.RIGHT)
    columns = [(e * algebra.basis(k) * f).coeffs for e in pool for f in pool for k in range(algebra.dim)]
    corner = linalg.column_basis(np.column_stack(columns), 1e-10)
    expected = linalg.column_basis(np.column_stack([t.coeffs for t in targets]), 1e-10)
    residual = max(
        linalg.span_residual(expected, left.basis),
        linalg.span_residual(left.basis, expected),
        linalg.span_residual(expected, corner),
        linalg.span_residual(corner, expected),
    )
    return 1e-8 - residual, "span(EAE) = span(EA) = span{E11, E21}"


def _ex7_no_left_identity(algebra, rng):
    pool, _ = _ex7_pool(algebra)
    found = min_norm_left_identity(ideal_from_generators(pool, IdealSide.RIGHT))
    if found.feasible:
        return 1.0 - found.norm, f"left identity of norm {found.norm:.6g}"
    return found.residual - 1e-8, f"infeasible, residual {found.residual:.6g}"


# quantitative lemmas on l1(Z_3)

def _accretive_samples(algebra, rng, count):
    """(1 + y) / 2 for ||y|| <= 0.9: in (1/2) F_A, hence accretive and of norm <= 1"""
    one = algebra.one()
    return [0.5 * (one + random_element(algebra, rng, scale=0.9 * rng.random())) for _ in range(count)]


def _balakrishnan_bound(algebra, rng):
    worst = float("inf")
    for x in _accretive_samples(algebra, rng, 10):
        for alpha in (0.25, 0.5, 0.75):
            bound = 2.0 * math.sin(alpha * math.pi) / (math.pi * alpha * (1.0 - alpha)) * x.norm() ** alpha
            value = power(x, alpha, PowerMethod.QUADRATURE).value.norm()
            worst = min(worst, bound - value)
    return worst, "||x^alpha|| <= 2 sin(alpha pi) / (pi alpha (1 - alpha)) ||x||^alpha"


def _root_defect_decay(algebra, rng):
    n_values = [2 ** k for k in range(1, 9)]
    profiles = [root_defect_profile(x, n_values) for x in _accretive_samples(algebra, rng, 5)]
    batch = np.max([profile.defects for profile in profiles], axis=0)
    increase = float(np.max(np.diff(batch), initial=-np.inf))
    return min(0.05 - batch[-1], 1e-9 - increase), f"batch defect at n = 256: {batch[-1]:.4g}"


def _lipschitz(algebra, rng):
    a, b = _accretive_samples(algebra, rng, 2)
    c = random_element(algebra, rng, scale=1.0)
    report = commuting_power_lipschitz_check(a, b, c, 0.5, trials=5, rng=rng)
    return 1.0 - report.worst_ratio, f"worst ratio {report.worst_ratio:.4g} over {report.trials} contractions"


def _decomposition(algebra, rng):
    x = random_element(algebra, rng, scale=0.9)
    a, b = decompose_unital(x)
    slack = min(1.0 - cone_report(a).norm_one_minus_two, 1.0 - cone_report(b).norm_one_minus_two)
    return min(slack, 1e-12 - _distance(a - b, x)), "x = a - b with a, b in (1/2) F_A"


def _ws_report(algebra, rng):
    average = (algebra.one() + algebra.basis(1) + algebra.basis(2)) / 3.0
    x = 0.75 * (algebra.one() - average)
    report = ws_equivalences_report(x)
    if not report.all_hold:
        return float("-inf"), str(report.to_dict())
    return report.spectral_gap - 1e-6, f"spectral gap {report.spectral_gap:.6g}"


def _support_join(algebra, rng):
    semigroup = l1_semigroup_four()
    one = semigroup.one()
    p, q = one - semigroup.basis(1), one - semigroup.basis(2)
    m = comm_join(p, q)
    joined = support_join(p, q)
    defect = max(_distance(joined * joined, joined), (one - joined).norm() - 1.0 - 1e-8)
    return 1e-7 - defect, f"||1 - s(p, q)|| = {(one - joined).norm():.9g}, m = {np.round(m.coeffs.real, 6).tolist()}"


# norm-preserving lifts in C (+)inf l1(Z_2)

def _lift_setting():
    return linf_sum(scalar_algebra(), l1_group_algebra(2))


def _quotient_disk(algebra, rng):
    _, ideal = _lift_setting()
    x = ideal.algebra.element([1.0, 0.0, 0.9])
    gap = disk_distance(quotient_numrange(x, ideal), 0.0, 0.9)
    return 0.02 - gap, f"Hausdorff distance to B(0, 0.9) = {gap:.4g}"


def _closed_form_lift(algebra, rng):
    _, ideal = _lift_setting()
    x = ideal.algebra.element([1.0, 0.0, 0.9])
    v = cssw_lift(x, ideal, 0.0, mode="iteration")
    error = max(abs(v.norm() - 0.9), np.max(np.abs(v.coeffs - [0.0, 0.0, 0.9])))
    return 1e-7 - error, f"||v|| = {v.norm():.12g}"


def _lift_iteration_trace(algebra, rng):
    _, ideal = _lift_setting()
    x = ideal.algebra.element([1.0, 0.0, 0.9])
    _, trace = cssw_iteration(x, ideal, 0.3 + 0.2j, steps=8)
    worst = min(step.slack for step in trace)
    steps = ", ".join(f"{step.step}:{step.slack:.3g}" for step in trace)
    return worst + 1e-6, f"slack per step {steps}"


def _real_positive_lift(algebra, rng):
    _, ideal = _lift_setting()
    x = ideal.algebra.element([-5.0, 0.5, 0.4])
    a = real_positive_lift(x, ideal)
    lowest = min_re_abscissa(a)
    error = max(abs(a.norm() - 0.9), np.max(np.abs(ideal.complement(a - x).coeffs)))
    return min(lowest + 1e-6, 1e-6 - error), f"min Re W(a) = {lowest:.6g}, ||a|| = {a.norm():.9g}"


CASES: Dict[str, GalleryCase] = {
    case.id: case
    for case in [
        GalleryCase(
            "ex1",
            l1_semigroup_four,
            [
                Claim("p = 1 - a and q = 1 - b lie in F_A but not in (1/2) F_A", _ex1_cones, ARITHMETIC),
                Claim("pq is not accretive", _ex1_product_not_accretive, 1e-5),
                Claim("d = pq satisfies dA = Cd", _ex1_principal_ideal, 1e-10),
                Claim("smallest left identity of Cd has norm 4", _ex1_min_norm_identity, 1e-9),
                Claim("p^(1/n) = p for n = 2, 3, 5", _ex1_idempotent_roots, 1e-9),
            ],
            "semigroup algebra l1({1, a, b, c}) with ab = c: products of F_A elements",
        ),
        GalleryCase(
            "ex1-extra",
            l1_semigroup_four,
            [
                Claim("x = p / 2 is in (1/2) F_A but x^(1/n) is not, n = 2..5", _ex1_half_cone_roots, ARITHMETIC),
                Claim("pq = p^(1/2) q^(1/2)", _ex1_product_of_roots, 1e-9),
            ],
            "semigroup algebra l1({1, a, b, c}): (1/2) F_A is not closed under roots",
        ),
        GalleryCase(
            "ex2",
            lambda: l1_group_algebra(2),
            [
                Claim("W(p) is the disk B(1/2, 1/2) for p = (1/2, 1/2)", _ex2_disk, 1e-4),
                Claim("(a, b) is accretive iff |b| <= Re a", _ex2_accretive_criterion, 1e-8),
                Claim("(1/2) F_A criterion on a grid", _ex2_half_cone_criterion, 1e-5),
                Claim("L_p is not an M-projection", _ex2_not_m_projection, 1e-9),
            ],
            "l1(Z_2): cones, numerical range and idempotents",
        ),
        GalleryCase(
            "ex2-extra",
            lambda: l1_group_algebra(2),
            [
                Claim("the subalgebra C(1, 1) has identity (1/2, 1/2)", _ex2_subalgebra_identity, ARITHMETIC),
                Claim("phi(a, b) = a + ib kills x = (1/2, i/2) but not x^2", _ex2_kernel_not_ideal, ARITHMETIC),
                Claim("s(x) = 1 for x = (1/2, i/2), so phi(s(x)) = 1", _ex2_support_is_one, 1e-8),
            ],
            "l1(Z_2): a state vanishing at x need not vanish at s(x)",
            notes=["the Cayley transform remark is recorded only; it is not checked"],
        ),
        GalleryCase(
            "ex2-weighted",
            weighted_z2,
            [
                Claim("under |a| + 2|b| the ideal C(1/2, 1/2) has no contractive left identity", _weighted_identity, 1e-9),
                Claim("under the plain l1 norm (1/2, 1/2) is a contractive left identity", _plain_identity, 1e-9),
            ],
            "l1(Z_2) with weights (1, 2)",
        ),
        GalleryCase(
            "ex3",
            truncated_l1_naturals,
            [
                Claim("ba(1 + delta_1 / 2) is the whole truncated algebra", _ex3_generated, 1e-9),
                Claim("x <= x^(1/2) fails for x = (1 - delta_1) / 2 in (1/2) F_A", _ex3_roots_not_increasing, 1e-5),
            ],
            "l1(N) under convolution, truncated to delta_0 .. delta_7",
            notes=["Arens regularity has no finite-dimensional counterpart and is not checked"],
        ),
        GalleryCase(
            "ex7",
            lower_triangular_l1,
            [
                Claim("Cohen factorization over E = {E11 +- E21} exhausts its pool", _ex7_pool_exhausted, 1e-9),
                Claim("span(EAE) = span(EA) = span{E11, E21}", _ex7_corner, 1e-10),
                Claim("span{E11, E21} has no left identity, so no bounded approximate identity", _ex7_no_left_identity, 1e-10),
            ],
            "lower triangular 2x2 matrices acting on l1_2",
            notes=["span(EA) differs from every principal right ideal aA; not searched exhaustively"],
        ),
        GalleryCase(
            "lemmas",
            lambda: l1_group_algebra(3),
            [
                Claim("fractional power norm bound", _balakrishnan_bound, 1e-6),
                Claim("root defects ||x^(1/n) x - x|| decrease to below 0.05 at n = 256", _root_defect_decay, 1e-10),
                Claim("commuting power Lipschitz inequality", _lipschitz, 1e-6),
                Claim("||x|| < 1 splits as a difference of (1/2) F_A elements", _decomposition, 1e-12),
                Claim("pseudo-invertibility equivalences for a non-invertible accretive element", _ws_report, 1e-8),
                Claim("support join of 1 - a and 1 - b in l1({1, a, b, c})", _support_join, 1e-9),
            ],
            "quantitative lemmas checked on l1(Z_3)",
        ),
        GalleryCase(
            "lifts",
            lambda: _lift_setting()[0],
            [
                Claim("W(Q(1, (0, 0.9))) is the disk B(0, 0.9)", _quotient_disk, 1e-4),
                Claim("the lift of (1, (0, 0.9)) at alpha = 0 is (0, (0, 0.9))", _closed_form_lift, 1e-9),
                Claim("every lift iteration step stays in N(C, alpha, 2^-n)", _lift_iteration_trace, 1e-8),
                Claim("(-5, (0.5, 0.4)) lifts to an accretive element of norm 0.9", _real_positive_lift, 1e-8),
            ],
            "C (+)inf l1(Z_2) with the ideal C (+) 0",
        ),
    ]
}


def select_cases(filter: Optional[str] = None) -> List[GalleryCase]:
    """Cases whose id equals the filter or starts with it followed by '-'; all when filter is None or 'all'"""
    if filter in (None, "all"):
        return list(CASES.values())
    chosen = [case for case in CASES.values() if case.id == filter or case.id.startswith(f"{filter}-")]
    if not chosen:
        raise ValueError(f"no gallery case matches {filter!r}; known ids: {', '.join(CASES)}")
    return chosen


def run_gallery(filter: Optional[str] = None, seed: int = BANACHLAB_SEED) -> dict:
    """
    Run every selected case and return the report

    Each case gets its own generator seeded from `seed`, so a filtered run reproduces the
    same numbers as the full run. Use raise_for_failures to turn a failing report into an error.
    """
    cases_out = []
    for case in select_cases(filter):
        log.info("gallery case %s", case.id)
        algebra = case.builder()
        rng = make_rng(seed)
        results = [_run_claim(claim, algebra, rng) for claim in case.claims]
        cases_out.append(
            {
                "id": case.id,
                "algebra": algebra.label,
                "provenance": case.provenance,
                "notes": list(case.notes),
                "claims": [result.to_dict() for result in results],
                "passed": all(result.passed for result in results),
            }
        )
        log.info("gallery case %s: %s", case.id, "pass" if cases_out[-1]["passed"] else "FAIL")
    return {
        "version": __version__,
        "seed": seed,
        "cases": cases_out,
        "passed": all(case["passed"] for case in cases_out),
    }


def raise_for_failures(report: dict) -> None:
    """
    Raises:
        ClaimFailed: for the first failing claim
    """
    for case in report["cases"]:
        for claim in case["claims"]:
            if not claim["passed"]:
                raise ClaimFailed(case["id"], claim["description"], claim["margin"])


def failed_claims(report: dict) -> Iterable[Tuple[str, str, float]]:
    for case in report["cases"]:
        for claim in case["claims"]:
            if not claim["passed"]:
                yield case["id"], claim["description"], claim["margin"]
