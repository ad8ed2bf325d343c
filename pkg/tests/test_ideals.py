import itertools

import numpy as np
import pytest

from banachlab.algebra import random_element, to_unital
from banachlab.builders import lower_left_ideal_algebra, pointwise_l1, upper_triangular_nilpotent
from banachlab.exceptions import NotAccretive, NotCommutative, NotInF, NotPseudoInvertible, PoolExhausted
from banachlab.ideals import (
    cohen_factorize,
    comm_join,
    corner_matches_intersection,
    hsa_factorize,
    ideal_from_generators,
    min_norm_left_identity,
    principal_left_ideal,
    principal_right_ideal,
    pseudo_invert,
    support_idempotent,
    support_join,
    ws_equivalences_report,
)
from banachlab.numrange import cone_report, in_F
from banachlab.schemas import IdealSide, SupportRoute


@pytest.fixture(scope="module")
def p(z2):
    return z2.element([0.5, -0.5])


@pytest.mark.parametrize("route", list(SupportRoute))
def test_support_of_scaled_idempotent(z2, p, route):
    result = support_idempotent(0.6 * p, route)
    assert result.s.allclose(p, tol=1e-7)
    assert result.route == route
    assert result.is_central
    assert max(result.defects) <= 1e-7


def test_support_of_invertible_element_is_one(z3):
    result = support_idempotent(z3.element([0.8, 0.1, 0.1j]))
    assert result.s.allclose(z3.one(), tol=1e-7)


def test_support_in_non_unital_algebra(pointwise3):
    result = support_idempotent(pointwise3.element([0.5, 0.0, 0.25]))
    assert result.s.algebra is pointwise3
    assert result.s.allclose(pointwise3.element([1.0, 0.0, 1.0]), tol=1e-7)


def test_support_needs_accretive_element(z2, p):
    with pytest.raises(NotAccretive):
        support_idempotent(-1.0 * p)


def test_pseudo_inverse(z2, p):
    x = 0.6 * p
    y = pseudo_invert(x)
    assert (x * y * x).allclose(x, tol=1e-10)


def test_nilpotent_is_not_pseudo_invertible():
    algebra = upper_triangular_nilpotent()
    with pytest.raises(NotPseudoInvertible):
        pseudo_invert(algebra.element([0.0, 1.0]))
    with pytest.raises(NotAccretive):
        ws_equivalences_report(algebra.element([0.0, 1.0]))


def test_ws_equivalences(z2, p):
    report = ws_equivalences_report(0.6 * p)
    assert report.all_hold
    assert report.spectral_gap == pytest.approx(0.6)
    assert sorted(np.round(report.spectrum.real, 9)) == [0.0, 0.6]


def test_cohen_factorization_in_pointwise_algebra(pointwise3):
    target = pointwise3.element([1.0, 2.0, 0.0])
    pool = [pointwise3.element([1.0, 1.0, 0.0])]
    z, factors, trace = cohen_factorize([target], pool, eps=0.1)
    assert z.algebra is pointwise3
    assert (z * factors[0]).allclose(target, tol=1e-9)
    assert in_F(z)
    assert (factors[0] - target).norm() <= 0.2 + 1e-12
    assert trace.steps[0].chosen == 0
    assert max(trace.residuals) <= 1e-9


def test_two_sided_factorization(pointwise3):
    target = pointwise3.element([1.0, 2.0, 0.0])
    pool = [pointwise3.element([1.0, 1.0, 0.0])]
    z, factors, _ = hsa_factorize([target], pool, eps=0.1)
    assert (z * factors[0] * z).allclose(target, tol=1e-9)


def test_pool_without_left_identity_is_exhausted():
    algebra = lower_left_ideal_algebra()
    e11, e21 = algebra.basis(0), algebra.basis(1)
    with pytest.raises(PoolExhausted) as info:
        cohen_factorize([e21], [e11], eps=0.1)
    assert info.value.step == 0
    assert info.value.defect == pytest.approx(1.0)


def test_pool_outside_f_is_rejected(z3):
    average = z3.element([1.0, 1.0, 1.0]) / 3.0
    with pytest.raises(NotInF):
        cohen_factorize([average], [average])


def test_min_norm_left_identity_depends_on_the_norm(z2, weighted):
    plain = min_norm_left_identity(principal_right_ideal(z2.element([0.5, -0.5])))
    heavy = min_norm_left_identity(principal_right_ideal(weighted.element([0.5, -0.5])))
    assert plain.feasible and heavy.feasible
    assert plain.norm == pytest.approx(1.0)
    assert heavy.norm == pytest.approx(1.5)


def test_min_norm_left_identity_of_whole_pointwise_algebra(pointwise3):
    ideal = ideal_from_generators([pointwise3.basis(i) for i in range(3)])
    result = min_norm_left_identity(ideal)
    assert result.u.allclose(pointwise3.element([1.0, 1.0, 1.0]), tol=1e-9)
    assert result.norm == pytest.approx(3.0)


def test_min_norm_left_identity_infeasible():
    algebra = lower_left_ideal_algebra()
    ideal = ideal_from_generators([algebra.basis(0), algebra.basis(1)], IdealSide.RIGHT)
    assert ideal.rank == 2
    result = min_norm_left_identity(ideal)
    assert not result.feasible
    assert result.residual >= 0.5


def test_comm_join(pointwise3):
    x = pointwise3.element([1.0, 0.0, 0.0])
    y = pointwise3.element([0.0, 1.0, 0.0])
    m = comm_join(x, y)
    assert m.allclose(pointwise3.element([0.5, 0.5, 0.0]))
    assert principal_right_ideal(m).rank == 2


def test_joins_need_commutative_algebra(lower):
    with pytest.raises(NotCommutative):
        comm_join(lower.basis(0), lower.basis(2))


def test_support_join_in_semigroup_algebra(l1_4):
    one, a, b, c = (l1_4.basis(i) for i in range(4))
    joined = support_join(one - a, one - b)
    assert joined.allclose(one - c, tol=1e-7)


def test_ideals_are_closed(lower, l1_4):
    for x in (lower.basis(0), lower.element([1.0, 2.0, 0.0])):
        assert principal_right_ideal(x).closure_defect() <= 1e-12
        assert principal_left_ideal(x).closure_defect() <= 1e-12
    two_sided = ideal_from_generators([l1_4.basis(1)], IdealSide.TWO_SIDED)
    assert two_sided.rank == 2
    assert two_sided.contains(l1_4.basis(3))


def test_corner_matches_intersection(lower):
    assert corner_matches_intersection(lower.basis(0))
    assert corner_matches_intersection(lower.element([1.0, 1.0, 0.0]))


def _l1_4_idempotents(l1_4):
    """All sums of the four minimal idempotents c, a - c, b - c, 1 - a - b + c"""
    one, a, b, c = (l1_4.basis(i) for i in range(4))
    minimal = [c, a - c, b - c, one - a - b + c]
    idempotents = []
    for mask in itertools.product((0, 1), repeat=4):
        total = l1_4.zero()
        for keep, e in zip(mask, minimal):
            if keep:
                total = total + e
        idempotents.append(total)
    return idempotents


def _singular_accretive(z2, z3, l1_4, rng):
    """t p for idempotents p in F_A and t in (0, 1]"""
    one3 = z3.one()
    average = z3.element([1.0, 1.0, 1.0]) / 3.0
    idempotents = [z2.element([0.5, -0.5]), one3 - average]
    idempotents += [p for p in _l1_4_idempotents(l1_4) if p.norm() > 0 and in_F(p) and not p.allclose(l1_4.one())]
    return [(0.05 + 0.95 * rng.random()) * p for p in idempotents for _ in range(3)]


def test_idempotents_are_in_f_exactly_when_accretive(l1_4, z2):
    idempotents = _l1_4_idempotents(l1_4) + [z2.zero(), z2.one(), z2.element([0.5, 0.5]), z2.element([0.5, -0.5])]
    for p in idempotents:
        assert (p * p).allclose(p, tol=1e-12)
        report = cone_report(p)
        assert report.in_F == report.accretive


def test_right_ideal_of_support_matches(z2, z3, l1_4, rng):
    for x in _singular_accretive(z2, z3, l1_4, rng):
        s = support_idempotent(x).s
        assert principal_right_ideal(x).same_span(principal_right_ideal(s))


def test_corner_in_commutative_algebras(pointwise3, l1_4, z3, rng):
    samples = [pointwise3.element([1.0, 0.0, 2.0j]), pointwise3.element([0.0, 0.0, 1.0])]
    samples += [p for p in _l1_4_idempotents(l1_4) if p.norm() > 0]
    samples += [random_element(z3, rng) for _ in range(5)]
    samples += [z3.one() - z3.element([1.0, 1.0, 1.0]) / 3.0]
    for z in samples:
        assert corner_matches_intersection(z)


@pytest.mark.slow
def test_ws_equivalences_on_random_accretive_elements(z2, z3, l1_4, rng, half_f_samples):
    samples = half_f_samples(z2, rng, 25) + half_f_samples(z3, rng, 25) + half_f_samples(l1_4, rng, 25)
    samples += _singular_accretive(z2, z3, l1_4, rng)
    assert len(samples) >= 100
    for x in samples:
        report = ws_equivalences_report(x)
        assert report.all_hold
        s = support_idempotent(x).s
        if not s.allclose(to_unital(x).algebra.one(), tol=1e-8):
            assert report.spectral_gap >= 1e-6


def _pointwise_instance(rng):
    n = int(rng.integers(3, 7))
    algebra = pointwise_l1(n)
    support = rng.random(n) < 0.6
    support[int(rng.integers(n))] = True
    indicator = algebra.element(support.astype(float))
    targets = []
    for _ in range(int(rng.integers(1, 3))):
        coeffs = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * support
        targets.append(algebra.element(coeffs))
    return targets, [indicator, algebra.element(np.where(support, 0.5, 0.0))]


@pytest.mark.slow
def test_cohen_factorization_instances(rng):
    for _ in range(20):
        targets, pool = _pointwise_instance(rng)
        z, factors, trace = cohen_factorize(targets, pool, eps=0.1)
        assert cone_report(z).norm_one_minus <= 1.0 + 1e-8
        for w, x in zip(factors, targets):
            assert (z * w - x).norm() <= 1e-9 * max(1.0, x.norm())
            assert (w - x).norm() <= 0.2 + 1e-12
        assert max(trace.residuals) <= 1e-9 * max(1.0, max(x.norm() for x in targets))


def _pointwise_in_f(algebra, rng):
    """Coordinates in the disk B(1, 0.9), some of them zero"""
    values = 1.0 + 0.9 * np.sqrt(rng.random(algebra.dim)) * np.exp(2j * np.pi * rng.random(algebra.dim))
    zeros = rng.random(algebra.dim) < 0.4
    zeros[int(rng.integers(algebra.dim))] = False
    values[zeros] = 0.0
    return algebra.element(values)


@pytest.mark.slow
def test_joins_on_random_pairs(pointwise3, z3, rng, half_f_samples):
    pairs = [(_pointwise_in_f(pointwise3, rng), _pointwise_in_f(pointwise3, rng)) for _ in range(50)]
    pairs += [tuple(half_f_samples(z3, rng, 2)) for _ in range(50)]
    for x, y in pairs:
        m = comm_join(x, y)
        assert principal_right_ideal(m).same_span(ideal_from_generators([x, y]))
        joined = support_join(x, y)
        assert (joined * joined - joined).norm() <= 1e-8
        assert (joined * support_idempotent(x).s - support_idempotent(x).s).norm() <= 1e-8
        assert cone_report(joined).norm_one_minus <= 1.0 + 1e-8
