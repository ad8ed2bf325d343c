import numpy as np
import pytest

from banachlab import mideals
from banachlab.algebra import linf_sum
from banachlab.builders import l1_group_algebra
from banachlab.exceptions import (
    BoundViolation,
    AlphaNotInterior,
    EmptyInterior,
    InvalidIdentity,
    NotMIdeal,
    NotQuotientRealPositive,
)
from banachlab.mideals import (
    MIdealIdeal,
    central_ideal,
    cssw_iteration,
    cssw_lift,
    face_check,
    m_property_gap,
    mideal_join,
    mideal_meet,
    quotient_numrange,
    real_positive_lift,
    segment_lift,
)
from banachlab.numrange import disk_distance, min_re_abscissa, numrange_outer, support_function
from banachlab.schemas import LiftMode, LiftStep


def test_linf_sum_projection_has_the_m_property(lift_setting, rng):
    algebra, ideal = lift_setting
    gap, _ = m_property_gap(algebra, ideal.P, samples=200, rng=rng)
    assert gap <= 1e-12
    assert ideal.z.allclose(algebra.element([1.0, 0.0, 0.0]))


def test_group_algebra_idempotent_is_not_an_m_ideal(z2):
    with pytest.raises(NotMIdeal):
        central_ideal(z2, z2.element([0.5, -0.5]))


def test_m_ideals_need_an_identity(pointwise3):
    with pytest.raises(InvalidIdentity):
        MIdealIdeal(pointwise3, np.eye(3))


def test_quotient_norm_matches_distance_to_ideal(lift_setting):
    algebra, ideal = lift_setting
    x = algebra.element([2.0, 0.3, 0.4j])
    assert ideal.quotient_norm(x) == pytest.approx(0.7)
    assert ideal.quotient_norm_minimized(x) == pytest.approx(0.7, abs=1e-9)
    assert ideal.quotient(x).same_coset(algebra.element([-7.0, 0.3, 0.4j]))


def test_quotient_numerical_range_is_a_disk(lift_setting):
    algebra, ideal = lift_setting
    x = algebra.element([5.0, 0.3 + 0.1j, 0.5])
    assert disk_distance(quotient_numrange(x, ideal), 0.3 + 0.1j, 0.5) <= 0.02


def test_quotient_numerical_range_of_a_point(lift_setting):
    algebra, ideal = lift_setting
    body = quotient_numrange(algebra.element([5.0, 0.4, 0.0]), ideal)
    assert np.allclose(body.outer, 0.4 * np.cos(body.directions), atol=1e-8)


def test_quotient_support_shifts_with_scalars(lift_setting):
    algebra, ideal = lift_setting
    x = algebra.element([5.0, 0.3, 0.5])
    angles = np.linspace(0.0, 2.0 * np.pi, 12, endpoint=False)
    shift = 0.25 - 0.5j
    before = support_function(x, angles, ideal.quotient_norm)
    after = support_function(x + shift * algebra.one(), angles, ideal.quotient_norm)
    assert np.allclose(after - before, np.real(shift * np.exp(-1j * angles)), atol=1e-6)


def test_quotient_by_whole_algebra(lift_setting):
    algebra, _ = lift_setting
    whole = central_ideal(algebra, algebra.one())
    with pytest.raises(InvalidIdentity):
        quotient_numrange(algebra.one(), whole)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.1 + 0.2j])
def test_closed_form_lift_preserves_norm(lift_setting, alpha):
    algebra, ideal = lift_setting
    x = algebra.element([5.0, 0.3, 0.5])
    v = cssw_lift(x, ideal, alpha)
    assert v.norm() == pytest.approx(0.8)
    assert ideal.quotient(x).same_coset(v)
    assert v.coeffs[0] == pytest.approx(alpha)


def test_iteration_reaches_closed_form(lift_setting):
    algebra, ideal = lift_setting
    x = algebra.element([5.0, 0.3, 0.5])
    closed = cssw_lift(x, ideal, 0.2)
    iterated = cssw_lift(x, ideal, 0.2, mode=LiftMode.ITERATION)
    assert iterated.allclose(closed, tol=1e-9)
    _, trace = cssw_iteration(x, ideal, 0.2, steps=5)
    assert [step.step for step in trace] == [1, 2, 3, 4, 5]
    assert all(step.contained for step in trace)


def test_lift_rejects_alpha_outside(lift_setting):
    algebra, ideal = lift_setting
    with pytest.raises(AlphaNotInterior):
        cssw_lift(algebra.element([5.0, 0.3, 0.5]), ideal, 0.95)


def test_lift_rejects_flat_quotient_range(lift_setting):
    algebra, ideal = lift_setting
    with pytest.raises(EmptyInterior):
        cssw_lift(algebra.element([5.0, 0.3, 0.0]), ideal, 0.3)


def test_segment_lift(three_scalars):
    algebra, ideal = three_scalars
    x = algebra.element([3.0, 0.2, 0.8j])
    v = segment_lift(x, ideal)
    assert v.norm() == pytest.approx(0.8, abs=1e-6)
    assert ideal.quotient(x).same_coset(v, tol=1e-12)


def test_segment_lift_of_point_and_zero(three_scalars):
    algebra, ideal = three_scalars
    point = segment_lift(algebra.element([3.0, 0.5, 0.5]), ideal)
    assert point.allclose(0.5 * algebra.one(), tol=1e-6)
    assert segment_lift(algebra.element([3.0, 0.0, 0.0]), ideal).allclose(algebra.zero())


def test_real_positive_lift_of_disk(lift_setting):
    algebra, ideal = lift_setting
    x = algebra.element([-5.0, 0.6, 0.3])
    a = real_positive_lift(x, ideal)
    assert a.norm() == pytest.approx(0.9, abs=1e-8)
    assert ideal.quotient(x).same_coset(a)
    assert min_re_abscissa(a) >= -1e-7


def test_real_positive_lift_of_segment(three_scalars):
    algebra, ideal = three_scalars
    x = algebra.element([-4.0, 0.2, 0.7])
    a = real_positive_lift(x, ideal)
    assert a.norm() == pytest.approx(0.7, abs=1e-6)
    assert min_re_abscissa(a) >= 0.2 - 1e-6


def test_real_positive_lift_rejects_negative_quotients(three_scalars):
    algebra, ideal = three_scalars
    with pytest.raises(NotQuotientRealPositive):
        real_positive_lift(algebra.element([0.0, -0.5, 0.0]), ideal)


def test_meet_and_join(three_scalars):
    algebra, first = three_scalars
    second = central_ideal(algebra, algebra.element([1.0, 1.0, 0.0]))
    third = central_ideal(algebra, algebra.element([0.0, 1.0, 0.0]))
    assert mideal_meet(first, second).z.allclose(first.z)
    assert mideal_join([first, third]).z.allclose(second.z)
    assert mideal_join([first, second, third]).ideal_basis.rank == 2


def test_states_vanishing_on_ideal_vanish_at_support(lift_setting):
    _, ideal = lift_setting
    count, worst = face_check(ideal, n_samples=400)
    assert count >= 50
    assert worst == 0.0


def test_iteration_trace_records_slack(lift_setting):
    algebra, ideal = lift_setting
    x = algebra.element([1.0, 0.0, 0.9])
    _, trace = cssw_iteration(x, ideal, 0.3 + 0.2j, steps=8)
    for step in trace:
        assert step.slack >= -1e-6
        assert step.contained == (step.slack >= -1e-6)
    assert trace[0].epsilon == 1.0
    assert trace[-1].epsilon == pytest.approx(2.0**-7)


def test_escaping_iteration_step_is_a_bound_violation(lift_setting, monkeypatch):
    algebra, ideal = lift_setting
    x = algebra.element([5.0, 0.3, 0.5])
    closed = cssw_lift(x, ideal, 0.2)

    def escaping(x, ideal, alpha, steps, body):
        return closed, [LiftStep(1, 1.0, closed.norm(), True, 0.1), LiftStep(2, 0.5, closed.norm(), False, -0.01)]

    monkeypatch.setattr(mideals, "cssw_iteration", escaping)
    with pytest.raises(BoundViolation, match="steps \\[2\\]"):
        cssw_lift(x, ideal, 0.2, mode=LiftMode.ITERATION)


@pytest.mark.slow
def test_lifts_on_random_inputs(lift_setting, rng):
    constructions = [lift_setting, linf_sum(l1_group_algebra(2), l1_group_algebra(2))]
    for trial in range(50):
        algebra, ideal = constructions[trial % 2]
        head = ideal.algebra.dim - 2
        center = complex(rng.standard_normal(), rng.standard_normal())
        radius = 0.2 + 0.8 * rng.random()
        b = radius * np.exp(2j * np.pi * rng.random())
        coeffs = np.concatenate([rng.standard_normal(head) * 3.0, [center, b]])
        x = algebra.element(coeffs)
        alpha = center + 0.5 * radius * rng.random() * np.exp(2j * np.pi * rng.random())

        v = cssw_lift(x, ideal, alpha)
        assert v.norm() == pytest.approx(abs(center) + radius, abs=1e-8)
        assert np.array_equal(ideal.complement(v).coeffs, ideal.complement(x).coeffs)
        body = quotient_numrange(x, ideal)
        assert np.all(numrange_outer(v, grid_from=body).outer <= body.outer + 1e-6)
        iterated = cssw_lift(x, ideal, alpha, mode=LiftMode.ITERATION)
        assert iterated.allclose(v, tol=1e-7)


@pytest.mark.slow
def test_real_positive_lifts_on_random_inputs(lift_setting, rng):
    algebra, ideal = lift_setting
    for _ in range(30):
        re_a = 0.1 + 0.9 * rng.random()
        a = complex(re_a, rng.uniform(-1.0, 1.0))
        b = 0.95 * re_a * rng.random() * np.exp(2j * np.pi * rng.random())
        x = algebra.element([rng.uniform(-5.0, 5.0), a, b])
        lifted = real_positive_lift(x, ideal)
        assert min_re_abscissa(lifted) >= -1e-6
        assert ideal.quotient(x).same_coset(lifted)
        assert lifted.norm() == pytest.approx(abs(a) + abs(b), abs=1e-6)
