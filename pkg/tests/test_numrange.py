import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from banachlab.algebra import linf_sum, random_element
from banachlab.builders import scalar_algebra
from banachlab.exceptions import InvalidIdentity, NormTooLarge, UnsupportedStateFamily
from banachlab.schemas import NumericalRangeEstimate
from banachlab.numrange import (
    cone_report,
    decompose_unital,
    disk_distance,
    flatness,
    min_re_abscissa,
    numrange,
    numrange_inner,
    numrange_outer,
    preceq,
    sample_states,
    support_function,
)

PART = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)


@pytest.fixture(scope="module")
def two_scalars():
    algebra, _ = linf_sum(scalar_algebra(), scalar_algebra())
    return algebra


def test_z2_numerical_range_is_a_disk(z2):
    x = z2.element([0.3 + 0.1j, 0.5j])
    assert disk_distance(numrange_outer(x), 0.3 + 0.1j, 0.5) <= 0.02
    fine = numrange_outer(x, rings=32, angles=64, n_directions=1440)
    assert disk_distance(fine, 0.3 + 0.1j, 0.5) <= 0.005


@seed(11)
@settings(max_examples=40, deadline=None)
@given(re_a=PART, im_a=PART, re_b=PART, im_b=PART)
def test_z2_min_re_formula(z2, re_a, im_a, re_b, im_b):
    b = complex(re_b, im_b)
    x = z2.element([complex(re_a, im_a), b])
    assert min_re_abscissa(x) == pytest.approx(re_a - abs(b), abs=1e-6)


@pytest.mark.parametrize("name", ["z2", "z3", "l1_4"])
def test_inner_cloud_lies_inside_outer_body(name, request, rng):
    algebra = request.getfixturevalue(name)
    x = algebra.element(rng.standard_normal(algebra.dim) + 1j * rng.standard_normal(algebra.dim))
    body = numrange(x, n_samples=500, rng=rng)
    assert body.inner.size > 0
    assert body.contains(body.inner, slack=1e-7)
    assert body.hausdorff_gap >= -1e-7


def test_states_are_normalized(l1_4, rng):
    states = sample_states(l1_4, 200, rng)
    assert np.allclose(states[:, 0], 1.0)
    assert np.all(np.abs(states[:, 1:]) <= 1.0 + 1e-12)
    # 100 unit phases, 100 interior points, 4**3 lattice corners
    assert states.shape == (200 + 64, 4)


def test_states_of_a_sum_are_convex_combinations(lift_setting, rng):
    algebra, _ = lift_setting
    states = sample_states(algebra, 80, rng)
    assert states.shape == (80, 3)
    shares = states[:, 0].real
    assert np.allclose(states[:, 0] + states[:, 1], 1.0)
    assert np.all(shares[:10] == 0.0)
    assert np.all(shares[10:20] == 1.0)


def test_outer_only_for_operator_norms(lower):
    x = lower.element([1.0, 0.5, -1.0])
    body = numrange(x, n_samples=100)
    assert body.inner.size == 0
    assert np.isnan(body.hausdorff_gap)
    with pytest.raises(UnsupportedStateFamily):
        numrange_inner(x)
    # diagonal entries are eigenvalues, hence in W(x)
    assert body.contains([1.0, -1.0], slack=1e-6)


def test_support_function_of_z2_disk(z2):
    x = z2.element([0.0, 1.0])
    values = support_function(x, np.linspace(0.0, 2.0 * np.pi, 9))
    assert np.allclose(values, 1.0, atol=1e-6)


def test_flatness_of_disk_and_segment(z2, two_scalars):
    width, _ = flatness(z2.element([0.0, 0.5]))
    assert width == pytest.approx(1.0, abs=1e-5)
    width, angle = flatness(two_scalars.element([1.0, 0.0]))
    assert width <= 1e-5
    assert angle == pytest.approx(np.pi / 2.0, abs=1e-3)


def test_min_re_in_a_non_unital_algebra(pointwise3):
    assert min_re_abscissa(pointwise3.element([1.0, -1.0, 0.0])) == pytest.approx(-1.0, abs=1e-6)


def test_grid_reuse_gives_identical_directions(z2):
    x = z2.element([0.5, 0.5])
    first = numrange_outer(x)
    second = numrange_outer(2.0 * x, grid_from=first)
    assert np.array_equal(first.directions, second.directions)
    assert second.grid_meta == first.grid_meta


def test_cone_report_of_z2_idempotent(z2):
    p = z2.element([0.5, -0.5])
    report = cone_report(p)
    assert report.in_F and report.in_halfF and report.accretive
    assert report.min_re == pytest.approx(0.0, abs=1e-6)
    assert report.crosscheck_ok


def test_cone_report_outside_half_cone(z2):
    report = cone_report(2.0 * z2.one())
    assert report.in_F
    assert not report.in_halfF
    assert report.norm_one_minus_two == pytest.approx(3.0)


def test_real_positive_order(z2):
    p = z2.element([0.5, -0.5])
    assert preceq(z2.zero(), p)
    assert preceq(p, z2.one())
    assert not preceq(z2.zero(), z2.element([0.0, 1.0]))


def test_decompose_unital(z3):
    x = z3.element([0.1, 0.3j, -0.2])
    a, b = decompose_unital(x)
    assert (a - b).allclose(x)
    for part in (a, b):
        assert cone_report(part).in_halfF


def test_decompose_unital_errors(z2, pointwise3):
    with pytest.raises(NormTooLarge):
        decompose_unital(z2.element([0.0, 1.0]))
    with pytest.raises(InvalidIdentity):
        decompose_unital(pointwise3.element([0.1, 0.0, 0.0]))


@pytest.mark.parametrize("name", ["z3", "l1_4", "lower"])
def test_finer_lambda_grid_never_widens_the_outer_body(name, request, rng):
    algebra = request.getfixturevalue(name)
    for _ in range(5):
        x = random_element(algebra, rng)
        coarse = numrange_outer(x)
        finer_grid = NumericalRangeEstimate(
            directions=coarse.directions,
            outer=coarse.outer,
            grid_meta={**coarse.grid_meta, "rings": 2 * coarse.grid_meta["rings"], "angles": 2 * coarse.grid_meta["angles"]},
        )
        fine = numrange_outer(x, grid_from=finer_grid)
        assert np.all(fine.outer <= coarse.outer + 1e-12)


@seed(5)
@settings(max_examples=30, deadline=None)
@given(scale=st.floats(min_value=0.05, max_value=20.0), shift=PART)
def test_min_re_scales_and_shifts(l1_4, scale, shift):
    x = l1_4.element([0.2, -0.7, 0.4j, 0.3])
    base = min_re_abscissa(x)
    assert min_re_abscissa(scale * x) == pytest.approx(scale * base, abs=1e-6 * max(1.0, scale))
    assert min_re_abscissa(x + shift * l1_4.one()) == pytest.approx(base + shift, abs=1e-6)


def _ex1_product(l1_4):
    one, a, b, c = (l1_4.basis(i) for i in range(4))
    return one - a - b + c


def test_outer_body_of_product_reaches_minus_two(l1_4):
    pq = _ex1_product(l1_4)
    assert numrange_outer(pq).min_re() == pytest.approx(-2.0, abs=1e-3)
    assert min_re_abscissa(pq) == pytest.approx(-2.0, abs=1e-6)
    assert not cone_report(pq).accretive


def test_state_cloud_of_product_goes_below_minus_one_point_nine(l1_4, rng):
    cloud = numrange_inner(_ex1_product(l1_4), n_samples=500, rng=rng)
    assert np.min(cloud.real) < -1.9


@pytest.mark.parametrize("lam", [0.0, 1.5, -0.5 + 2.0j])
def test_outer_body_of_scalar_collapses_to_a_point(z2, lam):
    body = numrange_outer(lam * z2.one())
    expected = np.real(lam * np.exp(-1j * body.directions))
    assert np.max(np.abs(body.outer - expected)) <= 1e-6


def test_decompose_unital_batch(z3, rng):
    for _ in range(100):
        x = random_element(z3, rng, scale=0.999 * rng.random())
        a, b = decompose_unital(x)
        assert (a - b).allclose(x, tol=1e-12)
        assert (a + b).allclose(z3.one(), tol=1e-12)
        assert cone_report(a).in_halfF and cone_report(b).in_halfF
