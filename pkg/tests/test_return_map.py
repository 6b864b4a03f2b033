import numpy as np
import pytest

from src.dynamics.return_map import (
    Branch,
    OrbitStatus,
    first_return_map,
    in_sliding_closure,
    iterate_return_map,
    parabola_image,
    radicand,
    return_map_eigen_origin,
    return_map_jacobian_origin,
)
from src.errors import ComplexBranch, DegenerateParameters, LambdaZero
from src.models.geometry import Point3
from src.models.params import ParamSet
from src.models.regions import RegionLabel


def _xy(p):
    return (p.x, p.y)


def test_return_map_matches_half_returns(canonical):
    result = first_return_map(canonical, (1.0, -1.0))
    assert _xy(result.point) == pytest.approx((2.0, -9.0))
    assert result.radicand == pytest.approx(36.0)
    assert result.realizable
    assert result.flight_times == pytest.approx((3.0, 4.0))


def test_return_map_negative_lambda(negative_lambda):
    result = first_return_map(negative_lambda, (1.0, -1.0))
    assert _xy(result.point) == pytest.approx((2.075, -9.45375))
    assert _xy(parabola_image(negative_lambda, 1.0)) == pytest.approx((2.075, -9.45375))


@pytest.mark.parametrize("x0", [0.05, 0.3, 1.0, 2.5])
def test_parabola_image_agrees_with_map(positive_lambda, x0):
    on_fold = (x0, -x0 ** 2)
    assert _xy(first_return_map(positive_lambda, on_fold).point) == pytest.approx(_xy(parabola_image(positive_lambda, x0)))


def test_parabola_image_doubles_x(canonical):
    assert parabola_image(canonical, 0.7).x == pytest.approx(1.4)


def test_sliding_point_is_not_realizable(canonical):
    # X3 < 0 at (1, -0.3): the X-arc through it runs backwards
    assert not first_return_map(canonical, (1.0, -0.3)).realizable


def test_complex_branch(canonical):
    with pytest.raises(ComplexBranch) as info:
        first_return_map(canonical, (0.0, 1.0))
    assert info.value.radicand == pytest.approx(-48.0)
    assert radicand(canonical, Point3.planar(0.0, 1.0)) == pytest.approx(-48.0)


def test_fold_coefficient_required():
    params = ParamSet(a=0.0, b=-1.0, c=1.0, d=-2.0, lam=0.1)
    with pytest.raises(DegenerateParameters):
        first_return_map(params, (0.1, -0.1))


@pytest.mark.parametrize("lam", [0.1, -0.05])
def test_local_branch_fixes_origin(lam):
    params = ParamSet(a=-1.0, b=-1.0, c=1.0, d=-2.0, lam=lam)
    assert _xy(first_return_map(params, (0.0, 0.0), Branch.LOCAL).point) == pytest.approx((0.0, 0.0), abs=1e-15)


@pytest.mark.parametrize("lam", [0.1, -0.05])
def test_eigenvalues_match_jacobian(lam):
    params = ParamSet(a=-1.0, b=-1.0, c=1.0, d=-2.0, lam=lam)
    eigen = return_map_eigen_origin(params)
    assert eigen.xi_plus * eigen.xi_minus == pytest.approx(1.0)
    assert np.linalg.det(eigen.jacobian) == pytest.approx(1.0)
    numeric = sorted(np.linalg.eigvals(eigen.jacobian).real)
    assert sorted([eigen.xi_plus, eigen.xi_minus]) == pytest.approx(numeric, rel=1e-9)
    for xi, omega in ((eigen.xi_plus, eigen.omega_plus), (eigen.xi_minus, eigen.omega_minus)):
        v = np.array([omega, 1.0])
        assert eigen.jacobian @ v == pytest.approx(xi * v, rel=1e-9)


def test_eigenvalues_positive_lambda(positive_lambda):
    eigen = return_map_eigen_origin(positive_lambda)
    assert eigen.xi_plus == pytest.approx(77.98718, abs=1e-5)
    assert eigen.xi_minus == pytest.approx(0.0128226, abs=1e-6)


@pytest.mark.parametrize("lam", [0.1, -0.05])
def test_jacobian_matches_finite_differences(lam):
    params = ParamSet(a=-1.0, b=-1.0, c=1.0, d=-2.0, lam=lam)
    h = 5e-6
    columns = []
    for dx, dy in ((h, 0.0), (0.0, h)):
        plus = np.array(_xy(first_return_map(params, (dx, dy), Branch.LOCAL).point))
        minus = np.array(_xy(first_return_map(params, (-dx, -dy), Branch.LOCAL).point))
        columns.append((plus - minus) / (2 * h))
    numeric = np.column_stack(columns)
    assert numeric == pytest.approx(return_map_jacobian_origin(params), rel=1e-6, abs=1e-6)


def test_jacobian_undefined_at_lambda_zero(canonical):
    with pytest.raises(LambdaZero):
        return_map_jacobian_origin(canonical)


def test_iterates_reach_sliding(canonical):
    orbit = iterate_return_map(canonical, (0.1, -0.05))
    assert orbit.status is OrbitStatus.REACHED_SLIDING
    assert orbit.iterations == 3
    assert in_sliding_closure(canonical, orbit.points[-1])
    assert orbit.xs == sorted(orbit.xs)


def test_iterates_leave_radius(canonical):
    orbit = iterate_return_map(canonical, (0.1, -0.05), radius=5.0)
    assert orbit.status is OrbitStatus.LEFT_RADIUS
    assert orbit.iterations == 2


def test_iterates_complex_branch(canonical):
    orbit = iterate_return_map(canonical, (0.0, 1.0))
    assert orbit.status is OrbitStatus.COMPLEX_BRANCH
    assert orbit.iterations == 0


def test_custom_stop(canonical):
    orbit = iterate_return_map(canonical, (0.1, -0.05), stop=lambda q: q.x > 1.0)
    assert orbit.status is OrbitStatus.STOPPED
    assert orbit.points[-1].x == pytest.approx(2.48153, abs=1e-5)


@pytest.mark.parametrize("lam", [0.01, 0.05, 0.1, 0.5, 1.0, 1.9])
def test_origin_is_a_saddle_for_positive_lambda(canonical, lam):
    eigen = return_map_eigen_origin(canonical.with_lambda(lam))
    assert eigen.xi_plus > 1.0 > eigen.xi_minus > 0.0
    assert eigen.xi_plus * eigen.xi_minus == pytest.approx(1.0)


def test_eigenline_regions_positive_lambda(positive_lambda):
    eigen = return_map_eigen_origin(positive_lambda)
    assert eigen.omega_plus == pytest.approx(-0.253206, abs=1e-6)
    assert eigen.omega_minus == pytest.approx(-19.74679, abs=1e-5)
    assert eigen.regions_plus == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)
    assert eigen.regions_minus == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)


def test_eigenline_regions_negative_lambda(negative_lambda):
    eigen = return_map_eigen_origin(negative_lambda)
    assert eigen.xi_plus < 0.0 and eigen.xi_minus < 0.0
    assert eigen.omega_plus == pytest.approx(-0.2484567, abs=1e-6)
    assert eigen.omega_minus == pytest.approx(40.24846, abs=1e-5)
    assert eigen.regions_plus == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)
    # the contracting line of the flip runs from the sliding into the escaping region
    assert eigen.regions_minus == (RegionLabel.SLIDING, RegionLabel.ESCAPING)
