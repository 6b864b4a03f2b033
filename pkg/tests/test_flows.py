import numpy as np
import pytest
from scipy.integrate import solve_ivp

from src.dynamics import polynomials
from src.dynamics.flows import flow_X, flow_Y, half_return, half_return_X, half_return_Y, return_time
from src.errors import DegenerateContact, NoReturn, OffSwitchingPlane
from src.models.geometry import Point3
from src.models.params import ParamSet
from src.models.system import Field, NormalFormSystem


def _xy(p):
    return (p.x, p.y)


def test_real_roots():
    assert polynomials.real_roots([0.0, 0.0, 1.0, -1.0 / 3.0]) == pytest.approx([0.0, 0.0, 3.0])
    assert polynomials.real_roots([-4.0, 0.0, 1.0]) == pytest.approx([-2.0, 2.0])
    assert polynomials.real_roots([1.0, 0.0, 1.0]) == []
    assert polynomials.real_roots([5.0]) == []
    assert polynomials.smallest_root_above([-1.0, 1.0], 0.0) == pytest.approx(1.0)
    assert polynomials.smallest_root_above([1.0, 1.0], 0.0) is None


def test_evaluate_is_horner():
    assert polynomials.evaluate((1.0, 2.0, 3.0), 2.0) == 17.0


@pytest.mark.parametrize("start, landing, t_x, image, t_y", [
    ((1.0, -1.0), (-2.0, -1.0), 3.0, (2.0, -9.0), 4.0),
    ((0.0, -3.0), (-3.0, -3.0), 3.0, (3.0, -15.0), 6.0),
])
def test_two_half_returns(canonical, start, landing, t_x, image, t_y):
    q, t1 = half_return(canonical, Field.X, Point3.planar(*start))
    assert _xy(q) == pytest.approx(landing)
    assert t1 == pytest.approx(t_x)
    r, t2 = half_return(canonical, Field.Y, q)
    assert _xy(r) == pytest.approx(image)
    assert t2 == pytest.approx(t_y)


def test_half_returns_are_involutions(canonical):
    for start in ((1.0, -1.0), (0.0, -3.0), (0.4, -0.5)):
        p = Point3.planar(*start)
        back = half_return_X(canonical, half_return_X(canonical, p))
        assert _xy(back) == pytest.approx(start, abs=1e-12)
    q = Point3.planar(-2.0, -1.0)
    assert _xy(half_return_Y(canonical, half_return_Y(canonical, q))) == pytest.approx((-2.0, -1.0), abs=1e-12)


def test_backward_half_return(canonical):
    # (-2, -1) lies below the X-fold: its X-arc is behind it in time
    q, t = half_return(canonical, Field.X, Point3.planar(-2.0, -1.0))
    assert _xy(q) == pytest.approx((1.0, -1.0))
    assert t == pytest.approx(-3.0)


def test_return_time(canonical):
    assert return_time(canonical, Field.X, Point3.planar(1.0, -1.0)) == pytest.approx(3.0)
    assert return_time(canonical, Field.Y, Point3.planar(-2.0, -1.0)) == pytest.approx(4.0)
    assert return_time(canonical, Field.Y, Point3.planar(-2.0, -1.0), direction=-1) is None


def test_return_time_requires_plane_point(canonical):
    with pytest.raises(OffSwitchingPlane):
        return_time(canonical, Field.X, Point3(1.0, -1.0, 0.5))


def test_degenerate_contact():
    params = ParamSet(a=0.0, b=-1.0, c=1.0, d=-2.0, lam=0.0)
    with pytest.raises(DegenerateContact):
        return_time(params, Field.X, Point3.planar(0.0, 0.0))


def test_invisible_fold_has_no_arc(canonical):
    # X-fold at (-1, -1): L^2 = b*(2*a*x) = -2 < 0
    with pytest.raises(NoReturn):
        half_return(canonical, Field.X, Point3.planar(-1.0, -1.0))


@pytest.mark.parametrize("which, flow", [(Field.X, flow_X), (Field.Y, flow_Y)])
def test_closed_form_matches_integration(negative_lambda, which, flow):
    system = NormalFormSystem(negative_lambda)
    p0 = Point3(0.3, -0.2, 0.1)

    def rhs(_t, state):
        return system.components(which, *state)

    solution = solve_ivp(rhs, (0.0, 1.5), p0.as_array(), method="DOP853", rtol=1e-12, atol=1e-12)
    expected = flow(negative_lambda, p0, 1.5).as_array()
    assert np.allclose(solution.y[:, -1], expected, rtol=1e-9, atol=1e-10)


@pytest.mark.parametrize("lam", [0.0, 0.1, -0.05])
@pytest.mark.parametrize("which, flow", [(Field.X, flow_X), (Field.Y, flow_Y)])
def test_closed_form_matches_integration_on_many_starts(canonical, lam, which, flow):
    params = canonical.with_lambda(lam)
    system = NormalFormSystem(params)
    rng = np.random.default_rng(17)
    starts = rng.uniform(-1.0, 1.0, size=(1000, 3))
    times = rng.uniform(0.0, 5.0, size=1000)

    def rhs(_t, state):
        x, y, z = state.reshape(-1, 3).T
        velocity = np.broadcast_arrays(*system.components(which, x, y, z))
        return np.column_stack(velocity).ravel()

    solution = solve_ivp(rhs, (0.0, 5.0), starts.ravel(), method="DOP853", rtol=1e-12, atol=1e-12, dense_output=True)
    for i, (start, t) in enumerate(zip(starts, times)):
        numeric = solution.sol(t)[3 * i:3 * i + 3]
        expected = flow(params, Point3(*start), t).as_array()
        assert np.allclose(numeric, expected, rtol=1e-9, atol=1e-9)


@pytest.mark.parametrize("lam", [0.0, 0.1, -0.05])
def test_half_returns_are_involutions_on_many_points(canonical, lam):
    params = canonical.with_lambda(lam)
    rng = np.random.default_rng(5)
    for x, y in rng.uniform(-1.0, 1.0, size=(500, 2)):
        p = Point3.planar(x, y)
        for which in (Field.X, Field.Y):
            q, t = half_return(params, which, p)
            back, t_back = half_return(params, which, q)
            assert _xy(back) == pytest.approx((x, y), abs=1e-9)
            assert t_back == pytest.approx(-t, abs=1e-9)
