import numpy as np
import pytest

from src.dynamics.hybrid import SimConfig, slide
from src.dynamics.sliding import (
    convex_weight,
    is_pseudo_equilibrium,
    normalized_components,
    normalized_sliding_field,
    sliding_eigen_origin,
    sliding_field,
    sliding_jacobian_origin,
)
from src.errors import ComplexEigenvalues, DegenerateDenominator
from src.models.geometry import Point3
from src.models.params import ParamSet
from src.models.regions import RegionLabel
from src.models.system import NormalFormSystem


def test_sliding_field_at_unit_x(canonical_system):
    p = Point3.planar(1.0, 0.0)
    assert sliding_field(canonical_system, p).as_array() == pytest.approx([0.0, -1.0, 0.0])
    assert normalized_sliding_field(canonical_system, p) == pytest.approx((0.0, -2.0))
    assert convex_weight(canonical_system, p) == pytest.approx(0.5)


def test_sliding_field_is_convex_combination(canonical_system):
    p = Point3.planar(0.7, -0.2)
    alpha = convex_weight(canonical_system, p)
    combo = alpha * canonical_system.field_x(p).as_array() + (1 - alpha) * canonical_system.field_y(p).as_array()
    assert combo == pytest.approx(sliding_field(canonical_system, p).as_array())
    assert combo[2] == pytest.approx(0.0, abs=1e-15)


def test_degenerate_denominator(canonical_system):
    # X3 = Y3 = 0 at the origin
    with pytest.raises(DegenerateDenominator):
        sliding_field(canonical_system, Point3.planar(0.0, 0.0))


def test_origin_is_pseudo_equilibrium(canonical_system):
    assert is_pseudo_equilibrium(canonical_system, Point3.planar(0.0, 0.0))
    assert not is_pseudo_equilibrium(canonical_system, Point3.planar(1.0, 0.0))


def test_eigen_at_lambda_zero(canonical):
    eigen = sliding_eigen_origin(canonical)
    assert (eigen.eig1, eigen.eig2) == pytest.approx((-2.0, -1.0))
    assert eigen.line1.contains(1.0, -1.0)
    assert eigen.line2.contains(1.0, 0.0)
    assert eigen.regions1 == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)
    assert eigen.regions2 == (RegionLabel.SLIDING, RegionLabel.CROSSING_MINUS)


def test_eigen_at_positive_lambda(positive_lambda):
    eigen = sliding_eigen_origin(positive_lambda)
    assert eigen.eig1 == pytest.approx(-2.09161, abs=1e-5)
    assert eigen.eig2 == pytest.approx(-0.90839, abs=1e-5)
    assert eigen.delta == pytest.approx(1.4)


def test_eigen_vectors_solve_jacobian(positive_lambda):
    eigen = sliding_eigen_origin(positive_lambda)
    jac = sliding_jacobian_origin(positive_lambda)
    for value, vec in ((eigen.eig1, eigen.vec1), (eigen.eig2, eigen.vec2)):
        v = np.array(vec)
        assert jac @ v == pytest.approx(value * v)


def test_complex_eigenvalues():
    params = ParamSet(a=-1.0, b=-1.0, c=1.0, d=-1.0, lam=-0.5)
    with pytest.raises(ComplexEigenvalues) as info:
        sliding_eigen_origin(params)
    assert info.value.delta < 0.0


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_jacobian_matches_finite_differences(seed):
    rng = np.random.default_rng(seed)
    a, b, c, d, lam = rng.uniform(-2.0, 2.0, size=5)
    params = ParamSet(a=a, b=b, c=c, d=d, lam=lam)
    system = NormalFormSystem(params)
    h = 1e-6
    columns = []
    for dx, dy in ((h, 0.0), (0.0, h)):
        plus = np.array(normalized_components(system, dx, dy))
        minus = np.array(normalized_components(system, -dx, -dy))
        columns.append((plus - minus) / (2 * h))
    numeric = np.column_stack(columns)
    assert numeric == pytest.approx(sliding_jacobian_origin(params), abs=1e-6)


def test_eigen_regions_at_positive_lambda(positive_lambda):
    eigen = sliding_eigen_origin(positive_lambda)
    assert eigen.line1.slope == pytest.approx(-1.09161, abs=1e-5)
    assert eigen.line2.slope == pytest.approx(0.09161, abs=1e-5)
    assert eigen.regions1 == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)
    # the slow direction enters the sliding region
    assert eigen.regions2 == (RegionLabel.SLIDING, RegionLabel.ESCAPING)


def test_eigen_regions_at_negative_lambda(negative_lambda):
    eigen = sliding_eigen_origin(negative_lambda)
    assert eigen.line1.slope == pytest.approx(-0.947214, abs=1e-6)
    assert eigen.line2.slope == pytest.approx(-0.052786, abs=1e-6)
    assert eigen.regions1 == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)
    assert eigen.regions2 == (RegionLabel.CROSSING_PLUS, RegionLabel.CROSSING_MINUS)


@pytest.mark.parametrize("lam", [0.0, 0.1, -0.05])
def test_sliding_segments_are_convex_combinations(canonical, lam):
    system = NormalFormSystem(canonical.with_lambda(lam))
    rng = np.random.default_rng(9)
    for _ in range(20):
        x = rng.uniform(0.01, 1.0)
        y = rng.uniform(-x * x, 1.0)
        seg, _, _ = slide(system, Point3.planar(x, y), SimConfig(ball_radius=10.0, t_max=5.0))
        for point in seg.points[1:]:
            p = Point3.from_array(point)
            x3, y3 = system.normals(p.x, p.y)
            if y3 - x3 <= 1e-6:
                continue
            alpha = convex_weight(system, p)
            assert -1e-9 <= alpha <= 1.0 + 1e-9
            combo = alpha * system.field_x(p).as_array() + (1.0 - alpha) * system.field_y(p).as_array()
            assert combo[2] == pytest.approx(0.0, abs=1e-12)
            assert combo[:2] == pytest.approx(sliding_field(system, p).as_array()[:2], rel=1e-9, abs=1e-12)
        assert seg.points[:, 2].tolist() == [0.0] * len(seg.points)
        assert np.all(np.diff(seg.times) >= 0.0)
