import math

import pytest

from src.dynamics.hybrid import SimConfig
from src.errors import CertificateFailed, ConfigError, PreconditionError, RegimeViolation
from src.lab import stability
from src.lab.certificate import confirm_by_simulation, escape_certificate, witness_height
from src.lab.sampling import SampleSpec, sample_ball
from src.lab.stability import Verdict, classify_stability
from src.lab.suites import run_suite, run_suites
from src.lab.verify import (
    axis_flight_time,
    lower_curve,
    parabola_flight_time,
    upper_curve,
    verify_curve_images,
    verify_monotone_growth,
    verify_reach_sliding,
    verify_strip_containment,
)
from src.models.geometry import Point3
from src.models.params import ParamSet

WEAK_CONTRACTION = ParamSet(a=-1.0, b=-1.0, c=1.0, d=-0.5, lam=-0.05)
BOUNDED = SimConfig(t_max=20.0, max_events=200)


class TestSampling:
    def test_seeded_and_inside_ball(self):
        spec = SampleSpec(count=40, seed=7)
        first = sample_ball(spec)
        assert [p.as_array().tolist() for p in first] == [p.as_array().tolist() for p in sample_ball(spec)]
        assert all(p.norm() <= spec.radius + 1e-15 for p in first)
        assert [p.z for p in first[3::4]] == [0.0] * 10

    def test_empty(self):
        assert sample_ball(SampleSpec(count=0)) == []

    @pytest.mark.parametrize("changes", [{"radius": 0.0}, {"count": -1}, {"escape_radius": 0.1}])
    def test_invalid(self, changes):
        with pytest.raises(ConfigError):
            SampleSpec(**changes)


class TestCurves:
    def test_image_curves(self, canonical):
        assert upper_curve(canonical, 2.0) == pytest.approx(-9.0)
        assert lower_curve(canonical, 3.0) == pytest.approx(-15.0)

    def test_flight_times(self, canonical):
        assert parabola_flight_time(canonical, 1.0) == pytest.approx(7.0)
        assert axis_flight_time(canonical, -3.0) == pytest.approx(9.0)

    def test_curve_images_hold(self, canonical):
        report = verify_curve_images(canonical, sample_count=50)
        assert report.passed
        assert len(report.checks) == 100
        assert report.details["max_residual"] <= 1e-12

    def test_curve_images_simulated(self, canonical):
        report = verify_curve_images(canonical, sample_count=3, simulated=True)
        assert report.passed, report.failures

    def test_curve_images_need_lambda_zero(self, positive_lambda):
        with pytest.raises(RegimeViolation):
            verify_curve_images(positive_lambda)

    def test_strip(self, canonical):
        report = verify_strip_containment(canonical, sample_count=300)
        assert report.passed
        assert report.details["violations"] == 0

    def test_monotone(self, canonical):
        report = verify_monotone_growth(canonical, (0.1, -0.05))
        assert report.passed
        assert report.details["iterations"] == 3
        assert report.details["reached_sliding"]

    @pytest.mark.parametrize("start", [(-0.1, -0.05), (0.1, 0.0)])
    def test_monotone_needs_crossing_start(self, canonical, start):
        with pytest.raises(PreconditionError):
            verify_monotone_growth(canonical, start)

    def test_reach_sliding_report(self, canonical):
        report = verify_reach_sliding(canonical, sample_count=4, config=BOUNDED)
        assert report.details["samples"] == 4
        assert 0.0 <= report.details["fraction"] <= 1.0
        assert report.passed == (report.details["reached"] == 4)

    def test_reach_sliding_widens_the_ball(self, canonical):
        report = verify_reach_sliding(canonical, sample_count=2, config=BOUNDED)
        assert report.details["config"]["ball_radius"] == 1e3
        assert report.details["config"]["t_max"] == 20.0

    @pytest.mark.slow
    def test_reach_sliding_holds(self, canonical):
        report = verify_reach_sliding(canonical, sample_count=500)
        assert report.details["reached"] == 500
        assert report.passed is True

    def test_reach_sliding_needs_nonnegative_lambda(self, negative_lambda):
        with pytest.raises(RegimeViolation):
            verify_reach_sliding(negative_lambda, sample_count=1)


class TestCertificate:
    def test_escape_without_sliding(self, negative_lambda):
        cert = escape_certificate(negative_lambda, 0.2)
        assert cert.p1.xy() == pytest.approx((0.475, -1.97375))
        assert not cert.sliding_used
        assert cert.p2 == cert.p1
        assert cert.p3.y == pytest.approx(witness_height(negative_lambda, 0.2))
        assert cert.p1.y < cert.p3.y
        assert cert.margin == pytest.approx(math.hypot(0.475, 1.97375) - math.hypot(0.2, 0.04))
        assert cert.to_report()["side"] == "V-"

    def test_confirmed_by_simulation(self, negative_lambda):
        check = confirm_by_simulation(escape_certificate(negative_lambda, 0.2))
        assert check.confirmed
        assert check.deviation < 1e-6
        assert check.p2_simulated.xy() == pytest.approx((0.475, -1.97375), abs=1e-7)

    @pytest.mark.parametrize("lam", [0.0, 0.1])
    def test_needs_negative_lambda(self, canonical, lam):
        with pytest.raises(CertificateFailed):
            escape_certificate(canonical.with_lambda(lam))

    def test_needs_positive_start(self, negative_lambda):
        with pytest.raises(CertificateFailed):
            escape_certificate(negative_lambda, 0.0)

    def test_needs_hypotheses(self):
        with pytest.raises(CertificateFailed) as info:
            escape_certificate(WEAK_CONTRACTION)
        assert "H4" in info.value.inequality


class TestStability:
    def test_negative_lambda_is_not_stable(self, negative_lambda):
        result = classify_stability(negative_lambda, SampleSpec(count=2), BOUNDED)
        assert result.verdict is Verdict.NOT_LYAPUNOV_STABLE
        assert result.certificate["simulation"]["confirmed"]
        report = result.to_report()
        assert report["seeds"] == [42]
        assert report["verdict"] == "NotLyapunovStable"
        assert len(report["config_digest"]) == 64

    @pytest.mark.parametrize("lam", [0.0, 0.1])
    def test_nonnegative_lambda_is_never_unstable(self, canonical, lam):
        result = classify_stability(canonical.with_lambda(lam), SampleSpec(count=3), BOUNDED)
        assert result.verdict in (Verdict.ASYMPTOTICALLY_STABLE, Verdict.INCONCLUSIVE)
        assert 0.0 <= result.converged_fraction <= 1.0
        assert result.certificate is None

    def test_sliding_basin_is_stable(self, canonical, monkeypatch):
        # for 0 < lambda the slow sliding eigenline enters the sliding region,
        # and near the origin the region is forward invariant
        starts = [Point3.planar(0.01, 0.005), Point3.planar(0.02, 0.01),
                  Point3.planar(0.005, 0.015), Point3.planar(0.015, 0.001)]
        monkeypatch.setattr(stability, "sample_ball", lambda spec: starts)
        result = classify_stability(canonical.with_lambda(0.05), SampleSpec(count=4), BOUNDED)
        assert result.verdict is Verdict.ASYMPTOTICALLY_STABLE
        assert result.converged_fraction == 1.0
        assert all(s.status in ("Stopped", "PseudoEquilibrium") for s in result.samples)
        assert result.to_report()["verdict"] == "AsymptoticallyStable"

    def test_hypotheses_required(self):
        with pytest.raises(RegimeViolation):
            classify_stability(WEAK_CONTRACTION, SampleSpec(count=1))

    def test_deterministic(self, negative_lambda):
        spec = SampleSpec(count=2, seed=3)
        first = classify_stability(negative_lambda, spec, BOUNDED).to_report()
        second = classify_stability(negative_lambda, spec, BOUNDED).to_report()
        assert first == second


class TestSuites:
    def test_all_skips_inapplicable(self, negative_lambda):
        reports, skipped = run_suites(["all"], negative_lambda, SampleSpec(count=2), BOUNDED)
        assert [r.name for r in reports] == ["theorem-a"]
        assert skipped == ["curve-images", "strip", "monotone", "reach-sliding"]
        assert reports[0].passed

    def test_explicit_suite_is_not_skipped(self, positive_lambda):
        with pytest.raises(RegimeViolation):
            run_suites(["curve-images"], positive_lambda)

    def test_run_single(self, canonical):
        report = run_suite("strip", canonical, samples=50, seed=1)
        assert report.passed
        assert report.details["seed"] == 1

    def test_unknown_suite(self, canonical):
        with pytest.raises(ConfigError):
            run_suite("everything", canonical)
