import numpy as np
import pytest

from polesnake import (
    BackboneCurve,
    DegenerateCurve,
    GaitParams,
    InvalidParameter,
    fit_t_span,
    helix_point,
    resample_by_arclength,
    sample_backbone,
)

from conftest import circle_params, helix_params


class TestHelixPoint:
    def test_unit_circle_at_zero(self):
        p = circle_params()
        np.testing.assert_allclose(helix_point(p, 0.0), [1.0, 0.0, 0.0], atol=1e-15)

    def test_unit_circle_quarter_turn(self):
        p = circle_params()
        np.testing.assert_allclose(helix_point(p, np.pi / 2), [0.0, 1.0, 0.0], atol=1e-15)

    def test_modulated_helix_full_turn(self):
        # z = 0.5*2pi + 0.1*sin(3*2pi) = pi, by direct scalar substitution
        p = GaitParams(radius=1.0, pitch=0.5, amp_long=0.1, freq_shape=3.0,
                       freq_time=0.0, t_min=0.0, t_max=4.0 * np.pi)
        np.testing.assert_allclose(
            helix_point(p, 2.0 * np.pi, h=0.0), [1.0, 0.0, np.pi], atol=1e-12
        )

    def test_full_form_with_zero_radial_matches_simplified(self):
        rng = np.random.default_rng(7)
        p = GaitParams(radius=0.8, pitch=0.3, amp_radial=0.0, freq_radial=2.0,
                       amp_long=0.05, freq_shape=1.7, freq_time=0.9,
                       t_min=0.0, t_max=30.0)
        for _ in range(100):
            t = rng.uniform(-10.0, 30.0)
            h = rng.uniform(0.0, 22.0)
            np.testing.assert_allclose(
                helix_point(p, t, h, simplified=False),
                helix_point(p, t, h, simplified=True),
                rtol=0.0, atol=1e-15,
            )

    def test_radial_modulation_changes_full_form(self):
        p = GaitParams(radius=1.0, pitch=0.1, amp_radial=0.2, freq_radial=3.0)
        full = helix_point(p, 1.0, simplified=False)
        simple = helix_point(p, 1.0, simplified=True)
        assert np.linalg.norm(full[:2]) != pytest.approx(np.linalg.norm(simple[:2]))

    def test_vectorized_evaluation(self):
        p = helix_params()
        t = np.linspace(0.0, 1.0, 7)
        pts = helix_point(p, t)
        assert pts.shape == (7, 3)
        np.testing.assert_allclose(pts[3], helix_point(p, t[3]))


class TestGaitParamsValidation:
    def test_rejects_nonpositive_radius(self):
        with pytest.raises(InvalidParameter, match="radius"):
            GaitParams(radius=0.0, pitch=0.1)

    def test_rejects_nonpositive_period(self):
        with pytest.raises(InvalidParameter, match="period"):
            GaitParams(radius=1.0, pitch=0.1, period=-1.0)

    def test_rejects_degenerate_t_span(self):
        with pytest.raises(InvalidParameter, match="t_max"):
            GaitParams(radius=1.0, pitch=0.1, t_min=1.0, t_max=1.0)

    def test_rejects_negative_amplitudes(self):
        with pytest.raises(InvalidParameter, match="amp_long"):
            GaitParams(radius=1.0, pitch=0.1, amp_long=-0.1)
        with pytest.raises(InvalidParameter, match="amp_radial"):
            GaitParams(radius=1.0, pitch=0.1, amp_radial=-0.1)

    def test_phase_offset_schedule_is_affine(self):
        p = GaitParams(radius=1.0, pitch=0.1, phi0_init=0.3, phi0_rate=0.5)
        assert p.phase_offset(0.0) == pytest.approx(0.3)
        assert p.phase_offset(2.0) == pytest.approx(1.3)


class TestSampleBackbone:
    def test_rejects_too_few_samples(self):
        with pytest.raises(InvalidParameter, match="n_samples"):
            sample_backbone(circle_params(), n_samples=2)

    def test_circle_circumference(self):
        curve = sample_backbone(circle_params(), n_samples=10001)
        assert curve.length == pytest.approx(2.0 * np.pi, rel=1e-5)

    def test_helix_arc_length(self):
        # analytic length of a constant helix: sqrt(r^2 + p^2) * dt
        curve = sample_backbone(helix_params(r=1.0, p=1.0), n_samples=10001)
        assert curve.length == pytest.approx(2.0 * np.pi * np.sqrt(2.0), rel=1e-5)

    def test_constant_helix_stays_on_cylinder(self):
        curve = sample_backbone(helix_params(r=0.7, p=0.2), n_samples=501)
        radii = np.linalg.norm(curve.points[:, :2], axis=1)
        np.testing.assert_allclose(radii, 0.7, rtol=0.0, atol=1e-12)

    def test_axial_modulation_bound(self):
        rng = np.random.default_rng(3)
        p = GaitParams(radius=1.0, pitch=0.4, amp_long=0.08, freq_shape=2.3,
                       freq_time=1.1, t_min=0.0, t_max=20.0)
        for h in rng.uniform(0.0, 44.0, size=5):
            curve = sample_backbone(p, h=h, n_samples=301)
            t = np.linspace(p.t_min, p.t_max, 301)
            dev = np.abs(curve.points[:, 2] - p.pitch * t)
            assert dev.max() <= p.amp_long + 1e-12

    def test_arclength_refinement_is_monotone(self):
        p = helix_params(r=1.0, p=0.5)
        lengths = [sample_backbone(p, n_samples=n).length for n in (101, 201, 401)]
        assert lengths[0] < lengths[1] < lengths[2]
        assert lengths[2] - lengths[1] < lengths[1] - lengths[0]

    def test_keyframe_time_recorded(self):
        curve = sample_backbone(helix_params(), h=1.25, n_samples=11)
        assert curve.keyframe_time == 1.25


class TestBackboneCurveValidation:
    def test_rejects_nonmonotone_arclength(self):
        pts = np.zeros((4, 3))
        pts[:, 2] = [0.0, 1.0, 2.0, 3.0]
        with pytest.raises(InvalidParameter, match="increasing"):
            BackboneCurve(points=pts, s=np.array([0.0, 1.0, 1.0, 3.0]))

    def test_rejects_arclength_not_starting_at_zero(self):
        pts = np.zeros((4, 3))
        pts[:, 2] = [0.0, 1.0, 2.0, 3.0]
        with pytest.raises(InvalidParameter, match="start at 0"):
            BackboneCurve(points=pts, s=np.array([1.0, 2.0, 3.0, 4.0]))

    def test_rejects_duplicate_points(self):
        pts = np.zeros((4, 3))
        pts[:, 2] = [0.0, 1.0, 1.0, 2.0]
        with pytest.raises(InvalidParameter, match="distinct"):
            BackboneCurve(points=pts, s=np.array([0.0, 1.0, 2.0, 3.0]))


class TestResample:
    def test_idempotent_on_uniform_input(self):
        curve = sample_backbone(helix_params(r=1.0, p=1.0), n_samples=257)
        uniform = resample_by_arclength(curve, 257)
        again = resample_by_arclength(uniform, 257)
        np.testing.assert_allclose(again.points, uniform.points, atol=1e-12)
        np.testing.assert_allclose(again.s, uniform.s, atol=1e-12)

    def test_straight_segment_spacing(self):
        z = np.array([0.0, 0.5, 0.6, 0.9, 1.0])
        pts = np.zeros((5, 3))
        pts[:, 2] = z
        curve = BackboneCurve(points=pts, s=z.copy())
        out = resample_by_arclength(curve, 5)
        np.testing.assert_allclose(out.points[:, 2], [0.0, 0.25, 0.5, 0.75, 1.0], atol=1e-15)

    def test_circle_resample_stays_near_unit_radius(self):
        curve = sample_backbone(circle_params(), n_samples=2001)
        out = resample_by_arclength(curve, 2001)
        radii = np.linalg.norm(out.points[:, :2], axis=1)
        np.testing.assert_allclose(radii, 1.0, rtol=0.0, atol=1e-4)

    def test_total_length_preserved(self):
        curve = sample_backbone(helix_params(r=0.5, p=0.3), n_samples=400)
        out = resample_by_arclength(curve, 97)
        assert out.length == pytest.approx(curve.length, abs=1e-12)

    def test_rejects_too_few_output_points(self):
        curve = sample_backbone(circle_params(), n_samples=16)
        with pytest.raises(InvalidParameter, match="n_out"):
            resample_by_arclength(curve, 3)


class TestFitTSpan:
    def test_solved_span_hits_target_length(self):
        params = GaitParams(radius=0.2, pitch=0.25, amp_long=0.02, freq_shape=1.5,
                            freq_time=2 * np.pi / 22.0, t_min=0.0, t_max=1.0)
        target = 1.9
        solved = fit_t_span(params, target)
        curve = sample_backbone(solved, n_samples=4001)
        assert curve.length == pytest.approx(target, rel=1e-9)

    def test_rejects_nonpositive_target(self):
        with pytest.raises(InvalidParameter, match="target"):
            fit_t_span(helix_params(), -1.0)

    def test_solution_is_deterministic(self):
        params = helix_params(r=0.3, p=0.2)
        a = fit_t_span(params, 2.5).t_max
        b = fit_t_span(params, 2.5).t_max
        assert a == b
