import numpy as np
import pytest

from polesnake import (
    CurvatureProfile,
    DomainTooShort,
    GaitParams,
    InvalidParameter,
    JointLimitExceeded,
    RobotConfig,
    StepError,
    acl_trajectory,
    angle_components,
    bellows_angles,
    keyframe_angles,
    rolling_helix_trajectory,
)
from polesnake.gait import rolling_params


def flat_profile(kappa, tau, robot, pad=1.05, n=4001):
    length = robot.profile_span * pad
    s = np.linspace(0.0, length, n)
    return CurvatureProfile.from_arrays(s, np.full(n, kappa), np.full(n, tau))


def random_profile(rng, robot, n=2001):
    """Smooth positive curvature and bounded torsion from random Fourier sums."""
    length = robot.profile_span * 1.05
    s = np.linspace(0.0, length, n)
    kappa = np.full(n, 0.6)
    tau = np.zeros(n)
    for k in range(1, 4):
        kappa = kappa + rng.uniform(-0.1, 0.1) * np.sin(2 * np.pi * k * s / length + rng.uniform(0, 2 * np.pi))
        tau = tau + rng.uniform(-0.4, 0.4) * np.cos(2 * np.pi * k * s / length + rng.uniform(0, 2 * np.pi))
    return CurvatureProfile.from_arrays(s, np.clip(kappa, 0.05, None), tau)


class TestRobotConfig:
    def test_axis_alternation(self):
        robot = RobotConfig(n_modules=5, first_joint_axis="dorsal")
        assert robot.joint_axes() == ("dorsal", "lateral", "dorsal", "lateral", "dorsal")
        robot = RobotConfig(n_modules=4, first_joint_axis="lateral")
        assert robot.joint_axes() == ("lateral", "dorsal", "lateral", "dorsal")

    def test_validation(self):
        with pytest.raises(InvalidParameter, match="n_modules"):
            RobotConfig(n_modules=1)
        with pytest.raises(InvalidParameter, match="module_length"):
            RobotConfig(module_length=0.0)
        with pytest.raises(InvalidParameter, match="joint_radius"):
            RobotConfig(joint_radius=-0.1)
        with pytest.raises(InvalidParameter, match="first_joint_axis"):
            RobotConfig(first_joint_axis="ventral")

    def test_profile_span(self):
        robot = RobotConfig(n_modules=20, module_length=0.0889)
        assert robot.profile_span == pytest.approx(21 * 0.0889)


class TestBellowsAngles:
    def test_constant_dorsal_curvature(self, small_robot):
        n = 1001
        s = np.linspace(0.0, small_robot.profile_span, n)
        angles = bellows_angles((s, np.full(n, 0.4)), (s, np.zeros(n)), small_robot)
        expect = 2.0 * small_robot.module_length * 0.4
        for idx, axis in enumerate(angles.axes):
            if axis == "dorsal":
                assert angles.angles[idx] == pytest.approx(expect, rel=1e-12)
            else:
                assert angles.angles[idx] == pytest.approx(0.0, abs=1e-15)

    def test_all_zero(self, small_robot):
        n = 101
        s = np.linspace(0.0, small_robot.profile_span, n)
        angles = bellows_angles((s, np.zeros(n)), (s, np.zeros(n)), small_robot)
        np.testing.assert_array_equal(angles.angles, 0.0)

    def test_linear_ramp_first_joint(self):
        # kappa(s) = s over a joint-1 window [0, 1]: integral is 1/2
        robot = RobotConfig(n_modules=3, module_length=0.5)
        n = 20001
        s = np.linspace(0.0, 4 * 0.5, n)
        angles = bellows_angles((s, s.copy()), (s, np.zeros(n)), robot)
        fine = np.linspace(0.0, 1.0, 1000001)
        oracle = np.trapezoid(fine, fine)
        assert angles.angles[0] == pytest.approx(oracle, rel=1e-9)
        assert angles.angles[0] == pytest.approx(0.5, rel=1e-8)

    def test_short_domain_rejected(self, small_robot):
        n = 101
        s = np.linspace(0.0, small_robot.profile_span * 0.9, n)
        with pytest.raises(DomainTooShort):
            bellows_angles((s, np.zeros(n)), (s, np.zeros(n)), small_robot)


class TestKeyframeAngles:
    def test_zero_curvature_any_phase(self, small_robot):
        prof = flat_profile(0.0, 0.9, small_robot)
        for phi in (0.0, 0.4, np.pi, 5.0):
            angles = keyframe_angles(prof, small_robot, phi)
            np.testing.assert_allclose(angles.angles, 0.0, atol=1e-15)

    def test_planar_profile_zero_phase(self, small_robot):
        prof = flat_profile(0.5, 0.0, small_robot)
        angles = keyframe_angles(prof, small_robot, 0.0)
        expect = 2.0 * small_robot.module_length * 0.5
        for idx, axis in enumerate(angles.axes):
            target = expect if axis == "dorsal" else 0.0
            assert angles.angles[idx] == pytest.approx(target, abs=1e-12)

    def test_planar_profile_quarter_phase_swaps_axes(self, small_robot):
        prof = flat_profile(0.5, 0.0, small_robot)
        angles = keyframe_angles(prof, small_robot, np.pi / 2)
        expect = 2.0 * small_robot.module_length * 0.5
        for idx, axis in enumerate(angles.axes):
            target = expect if axis == "lateral" else 0.0
            assert angles.angles[idx] == pytest.approx(target, abs=1e-12)

    def test_phase_periodicity(self, small_robot):
        rng = np.random.default_rng(11)
        prof = random_profile(rng, small_robot)
        for phi in rng.uniform(-3.0, 3.0, size=5):
            a = keyframe_angles(prof, small_robot, phi)
            b = keyframe_angles(prof, small_robot, phi + 2.0 * np.pi)
            np.testing.assert_allclose(a.angles, b.angles, atol=1e-12)

    def test_rotation_identity_norm_invariance(self, small_robot):
        rng = np.random.default_rng(23)
        for _ in range(20):
            prof = random_profile(rng, small_robot)
            d0, l0 = angle_components(prof, small_robot, 0.0)
            norm0 = np.hypot(d0, l0)
            for phi in rng.uniform(0.0, 2.0 * np.pi, size=3):
                d, l = angle_components(prof, small_robot, phi)
                np.testing.assert_allclose(np.hypot(d, l), norm0, atol=1e-10)

    def test_matches_bellows_for_planar_profile(self, small_robot):
        # with zero torsion and zero phase the full formulas reduce to
        # plain curvature integration
        rng = np.random.default_rng(5)
        length = small_robot.profile_span * 1.05
        n = 2001
        s = np.linspace(0.0, length, n)
        kappa = 0.4 + 0.2 * np.sin(2 * np.pi * s / length + 0.3)
        prof = CurvatureProfile.from_arrays(s, kappa, np.zeros(n))
        via_keyframe = keyframe_angles(prof, small_robot, 0.0)
        via_bellows = bellows_angles((s, kappa), (s, np.zeros(n)), small_robot)
        np.testing.assert_allclose(via_keyframe.angles, via_bellows.angles, atol=1e-8)

    def test_joint_limit_is_hard_error(self):
        robot = RobotConfig(n_modules=4, module_length=0.5, joint_limit=0.3)
        prof = flat_profile(0.5, 0.0, robot)  # dorsal angle would be 0.5
        with pytest.raises(JointLimitExceeded) as err:
            keyframe_angles(prof, robot, 0.0)
        assert err.value.joint == 1
        assert err.value.value == pytest.approx(0.5, rel=1e-9)

    def test_short_profile_rejected(self, small_robot):
        n = 101
        s = np.linspace(0.0, small_robot.profile_span * 0.5, n)
        prof = CurvatureProfile.from_arrays(s, np.zeros(n), np.zeros(n))
        with pytest.raises(DomainTooShort):
            keyframe_angles(prof, small_robot, 0.0)


def quick_params(**kw):
    base = dict(radius=0.2, pitch=0.25, amp_long=0.02, freq_shape=1.5,
                freq_time=2 * np.pi / 22.0, period=22.0, t_min=0.0, t_max=6.1)
    base.update(kw)
    return GaitParams(**base)


class TestTrajectories:
    def test_static_when_no_time_dependence(self):
        params = quick_params(amp_long=0.0, phi0_rate=0.0)
        robot = RobotConfig()
        traj = acl_trajectory(params, robot, n_steps=6, cycles=1,
                              n_curve_samples=1001, n_profile_samples=301)
        first = traj.steps[0][1].angles
        for _, angles in traj.steps[1:]:
            np.testing.assert_array_equal(angles.angles, first)

    def test_grid_shape_and_limits(self):
        params = quick_params()
        robot = RobotConfig()
        traj = acl_trajectory(params, robot, n_steps=220, cycles=1)
        assert len(traj) == 220
        grid = np.array([a.angles for _, a in traj.steps])
        assert grid.shape == (220, 20)
        assert np.all(np.isfinite(grid))
        assert np.abs(grid).max() <= robot.joint_limit

    def test_periodic_extension(self):
        params = quick_params()
        robot = RobotConfig()
        traj = acl_trajectory(params, robot, n_steps=8, cycles=2,
                              n_curve_samples=1001, n_profile_samples=301)
        assert len(traj) == 16
        for j in range(8):
            np.testing.assert_array_equal(
                traj.steps[j][1].angles, traj.steps[j + 8][1].angles
            )
        times = [t for t, _ in traj.steps]
        np.testing.assert_allclose(np.diff(times), params.period / 8, atol=1e-12)

    def test_step_errors_carry_index(self):
        # a joint limit low enough to fail on the very first keyframe
        params = quick_params()
        robot = RobotConfig(joint_limit=0.01)
        with pytest.raises(StepError) as err:
            acl_trajectory(params, robot, n_steps=4, cycles=1,
                           n_curve_samples=1001, n_profile_samples=301)
        assert err.value.step == 0

    def test_rolling_ignores_axial_modulation(self):
        robot = RobotConfig()
        a = rolling_helix_trajectory(quick_params(amp_long=0.02), robot, n_steps=5,
                                     cycles=1, n_curve_samples=1001, n_profile_samples=301)
        b = rolling_helix_trajectory(quick_params(amp_long=0.0), robot, n_steps=5,
                                     cycles=1, n_curve_samples=1001, n_profile_samples=301)
        for (_, x), (_, y) in zip(a.steps, b.steps):
            np.testing.assert_array_equal(x.angles, y.angles)

    def test_rolling_equals_acl_with_same_schedule(self):
        robot = RobotConfig()
        params = quick_params(amp_long=0.03)
        rolled = rolling_helix_trajectory(params, robot, n_steps=5, cycles=1,
                                          n_curve_samples=1001, n_profile_samples=301)
        explicit = acl_trajectory(rolling_params(params), robot, n_steps=5, cycles=1,
                                  n_curve_samples=1001, n_profile_samples=301)
        for (ta, a), (tb, b) in zip(rolled.steps, explicit.steps):
            assert ta == tb
            np.testing.assert_array_equal(a.angles, b.angles)

    def test_rolling_phase_wraps_after_full_cycle(self):
        params = quick_params()
        rp = rolling_params(params)
        assert rp.phase_offset(rp.period) == pytest.approx(
            rp.phase_offset(0.0) + 2.0 * np.pi
        )

    def test_rolling_norm_invariant_across_steps(self, small_robot):
        # rolling only rotates the (dorsal, lateral) pair, so the
        # per-joint norm sqrt(C^2 + S^2) cannot change from step to step
        params = quick_params()
        rp = rolling_params(params)
        robot = RobotConfig()
        from polesnake import frenet_profile, resample_by_arclength, sample_backbone

        curve = resample_by_arclength(sample_backbone(rp, 0.0, 2001), 801)
        prof = frenet_profile(curve)
        norms = []
        for h in np.linspace(0.0, rp.period, 7):
            d, l = angle_components(prof, robot, rp.phase_offset(h))
            norms.append(np.hypot(d, l))
        for norm in norms[1:]:
            np.testing.assert_allclose(norm, norms[0], atol=1e-10)
