"""Tests for variations, Noether momenta, morphism reduction and the check suites."""

import dataclasses

import numpy as np
import pytest

from dclgroupoid.dynamics import run, sigma_points_from_pairs
from dclgroupoid.errors import ConfigurationError
from dclgroupoid.lie import make_retraction
from dclgroupoid.lie.control import rigid_body_problem
from dclgroupoid.systems import (
    AdaptiveStep,
    FixedStep,
    free_particle,
    harmonic_oscillator,
    lift_point,
    optimal_control_system,
    pair_point,
    time_extended,
)
from dclgroupoid.systems.pair import pinned_system
from dclgroupoid.verify import (
    SUITE_NAMES,
    Assertion,
    NoetherCandidate,
    SuiteOptions,
    Verdict,
    action_criticality,
    check_morphism,
    identity_morphism,
    is_symmetry,
    max_action_criticality,
    momentum,
    momentum_drift,
    morphism_reduction_check,
    noether_check,
    noether_defect,
    pullback_defect,
    run_suite,
    time_projection_morphism,
    variation_space,
)
from dclgroupoid.verify.suites import perturbed


def _translation(dim, axis=0, gauge=None):
    e = np.zeros(dim)
    e[axis] = 1.0
    if gauge is None:
        return NoetherCandidate(name=f"e{axis + 1}", section=lambda q: e)
    return NoetherCandidate(name=f"e{axis + 1}", section=lambda q: e, gauge=gauge)


class TestAssertion:
    def test_below(self):
        assert Assertion.below("s", "n", 1e-12, 1e-10).passed
        assert not Assertion.below("s", "n", 1e-8, 1e-10).passed
        assert not Assertion.below("s", "n", float("nan"), 1e-10).passed
        assert not Assertion.below("s", "n", float("inf"), 1e-10).passed

    def test_above(self):
        assert Assertion.above("s", "n", 0.5, 1e-3).passed
        assert not Assertion.above("s", "n", 1e-6, 1e-3).passed


class TestVariationSpace:
    def test_unconstrained_is_everything(self):
        system = free_particle(n=2)
        space = variation_space(system, np.zeros(4), np.zeros(4))
        assert space.dim == 2
        np.testing.assert_array_equal(space.basis_matrix, np.eye(2))

    def test_pinned_abscissa(self):
        system = pinned_system()
        g1 = np.array([1.0, 0.0, 0.0, 1.0])
        g2 = np.array([0.0, 1.0, 0.0, 2.0])
        space = variation_space(system, g1, g2)
        assert space.dim == 1
        np.testing.assert_allclose(np.abs(space.basis_matrix[:, 0]), [0.0, 1.0], atol=1e-12)
        np.testing.assert_array_equal(space.base, [0.0, 1.0])

    def test_pendulum_keeps_the_tangent_direction(self, pendulum, pendulum_start):
        g2 = np.array([*pendulum_start.g[2:], 0.0, -1.0])
        space = variation_space(pendulum, pendulum_start.g, g2)
        assert space.dim == 1
        q = pendulum_start.g[2:]
        assert abs(float(space.basis_matrix[:, 0] @ q)) < 1e-12


class TestActionCriticality:
    def test_del_solution_is_critical(self, rail, rail_start):
        trajectory = run(rail, rail_start, 20)
        assert max_action_criticality(rail, trajectory) < 1e-8

    def test_oscillator_solution_is_critical(self, oscillator, oscillator_start):
        trajectory = run(oscillator, oscillator_start, 20)
        assert max_action_criticality(oscillator, trajectory) < 1e-8

    def test_perturbed_trajectory_is_not(self, oscillator, oscillator_start):
        trajectory = run(oscillator, oscillator_start, 10)
        shifted = perturbed(oscillator, trajectory, 5)
        assert action_criticality(oscillator, shifted, 4) > 1e-5
        assert action_criticality(oscillator, shifted, 1) < 1e-8

    def test_single_point(self, oscillator, oscillator_start):
        assert max_action_criticality(oscillator, run(oscillator, oscillator_start, 1)) == 0.0


class TestNoether:
    def test_free_particle_translation(self, rng):
        system = free_particle(h=1.0, n=2)
        points = sigma_points_from_pairs(system, [rng.normal(size=2) for _ in range(20)])
        assert noether_check(system, _translation(2), points) < 1e-12
        assert is_symmetry(system, _translation(2, axis=1), points)

    def test_rail_translation_with_any_multiplier(self, rail, rail_start):
        p = dataclasses.replace(rail_start, lam=np.array([0.7]))
        assert noether_defect(rail, _translation(2), p) < 1e-12

    def test_rail_vertical_is_not_a_symmetry(self, rail, rail_start):
        assert not is_symmetry(rail, _translation(2, axis=1), [rail_start])

    def test_oscillator_translation_is_not_a_symmetry(self, oscillator, oscillator_start):
        # the gap is h omega^2 (q0 + q1) / 2
        expected = 0.1 * 0.5 * (1.0 + np.cos(0.1))
        defect = noether_defect(oscillator, _translation(1), oscillator_start)
        assert defect == pytest.approx(expected, rel=1e-6)

    def test_gauge_term(self):
        system = free_particle(h=1.0, n=2)
        p = pair_point(system, (0.0, 0.0), (0.3, -0.2))
        candidate = _translation(2, gauge=lambda q: float(q[0]))
        assert noether_defect(system, candidate, p) == pytest.approx(0.3)

    def test_momentum(self):
        system = free_particle(h=1.0, n=2)
        p = pair_point(system, (0.0, 0.0), (0.3, -0.2))
        assert momentum(system, _translation(2), p) == pytest.approx(0.3)
        assert momentum(system, _translation(2, axis=1), p) == pytest.approx(-0.2)

    def test_rail_momentum_drift(self, rail, rail_start):
        trajectory = run(rail, rail_start, 50)
        assert momentum_drift(rail, _translation(2), trajectory) < 1e-8

    def test_oscillator_momentum_drifts(self, oscillator, oscillator_start):
        trajectory = run(oscillator, oscillator_start, 50)
        assert momentum_drift(oscillator, _translation(1), trajectory) > 1e-3

    def test_no_samples(self, rail):
        assert noether_check(rail, _translation(2), []) == 0.0


class TestReduction:
    def test_time_projection_lift_solves_extended_dynamics(self, rail, rail_start):
        reduced = run(rail, rail_start, 20)
        tsys = time_extended(rail, FixedStep(0.1))
        result = morphism_reduction_check(
            time_projection_morphism(tsys), tsys.system, rail, reduced
        )
        assert result.verdict is Verdict.PASS
        assert result.max_residual < 1e-9
        assert result.max_pullback_defect < 1e-6
        assert result.details == []

    def test_missing_lift_is_inconclusive(self, rail, rail_start):
        tsys = time_extended(rail, FixedStep(0.1))
        morphism = dataclasses.replace(time_projection_morphism(tsys), lift=None)
        result = morphism_reduction_check(morphism, tsys.system, rail, run(rail, rail_start, 3))
        assert result.verdict is Verdict.INCONCLUSIVE
        assert "no lift" in result.details[0]
        assert np.isnan(result.max_residual)

    def test_failing_lift_is_inconclusive(self, rail, rail_start):
        def lift(points):
            raise ValueError("cannot lift")

        tsys = time_extended(rail, FixedStep(0.1))
        morphism = dataclasses.replace(time_projection_morphism(tsys), lift=lift)
        result = morphism_reduction_check(morphism, tsys.system, rail, run(rail, rail_start, 3))
        assert result.verdict is Verdict.INCONCLUSIVE
        assert "lift failed" in result.details[0]

    def test_unrelated_lift_is_inconclusive(self, rail, rail_start):
        tsys = time_extended(rail, FixedStep(0.1))

        def lift(points):
            return [lift_point(tsys, p, 0.1 * k, 0.1 * (k + 1), 1.0) for k, p in enumerate(points)]

        morphism = dataclasses.replace(time_projection_morphism(tsys), lift=lift)
        result = morphism_reduction_check(morphism, tsys.system, rail, run(rail, rail_start, 3))
        assert result.verdict is Verdict.INCONCLUSIVE
        assert result.max_pullback_defect > 1e-3

    def test_pullback_defect(self, rail, rail_start):
        tsys = time_extended(rail, FixedStep(0.1))
        morphism = time_projection_morphism(tsys)
        related = lift_point(tsys, rail_start, 0.0, 0.1)
        unrelated = lift_point(tsys, rail_start, 0.0, 0.1, lam_time=1.0)
        assert pullback_defect(morphism, tsys.system, rail, related, rail_start) < 1e-6
        assert pullback_defect(morphism, tsys.system, rail, unrelated, rail_start) > 1e-3

    def test_adaptive_does_not_reduce(self):
        ret = make_retraction("cay")
        problem = rigid_body_problem((1.0, 2.0, 3.0))
        tsys = time_extended(optimal_control_system(problem, ret, 0.1), AdaptiveStep(problem, ret))
        with pytest.raises(ConfigurationError, match="adaptive"):
            time_projection_morphism(tsys)

    def test_morphism_conditions(self):
        inner = free_particle(h=0.1, n=2)
        reduced = run(inner, pair_point(inner, (0.0, 0.0), (0.03, -0.02)), 10)
        tsys = time_extended(inner, FixedStep(0.1))
        morphism = time_projection_morphism(tsys)
        report = check_morphism(
            morphism, tsys.system, inner, morphism.lift(reduced.points), n=50, seed=3
        )
        assert report.samples == 50
        assert set(report.residuals) == {
            "homomorphism", "source", "target", "lagrangian", "constraints",
        }
        assert report.conditions_passed, report.residuals
        assert report.algebroid_residual < 1e-6

    def test_projection_does_not_reflect_the_step_constraint(self):
        inner = free_particle(h=0.1, n=2)
        reduced = run(inner, pair_point(inner, (0.0, 0.0), (0.03, -0.02)), 5)
        tsys = time_extended(inner, FixedStep(0.1))
        morphism = time_projection_morphism(tsys)
        report = check_morphism(
            morphism, tsys.system, inner, morphism.lift(reduced.points), n=50, seed=3
        )
        # random t1 - t0 is off N, and every image lies in N' = G
        assert report.preimage_samples == 50
        assert report.preimage_failures == 50
        assert not report.passed

    def test_identity_reflects_constraints(self, rail, rail_start):
        points = run(rail, rail_start, 5).points
        report = check_morphism(identity_morphism(rail), rail, rail, points, n=50, seed=3)
        assert report.preimage_samples > 40
        assert report.preimage_failures == 0
        assert report.passed, report.residuals

    def test_wrong_algebroid_map_is_detected(self, rail, rail_start):
        tsys = time_extended(rail, FixedStep(0.1))
        morphism = dataclasses.replace(
            time_projection_morphism(tsys), algebroid_map=lambda q: np.eye(3)[:2]
        )
        report = check_morphism(morphism, tsys.system, rail, [], n=10, seed=3)
        assert report.algebroid_residual > 0.5
        assert not report.conditions_passed

    def test_identity_reproduces_residuals(self, oscillator, oscillator_start):
        trajectory = run(oscillator, oscillator_start, 10)
        result = morphism_reduction_check(
            identity_morphism(oscillator), oscillator, oscillator, trajectory
        )
        assert result.verdict is Verdict.PASS
        assert result.max_residual == pytest.approx(trajectory.max_residual, abs=1e-15)


class TestSuites:
    OPTIONS = SuiteOptions(seed=0, samples=40)

    def test_suite_names(self):
        assert SUITE_NAMES[-1] == "all"
        assert set(SUITE_NAMES) == {
            "axioms", "regularity", "noether", "variational", "reduction", "identities", "all",
        }

    def test_unknown_suite(self):
        with pytest.raises(ConfigurationError, match="unknown suite"):
            run_suite("bogus")

    @pytest.mark.parametrize("name", ["axioms", "regularity", "noether", "reduction"])
    def test_fast_suites_pass(self, name):
        assertions = run_suite(name, self.OPTIONS)
        assert assertions
        assert all(a.suite == name for a in assertions)
        failed = [(a.name, a.measured, a.note) for a in assertions if not a.passed]
        assert failed == []

    def test_regularity_negative_control(self):
        assertions = run_suite("regularity", self.OPTIONS)
        control = next(a for a in assertions if a.name == "degenerate kernel is nontrivial")
        assert control.measured >= 1.0

    @pytest.mark.parametrize("samples", [40, 47])
    def test_regularity_covers_requested_samples(self, samples):
        assertions = run_suite("regularity", SuiteOptions(seed=0, samples=samples))
        sampled = next(a for a in assertions if a.name == "sampled points")
        assert sampled.passed
        assert samples <= sampled.measured < samples + 5

    def test_reduction_checks_both_constraint_directions(self):
        assertions = {a.name: a for a in run_suite("reduction", self.OPTIONS)}
        lost = assertions["step constraint is not reflected by the projection"]
        assert lost.passed
        assert lost.measured == 40
        assert assertions["identity reflects the rail constraint"].measured == 0
        assert assertions["algebroid map [rail]"].passed

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["variational", "identities"])
    def test_trajectory_suites_pass(self, name):
        assertions = run_suite(name, self.OPTIONS)
        failed = [(a.name, a.measured, a.note) for a in assertions if not a.passed]
        assert failed == []

    @pytest.mark.slow
    def test_all(self):
        assertions = run_suite("all", SuiteOptions(seed=1, samples=100))
        assert {a.suite for a in assertions} == set(SUITE_NAMES) - {"all"}
        assert all(a.passed for a in assertions)
