"""Tests for invariant vector fields, the anchor and the tangent identities."""

import numpy as np
import pytest

from dclgroupoid.errors import DomainError, EvaluationError
from dclgroupoid.groupoid import (
    GradientMode,
    anchor,
    basis_report,
    directional_derivative,
    group_bisection,
    left_fields,
    left_invariant,
    pair_bisection_through,
    pair_groupoid,
    plate_ball_groupoid,
    right_fields,
    right_invariant,
    so3_groupoid,
    standard_basis,
    tangent_basis,
    tangent_inversion_check,
    tangent_multiplication_check,
    tangent_map,
)
from dclgroupoid.lie import hat


def _name(model):
    return model.name


class TestTangentMap:
    def test_linear_map(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_allclose(
            tangent_map(lambda x: a @ x, np.array([5.0, -1.0]), np.array([1.0, 0.0])),
            [1.0, 3.0],
            atol=1e-8,
        )


class TestDirectionalDerivative:
    def test_finite_difference(self):
        f = lambda g: float(g[0] ** 2 + 3.0 * g[1])  # noqa: E731
        value = directional_derivative(f, np.array([2.0, 0.0]), np.array([1.0, 1.0]))
        assert value == pytest.approx(7.0, abs=1e-6)

    def test_supplied_gradient(self):
        value = directional_derivative(
            lambda g: 0.0,
            np.array([2.0, 0.0]),
            np.array([1.0, 1.0]),
            gradient=lambda g: np.array([4.0, 3.0]),
        )
        assert value == 7.0

    def test_non_finite_field(self):
        with pytest.raises(EvaluationError):
            directional_derivative(lambda g: float("inf"), np.zeros(1), np.ones(1))

    def test_non_finite_gradient(self):
        with pytest.raises(EvaluationError):
            directional_derivative(
                lambda g: 0.0, np.zeros(1), np.ones(1), gradient=lambda g: np.array([np.nan])
            )


class TestInvariantFields:
    def test_pair_left_and_right_fields(self):
        model = pair_groupoid(1)
        g = np.array([0.3, 1.7])
        v = np.array([0.0, 1.0])
        np.testing.assert_array_equal(left_invariant(model, v, g), [0.0, 1.0])
        np.testing.assert_array_equal(right_invariant(model, v, g), [-1.0, 0.0])

    @pytest.mark.parametrize("model", [pair_groupoid(2), plate_ball_groupoid()], ids=_name)
    def test_analytic_matches_finite_difference(self, model, rng):
        g = model.sample(rng, None)
        basis = standard_basis(model)
        fd = basis.with_mode(GradientMode.FINITE_DIFFERENCE)
        np.testing.assert_allclose(
            left_fields(model, basis, g), left_fields(model, fd, g), atol=1e-6
        )
        np.testing.assert_allclose(
            right_fields(model, basis, g), right_fields(model, fd, g), atol=1e-6
        )

    def test_so3_fields(self, rng):
        model = so3_groupoid("cay")
        g = model.sample(rng, None)
        v = hat(np.array([0.0, 0.0, 1.0])).ravel()
        rot = g.reshape(3, 3)
        np.testing.assert_allclose(
            left_invariant(model, v, g, analytic=False), (rot @ v.reshape(3, 3)).ravel(), atol=1e-6
        )
        np.testing.assert_allclose(
            right_invariant(model, v, g, analytic=False), (v.reshape(3, 3) @ rot).ravel(), atol=1e-6
        )

    def test_wrong_base_point(self):
        model = pair_groupoid(1)
        g = np.array([0.0, 1.0])
        with pytest.raises(DomainError, match="wrong point"):
            left_invariant(model, np.array([0.0, 1.0]), g, base=np.array([0.0]))
        with pytest.raises(DomainError):
            right_invariant(model, np.array([0.0, 1.0]), g, base=np.array([1.0]))

    def test_fields_are_alpha_and_beta_vertical(self, rng):
        model = pair_groupoid(2)
        g = model.sample(rng, None)
        basis = standard_basis(model)
        left = left_fields(model, basis, g)
        right = right_fields(model, basis, g)
        # left fields fix the source, right fields fix the target
        np.testing.assert_array_equal(left[:2], 0.0)
        np.testing.assert_array_equal(right[2:], 0.0)


class TestAnchorAndBases:
    def test_pair_anchor_is_identity(self):
        model = pair_groupoid(3)
        rho = anchor(standard_basis(model), model, np.array([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(rho, np.eye(3), atol=1e-8)

    def test_group_anchor_is_empty(self):
        model = so3_groupoid("cay")
        assert anchor(standard_basis(model), model, np.zeros(0)).shape == (0, 3)

    def test_basis_report(self):
        model = plate_ball_groupoid()
        vertical, sigma_min = basis_report(model, standard_basis(model), np.array([0.5, -0.5]))
        assert vertical < 1e-8
        assert sigma_min > 0.1

    def test_tangent_basis(self, rng):
        model = pair_groupoid(2)
        np.testing.assert_allclose(tangent_basis(model, rng.normal(size=4)), np.eye(4), atol=1e-8)
        so3 = so3_groupoid("exp")
        assert tangent_basis(so3, so3.sample(rng, None)).shape == (9, 3)


class TestTangentIdentities:
    @pytest.mark.parametrize(
        "model", [pair_groupoid(2), so3_groupoid("cay"), plate_ball_groupoid()], ids=_name
    )
    def test_inversion(self, model, rng):
        q = rng.normal(size=model.dim_q)
        v = model.algebroid_frame(q) @ rng.normal(size=model.n_a)
        assert tangent_inversion_check(model, q, v) < 1e-6

    def test_pair_multiplication(self, rng):
        model = pair_groupoid(2)
        a, b, c = (rng.normal(size=2) for _ in range(3))
        g1, g2 = np.concatenate([a, b]), np.concatenate([b, c])
        va, vb, vc = (rng.normal(size=2) for _ in range(3))
        b1 = pair_bisection_through(g1, np.array([[1.2, 0.1], [0.3, 0.9]]))
        b2 = pair_bisection_through(g2, np.array([[0.8, -0.2], [0.0, 1.1]]))
        defect = tangent_multiplication_check(
            model, g1, g2, np.concatenate([va, vb]), np.concatenate([vb, vc]), b1, b2
        )
        assert defect < 1e-5

    def test_group_multiplication(self, rng):
        model = so3_groupoid("cay")
        g1, g2 = model.sample(rng, None), model.sample(rng, None)
        v1 = (g1.reshape(3, 3) @ hat(np.array([0.1, 0.2, 0.3]))).ravel()
        v2 = (g2.reshape(3, 3) @ hat(np.array([-0.3, 0.0, 0.5]))).ravel()
        defect = tangent_multiplication_check(
            model, g1, g2, v1, v2, group_bisection(g1), group_bisection(g2)
        )
        assert defect < 1e-5

    def test_bisection_must_pass_through_element(self):
        model = pair_groupoid(1)
        g1, g2 = np.array([0.0, 1.0]), np.array([1.0, 2.0])
        wrong = pair_bisection_through(np.array([5.0, 5.0]), np.eye(1))
        good = pair_bisection_through(g2, np.eye(1))
        with pytest.raises(DomainError, match="first bisection"):
            tangent_multiplication_check(
                model, g1, g2, np.ones(2), np.ones(2), wrong, good
            )

    def test_tangent_vectors_must_be_composable(self):
        model = pair_groupoid(1)
        g1, g2 = np.array([0.0, 1.0]), np.array([1.0, 2.0])
        b1 = pair_bisection_through(g1, np.eye(1))
        b2 = pair_bisection_through(g2, np.eye(1))
        with pytest.raises(DomainError, match="not composable"):
            tangent_multiplication_check(
                model, g1, g2, np.array([0.0, 1.0]), np.array([0.0, 1.0]), b1, b2
            )
