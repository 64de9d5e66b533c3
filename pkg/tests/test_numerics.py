"""Tests for the finite-difference Jacobian and the damped Newton solver."""

import numpy as np
import pytest

from dclgroupoid.errors import DomainError, EvaluationError, RegularityError, SolverError
from dclgroupoid.numerics import (
    SolverOptions,
    fd_jacobian,
    newton_solve,
    residual_norm,
)


class TestResidualNorm:
    def test_max_norm(self):
        assert residual_norm(np.array([0.5, -2.0, 1.0])) == 2.0

    def test_empty_residual(self):
        assert residual_norm(np.zeros(0)) == 0.0


class TestFdJacobian:
    def test_linear_map_is_exact(self):
        a = np.array([[1.0, 2.0], [-3.0, 0.5], [0.0, 4.0]])
        jac = fd_jacobian(lambda x: a @ x, np.array([0.3, -1.2]))
        np.testing.assert_allclose(jac, a, atol=1e-8)

    def test_nonlinear_map(self):
        x = np.array([0.7, 1.3])
        jac = fd_jacobian(lambda z: np.array([z[0] * z[1], np.sin(z[0])]), x)
        expected = np.array([[x[1], x[0]], [np.cos(x[0]), 0.0]])
        np.testing.assert_allclose(jac, expected, atol=1e-7)


class TestNewtonSolve:
    def test_square_root(self):
        result = newton_solve(lambda x: x * x - 2.0, np.array([1.0]))
        assert result.x[0] == pytest.approx(np.sqrt(2.0), abs=1e-10)
        assert result.residual < 1e-10
        assert result.iterations > 0

    def test_already_converged(self):
        result = newton_solve(lambda x: x - 3.0, np.array([3.0]))
        assert result.iterations == 0
        assert result.residual == 0.0

    def test_linear_system_in_one_step(self):
        a = np.array([[2.0, 1.0], [1.0, 3.0]])
        b = np.array([1.0, 2.0])
        result = newton_solve(lambda x: a @ x - b, np.zeros(2))
        np.testing.assert_allclose(result.x, np.linalg.solve(a, b), atol=1e-10)
        assert result.iterations <= 2

    def test_singular_jacobian_raises_regularity_error(self):
        def fun(x):
            s = x[0] + x[1] - 1.0
            return np.array([s, 2.0 * s])

        with pytest.raises(RegularityError) as exc:
            newton_solve(fun, np.zeros(2))
        assert exc.value.condition > 1e12
        assert exc.value.residual == pytest.approx(2.0)

    def test_no_convergence_raises_solver_error(self):
        with pytest.raises(SolverError) as exc:
            newton_solve(lambda x: np.exp(x), np.array([0.0]), SolverOptions(max_iter=5))
        assert not isinstance(exc.value, RegularityError)
        assert exc.value.residual > 0.0
        assert "did not converge" in str(exc.value)

    def test_non_finite_residual(self):
        with pytest.raises(EvaluationError):
            newton_solve(lambda x: np.array([np.nan]), np.array([0.0]))

    def test_tolerance_option(self):
        loose = newton_solve(lambda x: x * x - 2.0, np.array([1.0]), SolverOptions(tol=1e-3))
        tight = newton_solve(lambda x: x * x - 2.0, np.array([1.0]), SolverOptions(tol=1e-12))
        assert loose.iterations <= tight.iterations
        assert loose.residual < 1e-3


def _guarded_log(x):
    if x[0] <= 0.0:
        raise DomainError("log of a non-positive number")
    return np.log(x)


class TestNewtonDomainBackoff:
    def test_halves_back_into_domain(self):
        # full step from 5 lands at 5 - 5 log 5 < 0
        result = newton_solve(_guarded_log, np.array([5.0]))
        assert result.x[0] == pytest.approx(1.0, abs=1e-10)

    def test_non_finite_trial_is_halved(self):
        result = newton_solve(lambda x: np.log(x) if x[0] > 0 else np.array([np.nan]),
                              np.array([5.0]))
        assert result.x[0] == pytest.approx(1.0, abs=1e-10)

    def test_no_admissible_halving(self):
        def fun(x):
            if x[0] > 1e-3:
                raise DomainError("outside")
            return x - 1.0

        with pytest.raises(SolverError, match="no admissible Newton step") as exc:
            newton_solve(fun, np.array([0.0]))
        assert not isinstance(exc.value, RegularityError)
        assert exc.value.residual == pytest.approx(1.0)

    def test_start_outside_domain_still_raises(self):
        with pytest.raises(DomainError):
            newton_solve(_guarded_log, np.array([-1.0]))
