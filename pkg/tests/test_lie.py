"""Tests for SO(3) primitives, retractions and the coadjoint action."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dclgroupoid.errors import DomainError
from dclgroupoid.lie import (
    E1,
    E2,
    E3,
    RetractionKind,
    ad_matrix,
    adjoint,
    cay,
    cay_inv,
    coadjoint,
    dtau_inv_fd,
    exp_so3,
    hat,
    log_so3,
    make_retraction,
    orthogonality_defect,
    pairing,
    vee,
)
from dclgroupoid.lie.retraction import EXP_SERIES_RADIUS, dtau_inv_fd_matrix
from dclgroupoid.lie.so3 import rotation_angle, skew_vee

coordinate = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
small_vectors = st.tuples(coordinate, coordinate, coordinate).map(np.array)


class TestHatVee:
    def test_basis(self):
        np.testing.assert_array_equal(hat(np.array([1.0, 0.0, 0.0])), E1)
        np.testing.assert_array_equal(hat(np.array([0.0, 1.0, 0.0])), E2)
        np.testing.assert_array_equal(hat(np.array([0.0, 0.0, 1.0])), E3)

    def test_hat_is_cross_product(self):
        a, b = np.array([1.0, 2.0, 3.0]), np.array([-0.5, 0.0, 4.0])
        np.testing.assert_allclose(hat(a) @ b, np.cross(a, b))
        np.testing.assert_allclose(ad_matrix(a) @ b, np.cross(a, b))

    @given(small_vectors)
    def test_vee_inverts_hat(self, omega):
        np.testing.assert_allclose(vee(hat(omega)), omega)

    def test_vee_rejects_symmetric_part(self):
        with pytest.raises(DomainError, match="antisymmetric"):
            vee(np.eye(3))

    def test_vee_rejects_wrong_shape(self):
        with pytest.raises(DomainError, match="3x3"):
            vee(np.zeros((2, 2)))

    def test_skew_vee_drops_symmetric_part(self):
        m = hat(np.array([0.1, 0.2, 0.3])) + np.diag([1.0, 2.0, 3.0])
        np.testing.assert_allclose(skew_vee(m), [0.1, 0.2, 0.3])


class TestExpLog:
    @given(small_vectors)
    def test_exp_is_a_rotation(self, omega):
        g = exp_so3(omega)
        assert orthogonality_defect(g) < 1e-12
        assert np.linalg.det(g) == pytest.approx(1.0)

    @given(small_vectors)
    def test_log_inverts_exp(self, omega):
        np.testing.assert_allclose(log_so3(exp_so3(omega)), omega, atol=1e-10)

    def test_matches_matrix_exponential(self):
        import scipy.linalg

        omega = np.array([0.3, -1.1, 0.7])
        np.testing.assert_allclose(exp_so3(omega), scipy.linalg.expm(hat(omega)), atol=1e-12)

    def test_rotation_angle(self):
        assert rotation_angle(exp_so3(np.array([0.0, 0.0, 0.5]))) == pytest.approx(0.5)

    def test_log_refuses_half_turn(self):
        with pytest.raises(DomainError, match="half turn"):
            log_so3(np.diag([1.0, -1.0, -1.0]))


class TestCayley:
    @given(small_vectors)
    def test_cay_is_a_rotation(self, omega):
        g = cay(hat(omega))
        assert orthogonality_defect(g) < 1e-12

    @given(small_vectors)
    def test_cay_inv_inverts_cay(self, omega):
        np.testing.assert_allclose(cay_inv(cay(hat(omega))), hat(omega), atol=1e-10)

    def test_cay_inv_singular_at_half_turn(self):
        with pytest.raises(DomainError, match="singular"):
            cay_inv(np.diag([1.0, -1.0, -1.0]))


class TestRetraction:
    @pytest.mark.parametrize("kind", list(RetractionKind))
    def test_tau_inv_inverts_tau(self, kind):
        ret = make_retraction(kind)
        xi = np.array([0.2, -0.4, 0.1])
        np.testing.assert_allclose(ret.tau_inv(ret.tau(xi)), xi, atol=1e-12)

    @pytest.mark.parametrize("kind", list(RetractionKind))
    def test_tau_inv_accepts_flat_elements(self, kind):
        ret = make_retraction(kind)
        xi = np.array([0.2, -0.4, 0.1])
        np.testing.assert_allclose(ret.tau_inv(ret.tau(xi).ravel()), xi, atol=1e-12)

    @pytest.mark.parametrize("kind", list(RetractionKind))
    def test_dtau_inv_at_zero_is_identity(self, kind):
        np.testing.assert_allclose(make_retraction(kind).dtau_inv_matrix(np.zeros(3)), np.eye(3))

    @pytest.mark.parametrize("kind", ["cay", "exp"])
    @settings(max_examples=25, deadline=None)
    @given(xi=small_vectors)
    def test_dtau_inv_matches_oracle(self, kind, xi):
        ret = make_retraction(kind)
        xi = 0.8 * xi / max(1.0, float(np.linalg.norm(xi)))
        np.testing.assert_allclose(
            ret.dtau_inv_matrix(xi), dtau_inv_fd_matrix(ret, xi), atol=1e-6
        )

    def test_cayley_closed_form(self):
        # (I + xi/2) eta (I - xi/2) = eta + xi x eta / 2 + (xi . eta) xi / 4
        ret = make_retraction("cay")
        xi, eta = np.array([0.3, 0.1, -0.2]), np.array([1.0, -2.0, 0.5])
        expected = eta + 0.5 * np.cross(xi, eta) + 0.25 * xi * float(xi @ eta)
        np.testing.assert_allclose(ret.dtau_inv(xi, eta), expected, atol=1e-12)

    def test_exp_outside_series_radius_uses_oracle(self):
        ret = make_retraction("exp")
        xi = np.array([1.2, 0.0, 0.5])
        assert np.linalg.norm(xi) > EXP_SERIES_RADIUS
        np.testing.assert_allclose(ret.dtau_inv_matrix(xi), dtau_inv_fd_matrix(ret, xi))

    def test_dtau_inv_fd_vector(self):
        ret = make_retraction("exp")
        xi, eta = np.array([0.1, 0.2, 0.3]), np.array([1.0, 0.0, 0.0])
        np.testing.assert_allclose(dtau_inv_fd(ret, xi, eta), ret.dtau_inv(xi, eta), atol=1e-6)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            make_retraction("quaternion")


class TestCoadjoint:
    def test_adjoint_is_rotation_of_vector(self):
        g = exp_so3(np.array([0.2, 0.5, -0.3]))
        eta = np.array([1.0, 2.0, 3.0])
        np.testing.assert_allclose(adjoint(g, eta), g @ eta, atol=1e-12)

    def test_coadjoint_duality(self):
        g = cay(hat(np.array([0.4, -0.1, 0.2])))
        mu, xi = np.array([0.5, -1.0, 2.0]), np.array([0.3, 0.3, -0.7])
        assert pairing(coadjoint(g, mu), xi) == pytest.approx(pairing(mu, adjoint(g, xi)))

    def test_coadjoint_preserves_norm(self):
        g = exp_so3(np.array([1.0, -0.5, 0.25]))
        mu = np.array([0.5, -1.0, 2.0])
        assert np.linalg.norm(coadjoint(g, mu)) == pytest.approx(np.linalg.norm(mu))
