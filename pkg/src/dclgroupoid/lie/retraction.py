"""Retractions tau: so(3) -> SO(3) and their left-trivialized inverse tangents."""

from __future__ import annotations

from dataclasses import dataclass
from enum import StrEnum
from typing import Final

import numpy as np
import scipy.linalg

from .so3 import SO3_BASIS, Matrix, Vector, cay, cay_inv, exp_so3, hat, log_so3, skew_vee

# Bernoulli coefficients B_k / k! of dexp^-1 = sum_k B_k/k! (-ad)^k, even k >= 2
_DEXPINV_EVEN_TERMS: Final[tuple[tuple[int, float], ...]] = (
    (2, 1.0 / 12.0),
    (4, -1.0 / 720.0),
    (6, 1.0 / 30240.0),
    (8, -1.0 / 1209600.0),
)
# Beyond this norm the truncated series is replaced by the finite-difference oracle
EXP_SERIES_RADIUS: Final[float] = 1.0


class RetractionKind(StrEnum):
    """Supported retractions."""

    EXP = "exp"
    CAY = "cay"


@dataclass(frozen=True)
class Retraction:
    """Local diffeomorphism tau from so(3) coordinates to SO(3)."""

    kind: RetractionKind

    def tau(self, xi: Vector) -> Matrix:
        """tau(xi) for xi in so(3) coordinates."""
        if self.kind is RetractionKind.EXP:
            return exp_so3(xi)
        return cay(hat(xi))

    def tau_inv(self, g: Matrix) -> Vector:
        """Local inverse of tau in so(3) coordinates."""
        g = np.asarray(g, dtype=float).reshape(3, 3)
        if self.kind is RetractionKind.EXP:
            return log_so3(g)
        return skew_vee(cay_inv(g))

    def dtau_inv_matrix(self, xi: Vector) -> Matrix:
        """Coordinate matrix of the left-trivialized dtau^-1 at xi."""
        xi = np.asarray(xi, dtype=float)
        if self.kind is RetractionKind.CAY:
            x = hat(xi)
            eye = np.eye(3)
            columns = [skew_vee((eye + 0.5 * x) @ e @ (eye - 0.5 * x)) for e in SO3_BASIS]
            return np.column_stack(columns)

        if float(np.linalg.norm(xi)) >= EXP_SERIES_RADIUS:
            return dtau_inv_fd_matrix(self, xi)
        ad = hat(xi)
        ad2 = ad @ ad
        result = np.eye(3) + 0.5 * ad
        power = np.eye(3)
        for _order, coeff in _DEXPINV_EVEN_TERMS:
            power = power @ ad2
            result = result + coeff * power
        return result

    def dtau_inv(self, xi: Vector, eta: Vector) -> Vector:
        """dtau^-1_xi(eta) in so(3) coordinates."""
        return self.dtau_inv_matrix(xi) @ np.asarray(eta, dtype=float)


def make_retraction(kind: str | RetractionKind) -> Retraction:
    """Retraction from its name ("exp" or "cay")."""
    return Retraction(RetractionKind(kind))


def dtau_fd_matrix(ret: Retraction, xi: Vector) -> Matrix:
    """Left-trivialized tangent dtau_xi from T_xi tau = T ell_tau(xi) o dtau_xi, by differences."""
    xi = np.asarray(xi, dtype=float)
    delta = 1e-6 * max(1.0, float(np.linalg.norm(xi)))
    g = ret.tau(xi)
    columns = []
    for j in range(3):
        e = np.zeros(3)
        e[j] = delta
        dg = (ret.tau(xi + e) - ret.tau(xi - e)) / (2.0 * delta)
        columns.append(skew_vee(scipy.linalg.solve(g, dg)))
    return np.column_stack(columns)


def dtau_inv_fd_matrix(ret: Retraction, xi: Vector) -> Matrix:
    """Finite-difference oracle for the dtau^-1 matrix."""
    return scipy.linalg.inv(dtau_fd_matrix(ret, xi))


def dtau_inv_fd(ret: Retraction, xi: Vector, eta: Vector) -> Vector:
    """Finite-difference oracle for dtau^-1_xi(eta)."""
    return dtau_inv_fd_matrix(ret, xi) @ np.asarray(eta, dtype=float)
