"""SO(3) primitives: hat/vee, Rodrigues exp/log and the Cayley map."""

from __future__ import annotations

from typing import Final

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from ..errors import DomainError

Vector = NDArray[np.float64]
Matrix = NDArray[np.float64]

SKEW_TOL: Final[float] = 1e-8
# log is refused this close to a half turn
LOG_ANGLE_MARGIN: Final[float] = 1e-6

E1: Final[Matrix] = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
E2: Final[Matrix] = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
E3: Final[Matrix] = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
SO3_BASIS: Final[tuple[Matrix, Matrix, Matrix]] = (E1, E2, E3)


def hat(omega: Vector) -> Matrix:
    """Antisymmetric matrix omega_x E1 + omega_y E2 + omega_z E3."""
    x, y, z = np.asarray(omega, dtype=float)
    return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def vee(xi: Matrix) -> Vector:
    """Inverse of hat.

    Raises:
        DomainError: xi is not antisymmetric to 1e-8
    """
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (3, 3):
        raise DomainError(f"vee expects a 3x3 matrix, got shape {xi.shape}")
    if float(np.max(np.abs(xi + xi.T))) > SKEW_TOL:
        raise DomainError("vee expects an antisymmetric matrix")
    return np.array([xi[2, 1], xi[0, 2], xi[1, 0]])


def skew_vee(m: Matrix) -> Vector:
    """vee of the antisymmetric part of an arbitrary 3x3 matrix."""
    m = np.asarray(m, dtype=float)
    return 0.5 * np.array([m[2, 1] - m[1, 2], m[0, 2] - m[2, 0], m[1, 0] - m[0, 1]])


def exp_so3(omega: Vector) -> Matrix:
    """Rodrigues formula for exp(hat(omega))."""
    omega = np.asarray(omega, dtype=float)
    theta = float(np.linalg.norm(omega))
    k = hat(omega)
    if theta < 1e-8:
        # Taylor terms up to second order
        return np.eye(3) + k + 0.5 * (k @ k)
    a = np.sin(theta) / theta
    b = (1.0 - np.cos(theta)) / theta**2
    return np.eye(3) + a * k + b * (k @ k)


def rotation_angle(g: Matrix) -> float:
    """Rotation angle of g in [0, pi]."""
    c = 0.5 * (float(np.trace(g)) - 1.0)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def log_so3(g: Matrix) -> Vector:
    """Principal logarithm vee(log g) for rotations with angle below pi.

    Raises:
        DomainError: angle within 1e-6 of pi (branch ambiguity)
    """
    g = np.asarray(g, dtype=float)
    theta = rotation_angle(g)
    if theta >= np.pi - LOG_ANGLE_MARGIN:
        raise DomainError(f"log undefined near a half turn (angle {theta:.6f})")
    if theta < 1e-8:
        factor = 0.5 + theta**2 / 12.0
    else:
        factor = theta / (2.0 * np.sin(theta))
    return factor * np.array([g[2, 1] - g[1, 2], g[0, 2] - g[2, 0], g[1, 0] - g[0, 1]])


def cay(xi: Matrix) -> Matrix:
    """Cayley map (I - xi/2)^-1 (I + xi/2).

    Raises:
        DomainError: I - xi/2 is singular
    """
    xi = np.asarray(xi, dtype=float)
    eye = np.eye(xi.shape[0])
    lhs = eye - 0.5 * xi
    if np.linalg.cond(lhs) > 1e12:
        raise DomainError("Cayley map undefined: I - xi/2 is singular")
    return scipy.linalg.solve(lhs, eye + 0.5 * xi)


def cay_inv(g: Matrix) -> Matrix:
    """Inverse Cayley map 2 (g - I)(g + I)^-1.

    Raises:
        DomainError: g + I is singular (half turn)
    """
    g = np.asarray(g, dtype=float)
    eye = np.eye(g.shape[0])
    rhs = g + eye
    if np.linalg.cond(rhs) > 1e12:
        raise DomainError("inverse Cayley map undefined: g + I is singular")
    # (g - I)(g + I)^-1 = ((g + I)^-T (g - I)^T)^T
    return 2.0 * scipy.linalg.solve(rhs.T, (g - eye).T).T


def orthogonality_defect(g: Matrix) -> float:
    """Max-norm of g g^T - I."""
    g = np.asarray(g, dtype=float).reshape(3, 3)
    return float(np.max(np.abs(g @ g.T - np.eye(3))))
