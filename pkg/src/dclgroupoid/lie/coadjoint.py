"""Adjoint and coadjoint actions of SO(3) in E_i coordinates."""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .so3 import SO3_BASIS, Matrix, Vector, hat, skew_vee


def pairing(mu: Vector, xi: Vector) -> float:
    """<mu, xi> for mu in so(3)* and xi in so(3), both in E_i coordinates."""
    return float(np.asarray(mu, dtype=float) @ np.asarray(xi, dtype=float))


def ad_matrix(xi: Vector) -> Matrix:
    """Matrix of ad_xi = [xi, .] (the cross product with xi)."""
    return hat(xi)


def adjoint(g: Matrix, eta: Vector) -> Vector:
    """Ad_g eta = vee(g hat(eta) g^-1)."""
    g = np.asarray(g, dtype=float).reshape(3, 3)
    return skew_vee(g @ hat(eta) @ scipy.linalg.inv(g))


def coadjoint(g: Matrix, mu: Vector) -> Vector:
    """Ad*_g mu, defined by <Ad*_g mu, xi> = <mu, g xi g^-1>."""
    g = np.asarray(g, dtype=float).reshape(3, 3)
    g_inv = scipy.linalg.inv(g)
    mu = np.asarray(mu, dtype=float)
    return np.array([pairing(mu, skew_vee(g @ e @ g_inv)) for e in SO3_BASIS])
