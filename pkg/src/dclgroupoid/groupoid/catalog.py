"""Bundled groupoid models: pair groupoids, SO(3), products and time extensions."""

from __future__ import annotations

from collections.abc import Callable, Sequence

import numpy as np
import scipy.linalg
from scipy.spatial.transform import Rotation

from ..lie.retraction import Retraction, RetractionKind, make_retraction
from ..lie.so3 import SO3_BASIS, cay, hat
from .models import (
    Bisection,
    ElementSampler,
    GroupoidModel,
    Matrix,
    Multiplication,
    StructureMap,
    Vector,
)

Sampler = Callable[[np.random.Generator], tuple[Vector, Vector, Vector]]


def pair_groupoid(
    n: int,
    names: Sequence[str] | None = None,
    base_names: Sequence[str] | None = None,
) -> GroupoidModel:
    """Pair groupoid R^n x R^n over R^n: (a, b)(b, c) = (a, c)."""
    if names is None:
        names = [f"q0_{i + 1}" for i in range(n)] + [f"q1_{i + 1}" for i in range(n)]
    if base_names is None:
        base_names = [f"q_{i + 1}" for i in range(n)]

    def source(g: Vector) -> Vector:
        return np.asarray(g[:n], dtype=float)

    def target(g: Vector) -> Vector:
        return np.asarray(g[n:], dtype=float)

    def multiply(g: Vector, h: Vector) -> Vector:
        return np.concatenate([g[:n], h[n:]])

    def invert(g: Vector) -> Vector:
        return np.concatenate([g[n:], g[:n]])

    def identity_section(q: Vector) -> Vector:
        return np.concatenate([q, q])

    def fiber_chart(q: Vector, u: Vector) -> Vector:
        return np.concatenate([q, np.asarray(q) + np.asarray(u)])

    def fiber_coords(g: Vector) -> Vector:
        return np.asarray(g[n:]) - np.asarray(g[:n])

    def left_translation(g: Vector, v: Vector) -> Vector:
        return np.concatenate([np.zeros(n), v[n:]])

    def right_translation(g: Vector, v: Vector) -> Vector:
        return np.concatenate([-np.asarray(v[n:]), np.zeros(n)])

    def sample(rng: np.random.Generator, q: Vector | None) -> Vector:
        start = rng.normal(size=n) if q is None else np.asarray(q, dtype=float)
        return np.concatenate([start, rng.normal(size=n)])

    frame = np.vstack([np.zeros((n, n)), np.eye(n)])

    return GroupoidModel(
        name=f"pair(R^{n})",
        dim_q=n,
        dim_g=2 * n,
        coord_dim=2 * n,
        source=source,
        target=target,
        multiply=multiply,
        invert=invert,
        identity_section=identity_section,
        fiber_chart=fiber_chart,
        local_chart=lambda g, z: np.asarray(g, dtype=float) + np.asarray(z, dtype=float),
        algebroid_frame=lambda q: frame,
        fiber_coords=fiber_coords,
        left_translation=left_translation,
        right_translation=right_translation,
        sample=sample,
        coord_names=tuple(names),
        base_names=tuple(base_names),
    )


def so3_groupoid(kind: str | RetractionKind = RetractionKind.CAY) -> GroupoidModel:
    """SO(3) as a groupoid over a point, fiber chart u -> tau(hat(u)).

    Elements are the 9 row-major entries of the rotation matrix.
    """
    ret: Retraction = make_retraction(kind)
    empty = np.zeros(0)
    frame = np.column_stack([e.ravel() for e in SO3_BASIS])

    def matrix(g: Vector) -> Matrix:
        return np.asarray(g, dtype=float).reshape(3, 3)

    def sample(rng: np.random.Generator, q: Vector | None) -> Vector:
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        angle = rng.uniform(0.0, np.pi * 0.95)
        return Rotation.from_rotvec(angle * axis).as_matrix().ravel()

    return GroupoidModel(
        name=f"SO(3)[{ret.kind.value}]",
        dim_q=0,
        dim_g=3,
        coord_dim=9,
        source=lambda g: empty,
        target=lambda g: empty,
        multiply=lambda g, h: (matrix(g) @ matrix(h)).ravel(),
        invert=lambda g: matrix(g).T.ravel(),
        identity_section=lambda q: np.eye(3).ravel(),
        fiber_chart=lambda q, u: ret.tau(u).ravel(),
        local_chart=lambda g, z: (matrix(g) @ cay(hat(z))).ravel(),
        algebroid_frame=lambda q: frame,
        fiber_coords=lambda g: ret.tau_inv(matrix(g)),
        left_translation=lambda g, v: (matrix(g) @ matrix(v)).ravel(),
        right_translation=lambda g, v: (matrix(v) @ matrix(g)).ravel(),
        sample=sample,
        coord_names=tuple(f"R{i}{j}" for i in range(1, 4) for j in range(1, 4)),
        base_names=(),
    )


def product_groupoid(a: GroupoidModel, b: GroupoidModel, name: str | None = None) -> GroupoidModel:
    """Direct product A x B over Q_A x Q_B with componentwise structure maps."""
    ca, qa, na, da = a.coord_dim, a.dim_q, a.n_a, a.dim_g

    def split(g: Vector) -> tuple[Vector, Vector]:
        g = np.asarray(g, dtype=float)
        return g[:ca], g[ca:]

    def split_base(q: Vector) -> tuple[Vector, Vector]:
        q = np.asarray(q, dtype=float)
        return q[:qa], q[qa:]

    def source(g: Vector) -> Vector:
        ga, gb = split(g)
        return np.concatenate([a.source(ga), b.source(gb)])

    def target(g: Vector) -> Vector:
        ga, gb = split(g)
        return np.concatenate([a.target(ga), b.target(gb)])

    def multiply(g: Vector, h: Vector) -> Vector:
        ga, gb = split(g)
        ha, hb = split(h)
        return np.concatenate([a.compose(ga, ha), b.compose(gb, hb)])

    def invert(g: Vector) -> Vector:
        ga, gb = split(g)
        return np.concatenate([a.invert(ga), b.invert(gb)])

    def identity_section(q: Vector) -> Vector:
        q_a, q_b = split_base(q)
        return np.concatenate([a.identity_section(q_a), b.identity_section(q_b)])

    def fiber_chart(q: Vector, u: Vector) -> Vector:
        q_a, q_b = split_base(q)
        u = np.asarray(u, dtype=float)
        return np.concatenate([a.fiber_chart(q_a, u[:na]), b.fiber_chart(q_b, u[na:])])

    def local_chart(g: Vector, z: Vector) -> Vector:
        ga, gb = split(g)
        z = np.asarray(z, dtype=float)
        return np.concatenate([a.local_chart(ga, z[:da]), b.local_chart(gb, z[da:])])

    def frame(q: Vector) -> Matrix:
        q_a, q_b = split_base(q)
        return scipy.linalg.block_diag(a.algebroid_frame(q_a), b.algebroid_frame(q_b))

    fiber_coords: StructureMap | None = None
    if a.fiber_coords is not None and b.fiber_coords is not None:
        fa, fb = a.fiber_coords, b.fiber_coords

        def _fiber_coords(g: Vector) -> Vector:
            ga, gb = split(g)
            return np.concatenate([fa(ga), fb(gb)])

        fiber_coords = _fiber_coords

    left_translation: Multiplication | None = None
    right_translation: Multiplication | None = None
    if a.left_translation is not None and b.left_translation is not None:
        la, lb = a.left_translation, b.left_translation

        def _left(g: Vector, v: Vector) -> Vector:
            ga, gb = split(g)
            va, vb = split(v)
            return np.concatenate([la(ga, va), lb(gb, vb)])

        left_translation = _left

    if a.right_translation is not None and b.right_translation is not None:
        ra, rb = a.right_translation, b.right_translation

        def _right(g: Vector, v: Vector) -> Vector:
            ga, gb = split(g)
            va, vb = split(v)
            return np.concatenate([ra(ga, va), rb(gb, vb)])

        right_translation = _right

    sample: ElementSampler | None = None
    if a.sample is not None and b.sample is not None:
        sa, sb = a.sample, b.sample

        def _sample(rng: np.random.Generator, q: Vector | None) -> Vector:
            if q is None:
                return np.concatenate([sa(rng, None), sb(rng, None)])
            q_a, q_b = split_base(q)
            return np.concatenate([sa(rng, q_a), sb(rng, q_b)])

        sample = _sample

    return GroupoidModel(
        name=name or f"{a.name} x {b.name}",
        dim_q=a.dim_q + b.dim_q,
        dim_g=a.dim_g + b.dim_g,
        coord_dim=a.coord_dim + b.coord_dim,
        source=source,
        target=target,
        multiply=multiply,
        invert=invert,
        identity_section=identity_section,
        fiber_chart=fiber_chart,
        local_chart=local_chart,
        algebroid_frame=frame,
        fiber_coords=fiber_coords,
        left_translation=left_translation,
        right_translation=right_translation,
        sample=sample,
        coord_names=a.coord_names + b.coord_names,
        base_names=a.base_names + b.base_names,
    )


def time_extended_groupoid(model: GroupoidModel) -> GroupoidModel:
    """G_R = R x R x G over R x Q, structure maps acting on (t0, t1) as a pair groupoid."""
    times = pair_groupoid(1, names=("t0", "t1"), base_names=("t",))
    return product_groupoid(times, model, name=f"R x R x {model.name}")


def plate_ball_groupoid() -> GroupoidModel:
    """R^2 x R^2 x SO(3) over R^2, with the Cayley fiber chart on SO(3)."""
    plane = pair_groupoid(2, names=("x0", "y0", "x1", "y1"), base_names=("x", "y"))
    return product_groupoid(plane, so3_groupoid(RetractionKind.CAY), name="plate-ball")


def composable_sampler(model: GroupoidModel) -> Sampler:
    """Sampler of composable triples (g, h, k) built from the model's element sampler."""
    if model.sample is None:
        raise ValueError(f"{model.name} has no element sampler")
    draw = model.sample

    def sampler(rng: np.random.Generator) -> tuple[Vector, Vector, Vector]:
        g = draw(rng, None)
        h = draw(rng, model.target(g))
        k = draw(rng, model.target(h))
        return g, h, k

    return sampler


def pair_bisection(matrix: Matrix, offset: Vector) -> Bisection:
    """Bisection of a pair groupoid: the graph of q -> matrix q + offset."""
    a = np.asarray(matrix, dtype=float)
    b = np.asarray(offset, dtype=float)

    return Bisection(
        alpha_section=lambda q: np.concatenate([q, a @ q + b]),
        beta_section=lambda q: np.concatenate([scipy.linalg.solve(a, np.asarray(q) - b), q]),
    )


def pair_bisection_through(g: Vector, matrix: Matrix) -> Bisection:
    """Affine bisection with linear part ``matrix`` passing through the pair element g."""
    g = np.asarray(g, dtype=float)
    n = g.size // 2
    a = np.asarray(matrix, dtype=float)
    return pair_bisection(a, g[n:] - a @ g[:n])


def group_bisection(element: Vector) -> Bisection:
    """Bisection of a group (groupoid over a point): the single element."""
    element = np.asarray(element, dtype=float)
    return Bisection(alpha_section=lambda q: element, beta_section=lambda q: element)
