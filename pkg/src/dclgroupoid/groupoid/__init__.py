"""Chart-level Lie groupoids, their algebroids and invariant vector fields."""

from .calculus import (
    anchor,
    directional_derivative,
    left_fields,
    left_invariant,
    right_fields,
    right_invariant,
    tangent_basis,
    tangent_map,
)
from .catalog import (
    composable_sampler,
    group_bisection,
    pair_bisection,
    pair_bisection_through,
    pair_groupoid,
    plate_ball_groupoid,
    product_groupoid,
    so3_groupoid,
    time_extended_groupoid,
)
from .checks import (
    basis_report,
    check_axioms,
    tangent_inversion_check,
    tangent_multiplication_check,
)
from .models import (
    AlgebroidBasis,
    AxiomReport,
    Bisection,
    GradientMode,
    GroupoidModel,
    standard_basis,
)

__all__ = [
    # Models
    "GroupoidModel",
    "AlgebroidBasis",
    "GradientMode",
    "Bisection",
    "AxiomReport",
    "standard_basis",
    # Bundled groupoids
    "pair_groupoid",
    "so3_groupoid",
    "product_groupoid",
    "time_extended_groupoid",
    "plate_ball_groupoid",
    "composable_sampler",
    "pair_bisection",
    "pair_bisection_through",
    "group_bisection",
    # Derivatives
    "tangent_map",
    "directional_derivative",
    "left_invariant",
    "right_invariant",
    "left_fields",
    "right_fields",
    "anchor",
    "tangent_basis",
    # Checks
    "check_axioms",
    "basis_report",
    "tangent_inversion_check",
    "tangent_multiplication_check",
]
