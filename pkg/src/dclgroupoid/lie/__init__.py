"""Matrix Lie group numerics for SO(3)."""

from .coadjoint import ad_matrix, adjoint, coadjoint, pairing
from .control import ControlProblem, rigid_body_problem
from .lie_poisson import (
    LiePoissonState,
    body_momentum,
    lie_poisson_residual,
    lie_poisson_run,
    lie_poisson_step,
    spatial_momentum,
)
from .retraction import (
    Retraction,
    RetractionKind,
    dtau_inv_fd,
    make_retraction,
)
from .so3 import E1, E2, E3, cay, cay_inv, exp_so3, hat, log_so3, orthogonality_defect, vee

__all__ = [
    # so(3)
    "E1",
    "E2",
    "E3",
    "hat",
    "vee",
    "exp_so3",
    "log_so3",
    "cay",
    "cay_inv",
    "orthogonality_defect",
    # Retractions
    "Retraction",
    "RetractionKind",
    "make_retraction",
    "dtau_inv_fd",
    # Actions
    "ad_matrix",
    "adjoint",
    "coadjoint",
    "pairing",
    # Lie-Poisson stepping
    "ControlProblem",
    "rigid_body_problem",
    "LiePoissonState",
    "spatial_momentum",
    "body_momentum",
    "lie_poisson_residual",
    "lie_poisson_step",
    "lie_poisson_run",
]
