"""Reference solutions used to validate the spectral marcher."""

from .modal import ModalSolution, analytic_field, hankel0_first_kind, modal_solution
from .fdm import FdmSystem, build_fdm_system, fdm_march, fdm_operator
from .metrics import error_index

__all__ = [
    "ModalSolution",
    "analytic_field",
    "hankel0_first_kind",
    "modal_solution",
    "FdmSystem",
    "build_fdm_system",
    "fdm_march",
    "fdm_operator",
    "error_index",
]
