"""Exact arithmetic around the modular j-function.

Thin re-export of the compiled extension. Large integers and rationals
cross the boundary as decimal strings; matrices as nested string lists.
"""

try:
    from ._jcover import *  # noqa: F401,F403  (installed package layout)
    from ._jcover import __version__  # noqa: F401
except ImportError:  # build-tree layout: extension on sys.path
    from _jcover import *  # noqa: F401,F403
    from _jcover import __version__  # noqa: F401

__all__ = [
    "DomainError",
    "PrecisionError",
    "class_polynomial",
    "coset_representatives",
    "cyclic_subgroup_count",
    "evaluate_j",
    "galois_order",
    "in_hecke_orbit",
    "is_cm_value",
    "j_coefficients",
    "modular_polynomial",
    "nonstandard_fiber_witness",
    "normalize",
    "psi",
    "reduced_forms",
    "stabilizer_index",
    "verify_quick",
    "witness_fails_standard_fibers",
    "__version__",
]
