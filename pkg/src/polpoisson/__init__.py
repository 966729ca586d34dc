"""Exact computer algebra for the polarized k-symplectic model: adapted
coordinates, foliate Hamiltonian fields, subordinate and linear vectorial
Poisson brackets, and a fixed-step flow integrator."""

from ._kernel import BACKEND as KERNEL_BACKEND
from .symbolic import BasicFn, ParseError, parse_basic
from .lie_algebra import (LieAlgebra, MaurerCartan, Violation, abelian, builtin,
                          from_maurer_cartan, h3_plus_a, heisenberg3, n4,
                          to_maurer_cartan)
from .geometry import (AffineExpr, FoliateField, ModelManifold,
                       PolarizedHamiltonian, VectorValued1Form, apply_transition,
                       contract_theta, differential, gradient_restriction,
                       hamiltonian_field, hom_model, inverse_transition,
                       is_polarized_hamiltonian, lie_bracket_fields, pair)
from .poisson import (BracketKind, jacobiator, linear_bracket,
                      linear_hamiltonian_field, subordinate_bracket,
                      verify_axioms)
from .dynamics import (State, Trajectory, conservation_report, hamilton_rhs,
                       rk4_flow, write_csv)

__version__ = "0.1.0"

__all__ = [
    "AffineExpr", "BasicFn", "BracketKind", "FoliateField", "KERNEL_BACKEND",
    "LieAlgebra", "MaurerCartan", "ModelManifold", "ParseError",
    "PolarizedHamiltonian", "State", "Trajectory", "VectorValued1Form",
    "Violation", "abelian", "apply_transition", "builtin", "conservation_report",
    "contract_theta", "differential", "from_maurer_cartan",
    "gradient_restriction", "h3_plus_a", "hamilton_rhs", "hamiltonian_field",
    "heisenberg3", "hom_model", "inverse_transition", "is_polarized_hamiltonian",
    "jacobiator", "lie_bracket_fields", "linear_bracket",
    "linear_hamiltonian_field", "n4", "pair", "parse_basic", "rk4_flow",
    "subordinate_bracket", "to_maurer_cartan", "verify_axioms", "write_csv",
]
