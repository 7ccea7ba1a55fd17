"""Exact symbolic verification of 2-plectic geometry identities.

Polynomials have rational coefficients and every identity is checked by
exact equality.  The main entry points are re-exported here; see the
submodules for the full API.
"""

from twoplectic.errors import (
    InternalConsistencyError,
    NonUniqueSolution,
    NoSolution,
    NotAWeakSymmetry,
    RejectedInput,
)
from twoplectic.exterior import (
    Chart,
    DifferentialForm,
    VectorField,
    eval_on_fields,
    ext_d,
    interior,
    lie_derivative,
    pullback_projection,
    vf_bracket,
    wedge,
)
from twoplectic.plectic import (
    HamiltonianPair,
    PlecticStructure,
    check_closed,
    check_nondegenerate,
    l2_bracket,
    l3_triple,
    solve_hamiltonian,
)
from twoplectic.polyring import KERNEL, Polynomial, poly_arith, poly_diff, poly_eval

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "DifferentialForm",
    "HamiltonianPair",
    "InternalConsistencyError",
    "KERNEL",
    "NoSolution",
    "NonUniqueSolution",
    "NotAWeakSymmetry",
    "PlecticStructure",
    "Polynomial",
    "RejectedInput",
    "VectorField",
    "check_closed",
    "check_nondegenerate",
    "eval_on_fields",
    "ext_d",
    "interior",
    "l2_bracket",
    "l3_triple",
    "lie_derivative",
    "poly_arith",
    "poly_diff",
    "poly_eval",
    "pullback_projection",
    "solve_hamiltonian",
    "vf_bracket",
    "wedge",
]
