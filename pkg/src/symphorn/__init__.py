"""Symplectic eigenvalues and the symplectic Horn cone."""

__version__ = "0.1.0"

from .linalg import (
    ConvergenceError,
    NotPSDError,
    Spectrum,
    herm_eigen,
    psd_sqrt,
    random_pd,
    random_symplectic,
    sym_eigen,
)
from .williamson import (
    CausalClass,
    QuadForm,
    WilliamsonDecomp,
    causal_cone_member,
    j_matrix,
    sample_form_with_spectrum,
    symplectic_eigenvalues,
    williamson_decompose,
    x_of_mu,
)
from .horn import HornInequality, horn_inequalities, lr_count, partition_of_subset, subsets
from .cone import (
    MembershipReport,
    check_delta_sp,
    check_friedland,
    check_horn_classical,
    check_horn_sp,
    dual_involution,
    partial_sum,
)
from .witness import (
    HermitianTriple,
    WitnessResult,
    find_hermitian_witness,
    find_symplectic_witness,
    monte_carlo_forward,
    realize_majorization,
    symmetric_sqrt_factor,
)
