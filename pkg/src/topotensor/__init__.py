"""Topological tensor eigenvalue analysis.

Z-eigenpairs of symmetric tensors, simplicial complexes built from tensor
support, GF(2) Betti numbers, the Betti-weighted eigenvalue
``sum_k c_k beta_k``, and CP/Tucker validation runs.
"""

__version__ = "0.1.0"

from .complex import (  # noqa: E402
    BettiSignature,
    ComplexStrategy,
    SimplicialComplex,
    barycentric_subdivide,
    betti,
    boundary_matrix,
    build_complex,
    euler_characteristic,
)
from .decomp import (  # noqa: E402
    CPModel,
    TuckerModel,
    cp_als,
    cp_eigenvalues,
    mse,
    reconstruct,
    tucker_eigenvalues,
    tucker_hosvd,
)
from .eigen import EigenPair, SolverConfig, oracle_sweep_2, residual, z_eigenpairs  # noqa: E402
from .synth import GenSpec, generate  # noqa: E402
from .tensor import Tensor, contract_all_but_one, fold, symmetrize, unfold  # noqa: E402
from .topo import (  # noqa: E402
    CoefficientScheme,
    count_bound_diagnostic,
    eigenvalue_count_bound,
    invariance_check,
    make_coefficients,
    topological_eigenvalue,
)
