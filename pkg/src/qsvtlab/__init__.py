"""qsvtlab: numerical verification of singular value transformations of
contractions block-embedded in unitaries.

The library decomposes unitaries against subspace splits, iterates phased
rotation steps, tracks the polynomial transformation the products apply to
the embedded block's singular values, constructs the invariant subspaces,
and verifies every identity numerically on finite-dimensional instances.
"""

from .blocks import (
    BlockUnitary,
    SubspaceSplit,
    coisometry_check,
    decompose,
    dilate,
    pullback_projector,
    pullback_projector_blocks,
    rotated_projector_check,
    unitarity_relations,
)
from .demos import demo_instance, demo_names
from .engine import QsvtProduct, block_form_check, even_product, odd_product, rotation, step_operator, svt_values
from .linalg import (
    HermitianEig,
    SvdResult,
    haar_unitary,
    hermitian_eig,
    mat_poly_eval,
    mat_poly_eval_eig,
    psd_sqrt,
    rng_from_seed,
    svd,
)
from .matio import load_matrix, load_schedule, save_matrix, save_schedule
from .polynomials import (
    ComplexPolynomial,
    PhaseSchedule,
    PolyPair,
    boundary_values,
    conjugate,
    even_polynomials,
    odd_polynomials,
    odd_values,
    pair_values,
    step_polynomials,
)
from .qsp import (
    HomogeneousEig,
    HomogeneousStep,
    QspInstance,
    chebyshev_pair,
    homogeneous_check,
    homogeneous_closed_form,
    homogeneous_eig,
    qsp_check,
    qsp_prediction,
    qsp_product,
    signal_unitary,
    z_rotation,
)
from .reporting import CheckRecord, Report
from .subspaces import (
    SingularTriple,
    SubspaceBasis,
    build_subspaces,
    even_evolution_check,
    find_all,
    find_basis,
    invariance_check,
    odd_evolution_check,
    singular_triples,
    spectral_map_check,
    u_mapping_check,
)
from .suite import SUITES, SuiteConfig, SuiteRecord, SuiteReport, run_suite

__version__ = "0.1.0"
