"""Verification toolkit for weighted composition operators on the
Gaussian-weighted Hilbert space of entire functions.

The package builds truncated matrix representations of weight-and-map
symbols, evaluates the closed-form identities the operator family
satisfies (self-adjointness, fixed points, conjugated eigenfunction
relations, commutant symbol formulas, adjoint factorization, normality),
and emits residual reports with convergence data across truncation orders.
"""

from .report import CheckReport, Verdict, TOOL_VERSION
from .series import (
    FockParams,
    ParamsMismatchError,
    TruncatedSeries,
    compose_affine,
    exp_linear,
    inner_product,
    kernel_series,
    orthonormal_basis_element,
    series_norm,
)
from .operators import (
    AffineMap,
    Boundedness,
    DegenerateMapError,
    ExpDisplacementWeight,
    ExpLinearWeight,
    LinearFractionalMap,
    OperatorMatrix,
    PoleProximityError,
    SeriesWeight,
    UnsupportedMapError,
    WcoSymbol,
    adjoint_matrix,
    adjoint_on_kernel,
    apply_wco,
    assemble_matrix,
    boundedness_check,
    commutator_residual,
    eval_wco_at,
    hermitian_residual,
    monomial_to_orthonormal,
    orthonormal_to_monomial,
    product_symbol,
)
from .quadrature import QuadratureGrid, check_oracle_agreement, default_grid, quad_inner_product, quad_matrix_entry
from .checks import (
    CommutantParams,
    SelfAdjointSymbolParams,
    check_adjoint_factorization_battery,
    check_commutant_symbols,
    check_cphi_adjoint_factorization,
    check_degenerate_commutant,
    check_disk_criterion,
    check_eigen_identity,
    check_fixed_point_transfer,
    check_h_conjugation,
    check_moebius_conjugation,
    check_moebius_conjugation_battery,
    check_normality,
    check_selfadjoint_forward,
    check_selfadjoint_reverse,
    commutant_symbols,
    conjugation_factor,
    disk_selfmap_criterion,
    fixed_point,
    reproduce_counterexample,
    selfadjoint_symbol,
)

__version__ = TOOL_VERSION

__all__ = [name for name in dir() if not name.startswith("_")]
