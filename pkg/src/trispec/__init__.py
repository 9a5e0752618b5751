"""Spectral parameters of finite triangle families.

Everything is driven by the two signed incidence matrices of a family:
vertex-edge and edge-triangle.  The headline quantity is the smallest
positive eigenvalue of the triangle up-Laplacian, computed here with
exact integer ranks (no kernel thresholding) and a dense Jacobi solver.
"""

__version__ = "0.1.0"

from .constructions import (
    BudgetDecomposition,
    ClosedFormSpectrum,
    GcbSpec,
    GrowthWitness,
    complete_family,
    eigvec_bc,
    eigvec_c,
    eigvec_matrix,
    eigvec_residual,
    frobenius_decompose,
    frobenius_threshold,
    gcb_closed_form_spectrum,
    gcb_family,
    gcb_lambda,
    parse_construction,
    phi_lower_bound_family,
)
from .extremal import (
    CountingCertificate,
    ForbiddenInterval,
    OverlapCertificate,
    PhiEntry,
    PhiTable,
    RigidityVerdict,
    WindowVerdict,
    check_counting,
    check_overlap,
    check_rigidity,
    enumerate_connected_families,
    forbidden_interval,
    guarded_ceil,
    lambda_staircase,
    lambda_staircase_many,
    near_integer,
    phi_exact,
    phi_table,
    vertex_window_check,
)
from .families import (
    EmptyFamilyError,
    FamilyParseError,
    SupportGraph,
    TriangleFamily,
    connected_components,
    disjoint_union,
    family_to_text,
    load_family,
    parse_family,
    random_families,
    random_family,
    relabel,
    save_family,
    support_graph,
    vertex_triangle_counts,
)
from .incidence import (
    LAPLACIAN_KINDS,
    IntSymMatrix,
    SignedIncidence,
    build_delta0,
    build_delta1,
    build_laplacian,
    exact_rank,
    harmonic_dimension,
    read_matrix_market,
    write_matrix_market,
)
from .spectra import (
    MinGapCheck,
    SpectralError,
    SpectralReport,
    Spectrum,
    eigenvalues_symmetric,
    lambda_min_plus,
    lambda_of,
    spectral_report,
    verify_min_gap,
)

__all__ = [
    "BudgetDecomposition",
    "ClosedFormSpectrum",
    "CountingCertificate",
    "EmptyFamilyError",
    "FamilyParseError",
    "ForbiddenInterval",
    "GcbSpec",
    "GrowthWitness",
    "IntSymMatrix",
    "LAPLACIAN_KINDS",
    "MinGapCheck",
    "OverlapCertificate",
    "PhiEntry",
    "PhiTable",
    "RigidityVerdict",
    "SignedIncidence",
    "SpectralError",
    "SpectralReport",
    "Spectrum",
    "SupportGraph",
    "TriangleFamily",
    "WindowVerdict",
    "build_delta0",
    "build_delta1",
    "build_laplacian",
    "check_counting",
    "check_overlap",
    "check_rigidity",
    "complete_family",
    "connected_components",
    "disjoint_union",
    "eigenvalues_symmetric",
    "eigvec_bc",
    "eigvec_c",
    "eigvec_matrix",
    "eigvec_residual",
    "enumerate_connected_families",
    "exact_rank",
    "family_to_text",
    "forbidden_interval",
    "frobenius_decompose",
    "frobenius_threshold",
    "gcb_closed_form_spectrum",
    "gcb_family",
    "gcb_lambda",
    "guarded_ceil",
    "harmonic_dimension",
    "lambda_min_plus",
    "lambda_of",
    "lambda_staircase",
    "lambda_staircase_many",
    "load_family",
    "near_integer",
    "parse_construction",
    "parse_family",
    "phi_exact",
    "phi_lower_bound_family",
    "phi_table",
    "random_families",
    "random_family",
    "read_matrix_market",
    "relabel",
    "save_family",
    "spectral_report",
    "support_graph",
    "vertex_triangle_counts",
    "verify_min_gap",
    "vertex_window_check",
    "write_matrix_market",
]
