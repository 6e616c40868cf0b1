"""Simulation and verification toolkit for a perturbed hexagonal color code.

Builds the model on small tori, rewrites it into decoupled Ising, toric-code,
and holed toric-code forms, verifies those rewrites spectrally and at the
stabilizer-group level, and maps out the phase diagram through string order
parameters and abelian anyon condensation.
"""

__version__ = "0.1.0"

from .anyons import (
    AnyonTheory,
    Census,
    CondensationResult,
    classify,
    color_code_theory,
    condense,
    find_isomorphism,
    toric_code_theory,
)
from .lattice import (
    COLORS,
    ColorLattice,
    TorusSpec,
    TriangularLattice,
    ValidationReport,
    build_hex_torus,
    dual_triangular,
    link_lattice,
    validate_lattice,
)
from .models import (
    Couplings,
    ModelBundle,
    color_code_h,
    perturbed_h,
    tfim_h,
    toric_code_h,
    toric_code_with_holes_h,
)
from .observables import (
    ColorString,
    PhasePoint,
    build_string,
    classify_phase,
    corner_ground_state,
    corner_string_values,
    holes_witness,
    ising_magnetization_sq,
    phase_point,
    string_order,
)
from .pauli import (
    OperatorSum,
    PauliString,
    gf2_rank,
    stabilizer_degeneracy,
)
from .spectra import (
    StateVector,
    apply,
    dense_matrix,
    expectation,
    full_spectrum,
    ground_state,
    invariant_sector_eigenvalues,
    low_lying,
    sector_eigenvalues,
)
from .transform import (
    EquivalenceReport,
    FrameSpec,
    RewriteResult,
    UnsupportedTermError,
    green_frame,
    ising_decoupling_matches,
    ising_frame,
    ising_sector_equivalence,
    red_frame,
    rewrite,
    rewrite_sum,
    transform_h_ising,
    verify_group_image,
    verify_spectral_equivalence,
)

__all__ = [
    "__version__",
    "AnyonTheory",
    "Census",
    "CondensationResult",
    "classify",
    "color_code_theory",
    "condense",
    "find_isomorphism",
    "toric_code_theory",
    "COLORS",
    "ColorLattice",
    "TorusSpec",
    "TriangularLattice",
    "ValidationReport",
    "build_hex_torus",
    "dual_triangular",
    "link_lattice",
    "validate_lattice",
    "Couplings",
    "ModelBundle",
    "color_code_h",
    "perturbed_h",
    "tfim_h",
    "toric_code_h",
    "toric_code_with_holes_h",
    "ColorString",
    "PhasePoint",
    "build_string",
    "classify_phase",
    "corner_ground_state",
    "corner_string_values",
    "holes_witness",
    "ising_magnetization_sq",
    "phase_point",
    "string_order",
    "OperatorSum",
    "PauliString",
    "gf2_rank",
    "stabilizer_degeneracy",
    "StateVector",
    "apply",
    "dense_matrix",
    "expectation",
    "full_spectrum",
    "ground_state",
    "invariant_sector_eigenvalues",
    "low_lying",
    "sector_eigenvalues",
    "EquivalenceReport",
    "FrameSpec",
    "RewriteResult",
    "UnsupportedTermError",
    "green_frame",
    "ising_decoupling_matches",
    "ising_frame",
    "ising_sector_equivalence",
    "red_frame",
    "rewrite",
    "rewrite_sum",
    "transform_h_ising",
    "verify_group_image",
    "verify_spectral_equivalence",
]
