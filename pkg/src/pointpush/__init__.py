"""Entropy efficiency of point-push stirring protocols on the punctured disk.

A single stirrer moving among N fixed obstacles traces a loop; the induced
mapping class on the (N+1)-punctured disk is a point-push class.  This
package computes how much topological entropy such a protocol buys per
generator: exact integer representations of the generator actions, entropy
lower bounds from chain actions on cyclic covers, entropy upper bounds from
the generalized spectral radius of the incidence matrices, and the four-term
bound chain squeezing the maximal efficiency to log 3 as N grows.
"""

from .bounds import EfficiencyBounds, closed_lower, closed_upper, eff_bounds, eff_exact_two, eff_table
from .covers import (
    LaurentMatrix,
    LaurentPoly,
    WeightFunctional,
    expand_mod_q,
    lift_automorphism,
    mod_reduce,
    phi,
    unity_scan,
)
from .errors import (
    BoundOrderingError,
    BudgetExceededError,
    HomologyError,
    LengthCapError,
    PointPushError,
)
from .exactmat import ExactMatrix
from .gsr import (
    W_apply,
    gsr_estimate,
    gsr_two_obstacles,
    rho_k_bruteforce,
    sort_vec,
    standardize,
    verify_gsr_realized,
)
from .intrep import (
    H_matrix,
    Hhat_matrix,
    column_sum_step,
    column_sums,
    gen_A,
    gen_A_bar,
    gen_E,
    gen_E_inverse,
    gen_T,
    psi,
    psi_phi_consistency,
    verify_intermediate,
)
from .protocol import (
    BraidWord,
    ProtocolWord,
    alpha_automorphism,
    efficiency_estimate,
    hsp,
    parse_protocol,
    protocol_automorphism,
    to_braid_word,
)
from .spectral import (
    Classification,
    IntPolynomial,
    SpectralReport,
    char_poly,
    classify_number,
    det,
    spectral_radius,
    two_norm,
)
from .words import (
    Automorphism,
    FreeWord,
    apply_automorphism,
    compose,
    growth_estimate,
    incidence_matrix,
    occurrence_vector,
    reduce_word,
    word_length,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "BoundOrderingError",
    "BraidWord",
    "BudgetExceededError",
    "Classification",
    "EfficiencyBounds",
    "ExactMatrix",
    "FreeWord",
    "HomologyError",
    "H_matrix",
    "Hhat_matrix",
    "IntPolynomial",
    "LaurentMatrix",
    "LaurentPoly",
    "LengthCapError",
    "PointPushError",
    "ProtocolWord",
    "SpectralReport",
    "WeightFunctional",
    "W_apply",
    "alpha_automorphism",
    "apply_automorphism",
    "char_poly",
    "classify_number",
    "closed_lower",
    "closed_upper",
    "column_sum_step",
    "column_sums",
    "compose",
    "det",
    "eff_bounds",
    "eff_exact_two",
    "eff_table",
    "efficiency_estimate",
    "expand_mod_q",
    "gen_A",
    "gen_A_bar",
    "gen_E",
    "gen_E_inverse",
    "gen_T",
    "growth_estimate",
    "gsr_estimate",
    "gsr_two_obstacles",
    "hsp",
    "incidence_matrix",
    "lift_automorphism",
    "mod_reduce",
    "occurrence_vector",
    "parse_protocol",
    "phi",
    "protocol_automorphism",
    "psi",
    "psi_phi_consistency",
    "reduce_word",
    "rho_k_bruteforce",
    "sort_vec",
    "spectral_radius",
    "standardize",
    "to_braid_word",
    "two_norm",
    "unity_scan",
    "verify_gsr_realized",
    "verify_intermediate",
    "word_length",
]
