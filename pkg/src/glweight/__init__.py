"""The universal GL weight system on permutations and chord diagrams.

Values are polynomials in the Casimir variables C0, C1, C2, ...; they are
computed by a neighbour-swap recurrence and can be checked against a direct
sum in U(gl(m|n)) and against Harish-Chandra images.
"""

from .glrec import GLWeightSystem, IntegralityError, specialize, w_gl, w_gl_diagram
from .hc import (
    casimir_hc_images,
    gl11_casimir_in_c1_c2,
    hc_project,
    hc_shifts,
    is_supersymmetric,
)
from .perm import (
    ChordDiagram,
    ParseError,
    Permutation,
    all_chord_diagrams,
    all_four_term_relations,
    all_permutations,
    base_point_rotation,
    concatenation_blocks,
    diagram_to_involution,
    parse_diagram,
    parse_permutation,
    standard_cycle_length,
)
from .poly import Polynomial, poly_add, poly_mul, poly_to_string, substitute_c0
from .signfn import (
    SignFunction,
    distinguished_indices,
    distinguished_pairs,
    evaluate_sign,
    sign_function,
    swap_neighbors_sign,
)
from .uea import (
    UEAElement,
    casimir_element,
    evaluate_in_uea,
    is_central,
    supertrace_dim,
    uea_mul,
    w_glmn_bruteforce,
)

__version__ = "0.1.0"
