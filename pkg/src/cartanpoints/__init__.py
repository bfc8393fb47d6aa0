"""Exact arithmetic for frieze systems of generalized Cartan matrices.

Construct the polynomial systems attached to a generalized Cartan matrix,
enumerate all positive integral points for finite types, compute explicit
height bounds, and generate or count solutions of the associated rank-2 and
rank-3 Diophantine surface equations.
"""

from .bounds import (
    BoundProfile,
    E8_NEIGHBOR_FLOORS,
    SearchBox,
    TableBound,
    ceil_pow2,
    e8_chain_caps,
    e8_refined_fractional_caps,
    floor_pow2,
    profile,
    refined_c,
    representative_cap,
    table_N,
)
from .cartan import (
    ACCEPTANCE_TYPES,
    DynkinType,
    GcmError,
    GeneralizedCartanMatrix,
    catalog_type_of,
    degree_one_nodes,
    dynkin_matrix,
    inverse_exact,
    is_finite_type,
    matrix_from_json,
    matrix_to_json,
    min_principal_minor,
    symmetrizer,
    transpose,
    validate_gcm,
)
from .closed_forms import (
    CountFormulaResult,
    binomial,
    catalan,
    count_formula,
    divisor_count,
    expected_count,
    period,
)
from .frieze import (
    FriezeError,
    FriezeGrid,
    FriezePoint,
    GlsPoint,
    equations_render,
    frieze_grid,
    knit_next,
    make_point,
    orbit,
    point_from_json,
    point_to_json,
    render_ascii,
    solve_y,
    to_gls,
    translate,
)
from .reduction import (
    NodeRelabeling,
    delete_node,
    lift_point,
    project_point,
    slice_count,
    slice_points,
)
from .search import (
    BudgetExhausted,
    CountReport,
    SearchConfig,
    enumerate_points,
    enumerate_restricted_orbit,
    enumerate_type,
    filter_restricted_orbit,
)
from .streams import (
    Rank2Params,
    Rank3Params,
    Surface3Count,
    brute_force_surface2,
    brute_force_surface3,
    rank2_matrix,
    rank3_matrix,
    stream2,
    stream2_terms,
    stream3,
    to_surface2,
    to_surface3,
)

__version__ = "0.1.0"
