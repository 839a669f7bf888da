"""Exact tools for the loosened Collatz graph: the LCF, walks, the S_k
concatenation monoid, tuple search and orbit geometry."""

from .lcf import (
    EmptyTupleError,
    LcfValue,
    NotSatisfyingError,
    SatisfactionResult,
    canonical_form,
    closed_form_vertex,
    eval_lcf,
    format_tuple,
    is_satisfying,
    parse_tuple,
    rotate,
    rotation_orbit,
    same_cycle,
)
from .walk import (
    CycleWalk,
    WalkFailure,
    collatz_step,
    cycle_vertices,
    edge_multiset,
    is_trivial_tuple,
    loosened_children,
    loosened_successors,
    oracle_satisfies,
    walk_tuple,
)
from .monoid import (
    MonoidElement,
    concat,
    decompose,
    divides,
    equivalent,
    factorization_fingerprint,
    is_atom,
    member,
)
from .search import (
    SearchConfig,
    SearchRecord,
    check_conjecture2,
    check_coverage,
    enumerate_satisfying,
    method1_trivial,
    run_search,
)
from .geometry import (
    diagonal_centroid,
    equal_edge_check,
    object_fingerprint,
    orbit_polygon,
    zero_axis_check,
)

__version__ = "0.1.0"
