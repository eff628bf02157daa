"""Impartial graph coloring games.

Sprague-Grundy engine for six vertex-coloring rulesets, fast tables for the
oriented Blue-Red path game, a linear-time solver for sequential coloring on
paths, and Node-Kayles reduction gadgets.
"""

from .games import (
    IllegalColoringError,
    IllegalMoveError,
    MemoryBudgetExceeded,
    Move,
    Position,
    apply_move,
    best_move,
    clear_solver_cache,
    grundy,
    legal_moves,
    mex,
    nim_sum,
    outcome,
)
from .graphs import (
    FIXED_POINT_FREE,
    SINGLE_FIXED_POINT,
    Graph,
    GraphDocument,
    GraphFormatError,
    Involution,
    InvolutionSearchBudget,
    UnknownFamilyError,
    build_family,
    find_involution,
    load_graph_file,
    make_graph,
    parse_family_spec,
    parse_graph_text,
    format_graph_text,
    power_graph,
    save_graph_file,
)
from .oriented_paths import (
    GrundyTable,
    RareCommonReport,
    TableChecksumError,
    TableFormatError,
    TableVersionError,
    build_class_position,
    classify_rare_common,
    compute_tables,
    enumerate_p_positions,
    export_csv,
    extend_table,
    is_rare,
    load_table,
    rare_set,
    save_table,
    winning_move_AB,
)
from .reductions import (
    EquivalenceReport,
    ReducedInstance,
    reduce_to_distance_2k,
    reduce_to_oriented_br,
    reduce_to_oriented_k,
    reduce_to_proper_k,
    verify_equivalence,
)
from .rulesets import (
    BLUE,
    RED,
    DistanceColoring,
    OrientedBlueRed,
    OrientedColoring,
    ProperColoring,
    RulesetMismatchError,
    SequentialColoring,
    WeakColoring,
    closed_form_outcome,
    is_legal_coloring,
    outcome_by_involution,
)
from .sequential import (
    brute_force_outcome,
    classify,
    decide_outcome,
    decide_path,
)

__version__ = "0.1.0"
