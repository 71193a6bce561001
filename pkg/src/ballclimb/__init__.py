"""Gray-box multi-objective Hamming-ball hill climbing for vector Mk Landscapes."""

from .archive import InsertResult, NonDominatedArchive, dominates
from .attainment import attainment_surface, eas50
from .hillclimber import ClimbResult, climb, select_strong, select_w_improving
from .landscape import (
    CoOccurrenceGraph,
    InstanceFormatError,
    Subfunction,
    VectorMkLandscape,
    build_cooccurrence_graph,
    from_tables,
    generate_adjacent_mnk,
    load_instance,
    save_instance,
)
from .moves import MoveIndex, adjacent_move_count, build_move_index, decompose, enumerate_moves
from .scores import Bucket, ScoreStore, classify, compute_scores, reclassify, update_scores, w_score

__all__ = [
    "Bucket",
    "ClimbResult",
    "CoOccurrenceGraph",
    "InsertResult",
    "InstanceFormatError",
    "MoveIndex",
    "NonDominatedArchive",
    "ScoreStore",
    "Subfunction",
    "VectorMkLandscape",
    "adjacent_move_count",
    "attainment_surface",
    "build_cooccurrence_graph",
    "build_move_index",
    "classify",
    "climb",
    "compute_scores",
    "decompose",
    "dominates",
    "eas50",
    "enumerate_moves",
    "from_tables",
    "generate_adjacent_mnk",
    "load_instance",
    "reclassify",
    "save_instance",
    "select_strong",
    "select_w_improving",
    "update_scores",
    "w_score",
]

__version__ = "0.1.0"
