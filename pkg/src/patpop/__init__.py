"""Pattern popularity in 132-avoiding permutations."""

from .budget import Budget, default_budget, set_default_budget
from .errors import (
    BudgetExceeded,
    IneligiblePattern,
    InvalidPartition,
    InvalidPermutation,
    InvalidPositions,
    InvalidTree,
    NoMove,
    NotAvoiding,
    NotInDomain,
    NotInImage,
    NotRealizable,
    PatpopError,
)
from .moves import (
    MoveSite,
    apply_move,
    canonicalize_mover,
    find_site,
    has_move,
    move_candidates,
    psi,
    psi_inverse,
    realize_spine_merge,
    tree_rewrite,
)
from .orders import hasse_edges, merge_parts, partitions, refinement_leq, rl_compare
from .perm import (
    Occurrence,
    avoiders,
    catalan,
    count_occurrences,
    enumerate_avoiders,
    format_perm,
    is_132_avoiding,
    list_occurrences,
    parse_perm,
)
from .popularity import equipopularity_classes, popularity, popularity_recurrence, popularity_table
from .trees import (
    Node,
    SpineStructure,
    is_left_justified,
    permutation_of_tree,
    spine_structure,
    spines,
    tree_of_permutation,
)
from .verify import SUITES, Report, export_report, read_report, run_suite

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExceeded",
    "IneligiblePattern",
    "InvalidPartition",
    "InvalidPermutation",
    "InvalidPositions",
    "InvalidTree",
    "MoveSite",
    "NoMove",
    "Node",
    "NotAvoiding",
    "NotInDomain",
    "NotInImage",
    "NotRealizable",
    "Occurrence",
    "PatpopError",
    "Report",
    "SUITES",
    "SpineStructure",
    "apply_move",
    "avoiders",
    "canonicalize_mover",
    "catalan",
    "count_occurrences",
    "default_budget",
    "enumerate_avoiders",
    "equipopularity_classes",
    "export_report",
    "find_site",
    "format_perm",
    "has_move",
    "hasse_edges",
    "is_132_avoiding",
    "is_left_justified",
    "list_occurrences",
    "merge_parts",
    "move_candidates",
    "parse_perm",
    "partitions",
    "permutation_of_tree",
    "popularity",
    "popularity_recurrence",
    "popularity_table",
    "psi",
    "psi_inverse",
    "read_report",
    "realize_spine_merge",
    "refinement_leq",
    "rl_compare",
    "run_suite",
    "set_default_budget",
    "spine_structure",
    "spines",
    "tree_of_permutation",
    "tree_rewrite",
    "__version__",
]
