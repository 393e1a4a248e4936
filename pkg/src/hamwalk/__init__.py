"""hamwalk: exact simulator for a quantum-walk Hamiltonian cycle search.

The machine evolves a walker on a simple d-regular bipartite graph into a
superposition of all length-(n-1) walks from a start vertex, then projects
onto the branches whose visit-parity register is all-ones. Everything is
exact: amplitudes are signed powers d**(-k/2), probabilities are rationals,
and every survivor set is cross-checkable against a classical backtracking
oracle.
"""

from .graphs import (
    GenerationFailedError,
    Graph,
    GraphSyntaxError,
    GraphValidationError,
    UnknownBuiltinError,
    builtin_graph,
    builtin_names,
    parse_graph,
    random_regular_bipartite,
    validate_graph,
)
from .signing import (
    DimensionMismatchError,
    FlipUnitary,
    VerifyReport,
    build_flip_unitary,
    published_matrix,
    search_signings,
    verify_flip_unitary,
)
from .state import (
    Amplitude,
    BranchKey,
    InternalCollisionError,
    Superposition,
    VertexOutOfRangeError,
    initial_state,
)
from .evolve import (
    StepLimitExceeded,
    StepOptions,
    StepStats,
    TermLimitExceeded,
    apply_step,
    gate_count,
    run_walk,
)
from .postselect import (
    NoSurvivors,
    ProjectionResult,
    apply_closure_filter,
    probability_decimal,
    project_alpha_all_ones,
    sample_measurement,
)
from .oracle import (
    ComparisonReport,
    EnumerationResult,
    GraphTooLargeError,
    compare_with_quantum,
    count_walks,
    enumerate_hamiltonian,
)

__version__ = "0.1.0"

__all__ = [
    "Amplitude",
    "BranchKey",
    "ComparisonReport",
    "DimensionMismatchError",
    "EnumerationResult",
    "FlipUnitary",
    "GenerationFailedError",
    "Graph",
    "GraphSyntaxError",
    "GraphTooLargeError",
    "GraphValidationError",
    "InternalCollisionError",
    "NoSurvivors",
    "ProjectionResult",
    "StepLimitExceeded",
    "StepOptions",
    "StepStats",
    "Superposition",
    "TermLimitExceeded",
    "UnknownBuiltinError",
    "VerifyReport",
    "VertexOutOfRangeError",
    "apply_closure_filter",
    "apply_step",
    "build_flip_unitary",
    "builtin_graph",
    "builtin_names",
    "compare_with_quantum",
    "count_walks",
    "enumerate_hamiltonian",
    "gate_count",
    "initial_state",
    "parse_graph",
    "probability_decimal",
    "project_alpha_all_ones",
    "published_matrix",
    "random_regular_bipartite",
    "run_walk",
    "sample_measurement",
    "search_signings",
    "validate_graph",
    "verify_flip_unitary",
    "__version__",
]
