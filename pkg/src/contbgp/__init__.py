"""Continuous evaluation of basic graph patterns over a stream of triple updates.

Each update yields the answers that entered (+) or left (-) the query result;
folding the signed history always reproduces the answer set on the current
snapshot.
"""

from .analysis import (
    Decomposition,
    QueryClass,
    QueryTag,
    classify,
    connected_variable_decomposition,
    connected_variable_partition,
    decomposes_into_stars,
    generalized_distance,
    variable_adjacency,
)
from .errors import (
    AssumptionViolation,
    BGPError,
    BindingMismatch,
    ClassMismatch,
    IllegalHistory,
    InvalidQuery,
    NoVariables,
    OutOfOrderTimestamp,
    ParseError,
    UnknownNode,
)
from .general import general_evaluator, process_update_general, seed_instance
from .ground import GroundEvaluator, GroundResult, TripleMatchState, ground_bgp_eval, process_update_ground
from .loosely import LooselyEvaluator, init_loosely, process_update_loosely
from .model import (
    Answer,
    DataTriple,
    DeltaAnswer,
    Graph,
    Op,
    Query,
    Sign,
    Term,
    TermKind,
    TriplePattern,
    UpdateMessage,
    apply_update,
    delete,
    ins,
    iri,
    join_mappings,
    literal,
    pattern,
    query,
    term,
    triple,
    unify,
    var,
)
from .oracle import SnapshotOracleState, evaluate, oracle_step
from .session import Mode, Session, Strictness, consolidate, open_session
from .star import InstanceList, StarEvaluator, all_zero, process_update_star

__version__ = "0.1.0"
