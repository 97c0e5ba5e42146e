"""Provenance games for non-recursive Datalog with negation."""

from ._kernel import BACKEND
from .datalog import (
    Atom,
    Database,
    Program,
    active_domain,
    evaluate_semiring,
    evaluate_stratified,
    ground,
    parse_atom,
    parse_database,
    parse_program,
)
from .explain import (
    eval_dag,
    omega,
    provenance_polynomial,
    why_leaves,
    why_not_report,
    why_report,
)
from .game import (
    EdgeLabel,
    GameGraph,
    NodeValue,
    ProvenanceSubgraph,
    SolvedGame,
    check_regular_structure,
    label_edges,
    optimal_moves,
    provenance,
    solve,
    value,
)
from .polynomial import Polynomial, Semiring
from .qgame import BuildVariant, GameNodeId, build_game, move_claim, solve_query_game
from .wellfounded import ThreeValued, alternating_fixpoint

__version__ = "0.1.0"
