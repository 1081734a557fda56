"""Strategy complexes of errorful-action graphs and informative release sequences."""

from .bruteforce import brute_force_longest_iars, full_permutation_tally
from .complexes import (
    ActionRelation,
    Budget,
    action_relation,
    enumerate_maximal_strategies,
    enumerate_minimal_nonfaces,
    goal_set,
    is_fully_controllable,
    shrink_to_minimal_nonface,
    strategy_key,
)
from .errors import (
    BudgetExceededError,
    GraphFormatError,
    HcgFormatError,
    InvariantViolationError,
    PreconditionError,
    RelationFormatError,
)
from .graphs import (
    Action,
    ActionKind,
    Graph,
    Purity,
    QuotientMap,
    contains_circuit,
    is_convergent,
    make_action,
    make_graph,
    moves_off,
    parse_graph,
    quotient,
    serialize_graph,
)
from .hcg import (
    AcyclicDissection,
    ForwardProjection,
    HcgLeaf,
    HcgNode,
    MissingCycleRelease,
    NondetIarsAudit,
    acyclic_dissection,
    classify_tau,
    extract_hcg,
    forward_projection,
    nondet_iars,
    nondet_iars_audit,
    order_cycle_breaking,
    parse_hcg,
    serialize_hcg,
    validate_hcg,
)
from .relations import (
    FaceReport,
    Relation,
    closure,
    face_classification,
    is_iars,
    is_identifiable,
    make_relation,
    maximal_simplices,
    phi,
    psi,
    read_relation_csv,
    write_relation_csv,
)
from .sessions import RevealSession
from .stochastic import (
    ExpansionStep,
    ExpansionTrace,
    expand_min_nonfaces,
    expansive_sets,
    stochastic_iars,
)

__version__ = "0.1.0"
