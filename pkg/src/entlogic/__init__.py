"""Substructural sequent engine with an entanglement connective.

The package exposes four layers: the formula language and its rewriting maps,
the cut-free sequent kernel with configurable structural rules, exhaustive
backward proof search with equivalence/idempotence deciders, and the
self-reference analyzer backed by an exact two-qubit state-vector oracle.
"""

from .formulas import (
    Binary,
    Conn,
    Formula,
    NegAtom,
    PosAtom,
    QubitFormula,
    ShapeError,
    classical_collapse,
    dual,
    expand_connectives,
    expand_entanglement,
    expand_sec,
    ent,
    is_qubit_shaped,
    qubit_of,
    sec,
)
from .kernel import (
    LogicConfig,
    ProofTree,
    RuleInstance,
    Sequent,
    axiom_check,
    check_proof,
    dual_sequent,
    dualize_proof,
    rule_instances,
)
from .quantum import (
    CloneOutcome,
    QuantumState,
    apply_cnot,
    bell_state,
    cat,
    fidelity,
    is_separable,
    make_qubit,
    one,
    tensor,
    try_clone,
    zero,
)
from .search import (
    EquivalenceResult,
    GoalRejectedError,
    IdempotenceReport,
    SearchLimits,
    SearchResult,
    decide_equivalence,
    decide_idempotence,
    expand_sequent,
    prove,
)
from .selfref import (
    AnalyzerError,
    LiarOutcome,
    SelfRefReport,
    build_report,
    clone_diagram_commutes,
    fixed_point_check,
    liar_analysis,
    report_matrix,
    self_compose,
    sufficient_condition_check,
)
from .syntax import (
    ParseError,
    SourceSpan,
    parse_formula,
    parse_sequent,
    print_formula,
    print_proof,
    print_sequent,
    proof_from_json,
)

__version__ = "0.1.0"
