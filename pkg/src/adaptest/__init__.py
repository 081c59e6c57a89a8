"""Adaptive testing workbench for extensionally defined black-box candidates.

Decide or minimize the worst-case number of adaptive tests needed to classify
a black box as correct or incorrect against an explicit list of candidate
behaviors; compile set-cover and quantified-formula instances into testing
scenarios; and drive live testing sessions with exact or heuristic advice.
"""

from .advisor import Advice, RankedInput, advise, heuristic_value
from .generators import (
    FactoredCounts,
    FactoredSpec,
    NumericFunction,
    NumericScenario,
    builtin_cas,
    cas_variant,
    count_factored,
    discretize_observations,
    expand_factored,
    mini_atm,
    random_scenario,
)
from .model import (
    BehaviorFunction,
    HypothesisViolationError,
    Scenario,
    Verdict,
    consistent_set,
    is_deterministic,
    validate_scenario,
    verdict_of,
)
from .oracle import (
    OracleSizeError,
    QbfFormula,
    SetCoverInstance,
    literal,
    min_depth,
    min_set_cover,
    qbf_eval,
)
from .reductions import (
    InfeasibleScenarioError,
    ReducedScenario,
    check_reduction_equivalence,
    greedy_cover,
    msc_to_scenario,
    qbf_to_scenario,
    scenario_to_msc,
)
from .session import (
    SessionState,
    SessionStatus,
    TerminatedSessionError,
    create_session,
    feasibility,
    observe,
    recommend,
    replay_session,
)
from .solver import (
    Branch,
    Leaf,
    NodeBudgetExceeded,
    NoStrategyError,
    SolveConfig,
    StrategyTree,
    decide,
    extract_strategy,
    optimize,
    validate_strategy,
)

__all__ = [
    "Advice",
    "BehaviorFunction",
    "Branch",
    "FactoredCounts",
    "FactoredSpec",
    "HypothesisViolationError",
    "InfeasibleScenarioError",
    "Leaf",
    "NoStrategyError",
    "NodeBudgetExceeded",
    "NumericFunction",
    "NumericScenario",
    "OracleSizeError",
    "QbfFormula",
    "RankedInput",
    "ReducedScenario",
    "Scenario",
    "SessionState",
    "SessionStatus",
    "SetCoverInstance",
    "SolveConfig",
    "StrategyTree",
    "TerminatedSessionError",
    "Verdict",
    "advise",
    "builtin_cas",
    "cas_variant",
    "check_reduction_equivalence",
    "consistent_set",
    "count_factored",
    "create_session",
    "decide",
    "discretize_observations",
    "expand_factored",
    "extract_strategy",
    "feasibility",
    "greedy_cover",
    "heuristic_value",
    "is_deterministic",
    "literal",
    "min_depth",
    "min_set_cover",
    "mini_atm",
    "msc_to_scenario",
    "observe",
    "optimize",
    "qbf_eval",
    "qbf_to_scenario",
    "random_scenario",
    "recommend",
    "replay_session",
    "scenario_to_msc",
    "validate_scenario",
    "validate_strategy",
    "verdict_of",
]
