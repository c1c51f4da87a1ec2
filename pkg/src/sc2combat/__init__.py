"""Damage-pool approximation models of StarCraft 2 style army combat."""

from .engine import (
    ROUND_CAP,
    ArmyState,
    DamagePool,
    ModelId,
    TargetPolicy,
    TrialOutcome,
    Winner,
    apply_pool,
    bonus_pool,
    compute_pool,
    run_trial,
    step_round,
)
from .errors import (
    CatalogError,
    CombatError,
    EnumerationLimitError,
    ScenarioError,
    StalemateError,
)
from .montecarlo import (
    AggregateResult,
    ExperimentSpec,
    run_experiment,
    sample_outcomes,
    trial_rng,
    trial_seed,
)
from .oracle import EnumerationLimits, ExactDistribution, enumerate_compositions, enumerate_exact
from .report import ComparisonRow, ModelErrorSummary, comparison_rows, mae_by_model
from .scenarios import (
    MatchupSpec,
    ReferenceRow,
    Scenario,
    build_armies,
    builtin_matchups,
    find_matchup,
    find_reference_row,
    load_scenario,
    reference_table,
)
from .units import (
    Race,
    UnitCatalog,
    UnitClass,
    default_catalog,
    dumps_catalog,
    effective_bonus_dps,
    effective_dps,
    effective_health,
    load_catalog,
    loads_catalog,
)

__version__ = "0.1.0"

__all__ = [
    "ROUND_CAP",
    "AggregateResult",
    "ArmyState",
    "CatalogError",
    "CombatError",
    "ComparisonRow",
    "DamagePool",
    "EnumerationLimitError",
    "EnumerationLimits",
    "ExactDistribution",
    "ExperimentSpec",
    "MatchupSpec",
    "ModelErrorSummary",
    "ModelId",
    "Race",
    "ReferenceRow",
    "Scenario",
    "ScenarioError",
    "StalemateError",
    "TargetPolicy",
    "TrialOutcome",
    "UnitCatalog",
    "UnitClass",
    "Winner",
    "apply_pool",
    "bonus_pool",
    "build_armies",
    "builtin_matchups",
    "comparison_rows",
    "compute_pool",
    "default_catalog",
    "dumps_catalog",
    "effective_bonus_dps",
    "effective_dps",
    "effective_health",
    "enumerate_compositions",
    "enumerate_exact",
    "find_matchup",
    "find_reference_row",
    "load_catalog",
    "load_scenario",
    "loads_catalog",
    "mae_by_model",
    "reference_table",
    "run_experiment",
    "run_trial",
    "sample_outcomes",
    "step_round",
    "trial_rng",
    "trial_seed",
]
