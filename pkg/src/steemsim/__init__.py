"""Deterministic simulator of Steemit-style coin-holder post voting."""

from .analysis import ConvergencePrediction, Reason, Verdict, predict, regen_threshold
from .config import ScenarioConfig, SelfishConfig, format_config, parse_config
from .core import (
    ConfigError,
    FeedState,
    LikabilityMatrix,
    PlayerState,
    SystemParams,
    Vote,
    ideal_order,
    ideal_score,
)
from .engine import (
    EngineState,
    VoteOutcome,
    handle_vote,
    init,
    player_view,
    regenerate,
    reorder,
    run,
    run_round,
    visible_prefix,
)
from .metrics import MetricsSample, kendall_tau, selfish_gain, spearman_rho, t_ideal_rank
from .scenarios import (
    RunReport,
    SweepRow,
    execute,
    generate_instance,
    run_from_config,
    run_scenario_a,
    run_scenario_b,
)
from .strategies import (
    HonestMode,
    HonestPolicy,
    HonestPolicyConfig,
    SelfishPolicy,
    honest_decide,
    selfish_decide,
)

__version__ = "0.1.0"
