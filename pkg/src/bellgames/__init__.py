"""Exact analysis of two-player Bayesian games played with nonlocal resources."""
from .analysis import (
    BoundResult,
    classify_behavior,
    expected_payoff,
    gap_report,
    local_bound,
    ns_bound,
)
from .equilibrium import (
    check_correlated_eq,
    check_ex_ante,
    check_ex_post,
    check_mixed_profile,
    check_pure_nash,
)
from .model import (
    Behavior,
    Game,
    JointDistribution,
    ModelError,
    Prior,
    Scenario,
    StrategicGame,
    block_distribution,
    block_game,
    deterministic_behavior,
    mix,
    uniform_behavior,
    validate_behavior,
)
from .numeric import QuadExt, compare, parse_scalar, render
from .polytope import (
    enumerate_local_strategies,
    enumerate_ns_vertices,
    is_local,
    is_vertex,
    ns_constraints,
)
from .presets import preset
from .synthesis import SynthesisOptions, synthesize_game, verify_synthesis

__version__ = "0.1.0"
