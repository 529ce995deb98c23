"""Cops and robbers: exact solving, evasion, strategies and simulation."""

from .play import (
    COP_STRATEGIES,
    ROBBER_STRATEGIES,
    CopStrategy,
    Evader,
    GameState,
    GreedyDistanceCops,
    OptimalCops,
    OptimalRobber,
    RandomCops,
    RandomRobber,
    RobberStrategy,
    StayCops,
    StayRobber,
    Transcript,
    dominated,
    evading_move,
    make_cop_strategy,
    make_robber_strategy,
    simulate,
)
from .solver import (
    CopNumberResult,
    SolvedGame,
    SolveOutcome,
    canonical_state_count,
    exact_cop_number,
    k_cop_win,
)
