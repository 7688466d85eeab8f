"""Exact verification, enumeration and construction of constrained equilibria
in bimatrix games, plus SAT-to-game reduction generators."""

from .game import (
    COL,
    ROW,
    AffineMap,
    BimatrixGame,
    GameError,
    MixedStrategy,
    Profile,
    expected_payoff,
    l1_distance,
    scale_payoffs,
    support,
)
from .kernels import BACKEND
from .solve import (
    EquilibriumSet,
    enumerate_constrained_disjoint,
    enumerate_nash,
    filter_nash_by_constraint,
    fully_mixed_nash,
)
from .verify import (
    ConstraintSpec,
    InfeasibleConstraint,
    RegretReport,
    check_constraint,
    constrained_regret_disjoint,
    constrained_regret_far,
    is_eps_nash,
    max_payoff_far,
    regret,
)

__version__ = "0.1.0"
