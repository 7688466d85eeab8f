"""Constructive algorithms that return profiles with certified regret bounds.

Every result is a :class:`CertifiedProfile` whose ``regret_bound`` is derived
from the construction alone; :meth:`CertifiedProfile.measured_regret`
recomputes the actual (constrained) regret exactly for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .game import (
    COL,
    ROW,
    BimatrixGame,
    GameError,
    MixedStrategy,
    Profile,
    l1_distance,
    to_rational,
)
from .transform import diagonal_modify
from .verify import (
    ConstraintSpec,
    check_constraint,
    constrained_regret_disjoint,
    constrained_regret_far,
    regret,
)

NASH = "nash"
CONSTRAINED_DISJOINT = "constrained_disjoint"
CONSTRAINED_FAR = "constrained_far"


class ConstructionError(ValueError):
    """A construction precondition does not hold."""


@dataclass(frozen=True)
class CertifiedProfile:
    profile: Profile
    regret_bound: Fraction
    bound_kind: str
    delta: Optional[Fraction] = None
    trace: tuple = field(default_factory=tuple)

    def measured_regret(self, game: BimatrixGame) -> Fraction:
        """Exact max regret over both players under this profile's notion."""
        p = self.profile
        if self.bound_kind == NASH:
            f = lambda pl: regret(game, p, pl)
        elif self.bound_kind == CONSTRAINED_DISJOINT:
            f = lambda pl: constrained_regret_disjoint(game, p, pl)
        else:
            f = lambda pl: constrained_regret_far(game, p, self.delta, pl)
        return max(f(ROW), f(COL))

    def to_json(self) -> dict:
        out = {
            "profile": self.profile.to_json(),
            "regret_bound": str(self.regret_bound),
            "bound_kind": self.bound_kind,
            "trace": [
                {"player": pl, "from": src, "to": list(dst), "mass": str(m)}
                for pl, src, dst, m in self.trace
            ],
        }
        if self.delta is not None:
            out["delta"] = str(self.delta)
        return out


def _unit_range(game: BimatrixGame) -> None:
    lo, hi = game.payoff_range
    if lo < 0 or hi > 1:
        raise ConstructionError(f"payoffs must lie in [0, 1] (found [{lo}, {hi}]); use scale_payoffs first")


def redistribute(x: MixedStrategy, moves: Iterable, payoff_range: Sequence) -> tuple:
    """Apply mass moves to ``x`` and certify the resulting regret inflation.

    Each move is ``(source, destinations, mass)``; ``destinations`` is an
    index or a collection of indices that share the mass evenly. Returns
    ``(x_new, 2 * total_mass * (beta - alpha))``.
    """
    alpha, beta = (to_rational(v) for v in payoff_range)
    if beta < alpha:
        raise ValueError("payoff_range must be (alpha, beta) with alpha <= beta")
    probs = list(x.probs)
    n = len(probs)
    total = Fraction(0)
    for src, dst, mass in moves:
        mass = to_rational(mass)
        dst = (dst,) if isinstance(dst, int) else tuple(dst)
        if mass < 0:
            raise GameError(f"negative move mass {mass}")
        if not dst:
            raise GameError("move has no destination")
        if not 0 <= src < n or any(not 0 <= d < n for d in dst):
            raise GameError(f"move index out of range for n={n}")
        if mass > probs[src]:
            raise GameError(f"cannot move {mass} from index {src}: only {probs[src]} there")
        probs[src] -= mass
        share = mass / len(dst)
        for d in dst:
            probs[d] += share
        total += mass
    return MixedStrategy(tuple(probs)), 2 * total * (beta - alpha)


def make_far(game: BimatrixGame, ne: Profile, delta) -> CertifiedProfile:
    """Turn an exact Nash equilibrium into a ``2 delta``-far approximate one.

    If the equilibrium is already far it is returned with bound 0. Otherwise
    both players are moved onto ``y*``, and the row strategy then sheds
    ``delta`` from its largest entry, spread evenly over the rest; the result
    is exactly ``2 delta`` apart and a ``4 delta``-approximate equilibrium.
    """
    delta = to_rational(delta)
    if not 0 <= delta <= 1:
        raise ConstructionError("delta must lie in [0, 1]")
    _unit_range(game)
    if regret(game, ne, ROW) or regret(game, ne, COL):
        raise ConstructionError("input profile is not an exact Nash equilibrium")
    if l1_distance(ne.x, ne.y) >= 2 * delta:
        return CertifiedProfile(ne, Fraction(0), NASH)
    y = ne.y
    n = len(y)
    top = max(y.probs)
    t = y.probs.index(top)
    if top < delta or n < 2:
        raise ConstructionError(f"cannot extract delta={delta}: largest probability is {top}")
    others = tuple(i for i in range(n) if i != t)
    z, _ = redistribute(y, [(t, others, delta)], (0, 1))
    trace = ((ROW, t, others, delta),)
    return CertifiedProfile(Profile(z, y), 4 * delta, NASH, None, trace)


def greedy_constrained_disjoint(game: BimatrixGame, eps, anchor: int = 0) -> CertifiedProfile:
    """A constrained-disjoint equilibrium with row regret at most ``eps``
    times the payoff range.

    The column plays the pure ``anchor``; the row puts ``1 - eps`` on its
    best reply ``t`` among the other strategies and spreads ``eps`` over the
    rest, which blocks every column deviation. With two strategies the row
    plays ``t`` purely and the profile is exact.
    """
    eps = to_rational(eps)
    n = game.n
    if n < 2:
        raise ConstructionError("need at least 2 strategies")
    if not 0 < eps < 1:
        raise ConstructionError("eps must lie in (0, 1)")
    if not 0 <= anchor < n:
        raise ConstructionError(f"anchor {anchor} out of range for n={n}")
    col_payoffs = [game.row_payoff[i][anchor] for i in range(n)]
    t = max((i for i in range(n) if i != anchor), key=lambda i: (col_payoffs[i], -i))
    y = MixedStrategy.pure(anchor, n)
    if n == 2:
        return CertifiedProfile(Profile(MixedStrategy.pure(t, n), y), Fraction(0), CONSTRAINED_DISJOINT)
    rest = tuple(i for i in range(n) if i not in (t, anchor))
    x, _ = redistribute(MixedStrategy.pure(t, n), [(t, rest, eps)], (0, 1))
    lo, hi = game.payoff_range
    trace = ((ROW, t, rest, eps),)
    return CertifiedProfile(Profile(x, y), eps * (hi - lo), CONSTRAINED_DISJOINT, None, trace)


def _collapse(v: MixedStrategy, M: Fraction, player: str) -> tuple:
    probs = list(v.probs)
    cut = 1 / M
    big = [i for i, p in enumerate(probs) if p > cut]
    if not big:
        raise ConstructionError(f"{player} strategy has no entry above 1/M = {cut}")
    target = max(big, key=lambda i: (probs[i], -i))
    moves = [(i, (target,), p) for i, p in enumerate(probs) if 0 < p <= cut]
    out, _ = redistribute(v, moves, (0, 1))
    return out, tuple((player, s, d, m) for s, d, m in moves)


def semi_to_constrained_far(game: BimatrixGame, M, semi_ne: Profile) -> CertifiedProfile:
    """Convert an ``M``-semi-disjoint Nash equilibrium of the diagonally
    modified game into a constrained-far approximate equilibrium of ``game``.

    Each strategy keeps its entries above ``1/M`` and moves its small entries
    onto its largest entry. The big supports are disjoint, and the result is
    certified at ``delta = 1 - n/M`` with bound ``6n/M``.
    """
    M = to_rational(M)
    n = game.n
    if M < n:
        raise ConstructionError(f"M must be at least n={n} so that delta = 1 - n/M is nonnegative")
    _unit_range(game)
    modified = diagonal_modify(game, M)
    if regret(modified, semi_ne, ROW) or regret(modified, semi_ne, COL):
        raise ConstructionError("input is not an exact Nash equilibrium of the diagonally modified game")
    if not check_constraint(semi_ne, ConstraintSpec.semi(M), n):
        raise ConstructionError(f"input is not {M}-semi-disjoint")
    x, tx = _collapse(semi_ne.x, M, ROW)
    y, ty = _collapse(semi_ne.y, M, COL)
    return CertifiedProfile(Profile(x, y), 6 * n / M, CONSTRAINED_FAR, 1 - n / M, tx + ty)
