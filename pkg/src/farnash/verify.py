"""Exact regret computation and constraint predicates.

Unconstrained and disjoint-constrained regrets only need pure deviations.
The far constraint ``||x - y||_1 >= 2 delta`` cuts an open L1 ball out of the
simplex, so its best response is found by enumerating the extreme points of
the feasible set, which lie on simplex vertices and edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .game import (
    COL,
    ROW,
    BimatrixGame,
    GameError,
    MixedStrategy,
    Profile,
    expected_payoff,
    l1_distance,
    pure_payoffs,
    support,
    to_rational,
)


class InfeasibleConstraint(ValueError):
    """No strategy in the simplex satisfies the far constraint."""


@dataclass(frozen=True)
class ConstraintSpec:
    kind: str
    param: Optional[Fraction] = None

    KINDS = ("disjoint", "partition", "far", "major", "semi")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind in ("disjoint", "partition"):
            if self.param is not None:
                raise ValueError(f"{self.kind} takes no parameter")
            return
        if self.param is None:
            raise ValueError(f"{self.kind} needs a parameter")
        p = to_rational(self.param)
        object.__setattr__(self, "param", p)
        if self.kind == "far" and not 0 <= p <= 1:
            raise ValueError("far: delta must lie in [0, 1]")
        if self.kind == "major" and not 0 <= p < 1:
            raise ValueError("major: theta must lie in [0, 1)")
        if self.kind == "semi" and not p > 0:
            raise ValueError("semi: M must be positive")

    @classmethod
    def disjoint(cls):
        return cls("disjoint")

    @classmethod
    def partition(cls):
        return cls("partition")

    @classmethod
    def far(cls, delta):
        return cls("far", to_rational(delta))

    @classmethod
    def major(cls, theta):
        return cls("major", to_rational(theta))

    @classmethod
    def semi(cls, M):
        return cls("semi", to_rational(M))

    @classmethod
    def parse(cls, text: str) -> "ConstraintSpec":
        """Parse ``disjoint``, ``partition``, ``far:<r>``, ``major:<r>`` or ``semi:<r>``."""
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if kind in ("disjoint", "partition"):
            if arg:
                raise ValueError(f"{kind} takes no parameter")
            return cls(kind)
        if not arg:
            raise ValueError(f"constraint {kind!r} needs a parameter, e.g. {kind}:1/3")
        return cls(kind, to_rational(arg))

    def __str__(self):
        return self.kind if self.param is None else f"{self.kind}:{self.param}"


@dataclass(frozen=True)
class RegretReport:
    row_regret: Fraction
    col_regret: Fraction
    row_witness: object = None
    col_witness: object = None
    row_empty: bool = False
    col_empty: bool = False

    @property
    def max_regret(self) -> Fraction:
        return max(self.row_regret, self.col_regret)

    def to_json(self) -> dict:
        def w(v):
            if isinstance(v, MixedStrategy):
                return v.to_json()
            return v

        out = {
            "row_regret": str(self.row_regret),
            "col_regret": str(self.col_regret),
            "row_witness": w(self.row_witness),
            "col_witness": w(self.col_witness),
        }
        if self.row_empty or self.col_empty:
            out["empty_feasible_set"] = {"row": self.row_empty, "col": self.col_empty}
        return out


def _other(player: str) -> str:
    return COL if player == ROW else ROW


def _best_pure(values, allowed):
    best, arg = None, None
    for i in allowed:
        if best is None or values[i] > best:
            best, arg = values[i], i
    return best, arg


def regret_with_witness(game: BimatrixGame, profile: Profile, player: str) -> tuple:
    """``(regret, lowest-index best pure deviation)`` for ``player``."""
    values = pure_payoffs(game, profile, player)
    best, arg = _best_pure(values, range(game.n))
    current = expected_payoff(game, profile, player)
    return best - current, arg


def regret(game: BimatrixGame, profile: Profile, player: str) -> Fraction:
    return regret_with_witness(game, profile, player)[0]


def regret_report(game: BimatrixGame, profile: Profile) -> RegretReport:
    r, rw = regret_with_witness(game, profile, ROW)
    c, cw = regret_with_witness(game, profile, COL)
    return RegretReport(r, c, rw, cw)


def is_eps_nash(game: BimatrixGame, profile: Profile, eps=0) -> bool:
    eps = to_rational(eps)
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    return regret(game, profile, ROW) <= eps and regret(game, profile, COL) <= eps


def check_constraint(profile: Profile, spec: ConstraintSpec, n: int | None = None) -> bool:
    x, y = profile.x, profile.y
    n = len(x) if n is None else n
    if len(x) != n or len(y) != n:
        raise GameError(f"profile dimension does not match n={n}")
    sx, sy = set(support(x)), set(support(y))
    if spec.kind == "disjoint":
        return not (sx & sy)
    if spec.kind == "partition":
        return not (sx & sy) and (sx | sy) == set(range(n))
    if spec.kind == "far":
        return l1_distance(x, y) >= 2 * spec.param
    if spec.kind == "major":
        return all(p > spec.param for p in x if p) and all(p > spec.param for p in y if p)
    # semi-disjoint: every shared strategy is minor for at least one player
    bound = 1 / spec.param
    return all(min(x[t], y[t]) < bound for t in sx & sy)


def constrained_disjoint_report(game: BimatrixGame, profile: Profile, player: str) -> tuple:
    """``(regret, witness, empty)`` where deviations avoid the opponent's support."""
    opp = profile.strategy(_other(player))
    blocked = set(support(opp))
    allowed = [i for i in range(game.n) if i not in blocked]
    if not allowed:
        return Fraction(0), None, True
    values = pure_payoffs(game, profile, player)
    best, arg = _best_pure(values, allowed)
    gain = best - expected_payoff(game, profile, player)
    if gain <= 0:
        return Fraction(0), (arg if gain == 0 else None), False
    return gain, arg, False


def constrained_regret_disjoint(game: BimatrixGame, profile: Profile, player: str) -> Fraction:
    return constrained_disjoint_report(game, profile, player)[0]


def constrained_disjoint_regrets(game: BimatrixGame, profile: Profile) -> RegretReport:
    r, rw, re_ = constrained_disjoint_report(game, profile, ROW)
    c, cw, ce = constrained_disjoint_report(game, profile, COL)
    return RegretReport(r, c, rw, cw, re_, ce)


def _edge_distance(y, i, j, t, rest):
    # L1 distance from (1-t) e_i + t e_j to y; ``rest`` is sum of y_k for k not in {i, j}
    return abs(1 - t - y[i]) + abs(t - y[j]) + rest


def far_candidates(y, delta):
    """Candidate maximisers on the far-feasible set, in tie-break order.

    Yields ``(vector, distance)`` for feasible simplex vertices first (by
    index), then for each edge ``(i, j)``, ``i < j``, the breakpoints and
    boundary crossings of the piecewise-linear distance along the edge.
    """
    n = len(y)
    two_delta = 2 * delta
    total = sum(y)
    for i in range(n):
        d = 2 * (1 - y[i])
        if d >= two_delta:
            yield ("vertex", i, None), d
    for i in range(n):
        for j in range(i + 1, n):
            rest = total - y[i] - y[j]
            cuts = sorted({Fraction(0), Fraction(1), 1 - y[i], y[j]})
            cuts = [t for t in cuts if 0 <= t <= 1]
            points = set()
            for a, b in zip(cuts, cuts[1:]):
                da = _edge_distance(y, i, j, a, rest)
                db = _edge_distance(y, i, j, b, rest)
                if 0 < a:
                    points.add(a)
                if b < 1:
                    points.add(b)
                if (da - two_delta) * (db - two_delta) < 0:
                    # linear on [a, b]: solve d(t) = 2 delta
                    points.add(a + (two_delta - da) * (b - a) / (db - da))
            for t in sorted(points):
                d = _edge_distance(y, i, j, t, rest)
                if d >= two_delta:
                    yield ("edge", (i, j), t), d


def _candidate_vector(n, cand):
    kind, idx, t = cand
    probs = [Fraction(0)] * n
    if kind == "vertex":
        probs[idx] = Fraction(1)
    else:
        i, j = idx
        probs[i] = 1 - t
        probs[j] = t
    return MixedStrategy(tuple(probs))


def max_payoff_far(c, y: MixedStrategy, delta) -> tuple:
    """Maximise ``<c, x>`` over ``{x in simplex : ||x - y||_1 >= 2 delta}``.

    Returns ``(value, witness)``. Ties go to the first candidate in vertex
    then edge order. Raises :class:`InfeasibleConstraint` when every point of
    the simplex is closer than ``2 delta`` to ``y``.
    """
    delta = to_rational(delta)
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    c = [to_rational(v) for v in c]
    if len(c) != len(y):
        raise GameError(f"dimension mismatch: {len(c)} vs {len(y)}")
    best, best_cand = None, None
    for cand, _ in far_candidates(y.probs, delta):
        kind, idx, t = cand
        if kind == "vertex":
            val = c[idx]
        else:
            i, j = idx
            val = (1 - t) * c[i] + t * c[j]
        if best is None or val > best:
            best, best_cand = val, cand
    if best is None:
        raise InfeasibleConstraint(
            f"no strategy is {2 * delta}-far from y; max distance is {2 * (1 - min(y.probs))}"
        )
    return best, _candidate_vector(len(y), best_cand)


def constrained_far_report(game: BimatrixGame, profile: Profile, delta, player: str) -> tuple:
    """``(regret, witness)`` for deviations restricted to ``2 delta``-far strategies."""
    opp = profile.strategy(_other(player))
    values = pure_payoffs(game, profile, player)
    best, witness = max_payoff_far(values, opp, delta)
    gain = best - expected_payoff(game, profile, player)
    if gain < 0:
        return Fraction(0), None
    return gain, witness


def constrained_regret_far(game: BimatrixGame, profile: Profile, delta, player: str) -> Fraction:
    return constrained_far_report(game, profile, delta, player)[0]


def constrained_far_regrets(game: BimatrixGame, profile: Profile, delta) -> RegretReport:
    r, rw = constrained_far_report(game, profile, delta, ROW)
    c, cw = constrained_far_report(game, profile, delta, COL)
    return RegretReport(r, c, rw, cw)
