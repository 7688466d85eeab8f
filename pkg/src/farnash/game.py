"""Exact data model for bimatrix games, mixed strategies and payoffs."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Any, Iterable, Sequence

ROW = "row"
COL = "col"
PLAYERS = (ROW, COL)

SupportSet = tuple  # sorted tuple of strategy indices

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class GameError(ValueError):
    """Malformed game, strategy or profile data."""


def to_rational(value: Any) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Accepts ints, Fractions and strings of the form ``"p/q"`` or ``"p"``.
    Floats and decimal strings are rejected so no precision is silently lost.
    """
    if isinstance(value, bool):
        raise GameError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.match(value):
            raise GameError(f"not an exact rational (use p/q or an integer): {value!r}")
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise GameError(f"zero denominator: {value!r}") from None
    raise GameError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    return str(q)


def _check_player(player: str) -> None:
    if player not in PLAYERS:
        raise ValueError(f"player must be 'row' or 'col', got {player!r}")


@dataclass(frozen=True)
class MixedStrategy:
    """A probability vector with exact rational entries."""

    probs: tuple

    def __post_init__(self):
        probs = tuple(to_rational(p) for p in self.probs)
        if not probs:
            raise GameError("empty strategy")
        if any(p < 0 for p in probs):
            raise GameError(f"negative probability in {_fmt_vec(probs)}")
        if sum(probs) != 1:
            raise GameError(f"probabilities sum to {sum(probs)}, not 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def pure(cls, i: int, n: int) -> "MixedStrategy":
        if not 0 <= i < n:
            raise GameError(f"pure strategy {i} out of range for n={n}")
        return cls(tuple(Fraction(int(k == i)) for k in range(n)))

    @classmethod
    def uniform(cls, n: int, over: Iterable[int] | None = None) -> "MixedStrategy":
        idx = list(range(n)) if over is None else sorted(set(over))
        if not idx:
            raise GameError("uniform over an empty set")
        w = Fraction(1, len(idx))
        probs = [Fraction(0)] * n
        for i in idx:
            probs[i] = w
        return cls(tuple(probs))

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i):
        return self.probs[i]

    def __iter__(self):
        return iter(self.probs)

    def to_json(self) -> list:
        return [format_rational(p) for p in self.probs]


@dataclass(frozen=True)
class Profile:
    """A (row strategy, column strategy) pair."""

    x: MixedStrategy
    y: MixedStrategy

    def __post_init__(self):
        if not isinstance(self.x, MixedStrategy):
            object.__setattr__(self, "x", MixedStrategy(tuple(self.x)))
        if not isinstance(self.y, MixedStrategy):
            object.__setattr__(self, "y", MixedStrategy(tuple(self.y)))

    def strategy(self, player: str) -> MixedStrategy:
        _check_player(player)
        return self.x if player == ROW else self.y

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Profile":
        try:
            return cls(MixedStrategy(tuple(data["x"])), MixedStrategy(tuple(data["y"])))
        except (KeyError, TypeError) as exc:
            raise GameError(f"profile JSON needs 'x' and 'y' lists: {exc}") from None


@dataclass(frozen=True)
class BimatrixGame:
    """Two square payoff matrices over one shared, labelled strategy set."""

    labels: tuple
    row_payoff: tuple
    col_payoff: tuple
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        row = _as_matrix(self.row_payoff, "row")
        col = _as_matrix(self.col_payoff, "col")
        n = len(row)
        if n < 1:
            raise GameError("a game needs at least one strategy")
        if len(col) != n:
            raise GameError(f"row matrix is {n}x{n} but col matrix has {len(col)} rows")
        labels = tuple(str(s) for s in self.labels) if self.labels is not None else None
        if not labels:
            labels = tuple(f"s{i}" for i in range(n))
        if len(labels) != n:
            raise GameError(f"{len(labels)} labels for {n} strategies")
        if len(set(labels)) != n:
            raise GameError("strategy labels must be unique")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "row_payoff", row)
        object.__setattr__(self, "col_payoff", col)
        object.__setattr__(self, "metadata", dict(self.metadata or {}))

    @property
    def n(self) -> int:
        return len(self.labels)

    def payoff(self, player: str) -> tuple:
        _check_player(player)
        return self.row_payoff if player == ROW else self.col_payoff

    @cached_property
    def payoff_range(self) -> tuple:
        entries = [u for m in (self.row_payoff, self.col_payoff) for r in m for u in r]
        return min(entries), max(entries)

    @cached_property
    def integer_matrices(self) -> tuple:
        """``(R, R^T, C, C^T)`` as lists of Python ints, each matrix scaled by
        a positive constant so that indifference systems are unchanged."""

        def scaled(m):
            d = lcm(*(u.denominator for r in m for u in r))
            return [[int(u * d) for u in r] for r in m]

        R = scaled(self.row_payoff)
        C = scaled(self.col_payoff)
        return R, [list(c) for c in zip(*R)], C, [list(c) for c in zip(*C)]

    def with_metadata(self, **extra) -> "BimatrixGame":
        meta = dict(self.metadata)
        meta.update(extra)
        return BimatrixGame(self.labels, self.row_payoff, self.col_payoff, meta)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "row": [[format_rational(u) for u in r] for r in self.row_payoff],
            "col": [[format_rational(u) for u in r] for r in self.col_payoff],
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BimatrixGame":
        if not isinstance(data, dict) or "row" not in data or "col" not in data:
            raise GameError("game JSON needs 'row' and 'col' matrices")
        return cls(data.get("labels"), data["row"], data["col"], data.get("metadata") or {})

    @classmethod
    def from_matrices(cls, row, col, labels: Sequence[str] | None = None, **metadata):
        return cls(tuple(labels) if labels is not None else None, row, col, metadata)


def _as_matrix(m, name: str) -> tuple:
    try:
        rows = [tuple(to_rational(u) for u in r) for r in m]
    except TypeError:
        raise GameError(f"{name} payoff is not a matrix") from None
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise GameError(f"{name} payoff must be square (shared strategy set); got a row of length {len(r)} in a {n}-row matrix")
    return tuple(rows)


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(p) for p in v) + ")"


def _dims(game: BimatrixGame, profile: Profile) -> None:
    if len(profile.x) != game.n or len(profile.y) != game.n:
        raise GameError(
            f"profile dimensions ({len(profile.x)}, {len(profile.y)}) do not match game size {game.n}"
        )


def expected_payoff(game: BimatrixGame, profile: Profile, player: str) -> Fraction:
    """Exact expected payoff ``sum_ij x_i y_j U(i, j)`` for ``player``."""
    _check_player(player)
    _dims(game, profile)
    U = game.payoff(player)
    total = Fraction(0)
    for xi, row in zip(profile.x, U):
        if xi:
            total += xi * sum((yj * u for yj, u in zip(profile.y, row) if yj), Fraction(0))
    return total


def pure_payoffs(game: BimatrixGame, profile: Profile, player: str) -> list:
    """Payoff of each pure strategy of ``player`` against the opponent's mix."""
    _check_player(player)
    _dims(game, profile)
    if player == ROW:
        y = profile.y
        return [sum((yj * u for yj, u in zip(y, row) if yj), Fraction(0)) for row in game.row_payoff]
    x = profile.x
    C = game.col_payoff
    return [sum((x[i] * C[i][j] for i in range(game.n) if x[i]), Fraction(0)) for j in range(game.n)]


def l1_distance(x: MixedStrategy, y: MixedStrategy) -> Fraction:
    if len(x) != len(y):
        raise GameError(f"dimension mismatch: {len(x)} vs {len(y)}")
    return sum((abs(a - b) for a, b in zip(x, y)), Fraction(0))


def support(x: MixedStrategy) -> SupportSet:
    return tuple(i for i, p in enumerate(x) if p > 0)


@dataclass(frozen=True)
class AffineMap:
    """``scaled = (u - low) / (high - low)``; the zero map when ``low == high``."""

    low: Fraction
    high: Fraction

    @property
    def degenerate(self) -> bool:
        return self.low == self.high

    def forward(self, u: Fraction) -> Fraction:
        if self.degenerate:
            return Fraction(0)
        return (u - self.low) / (self.high - self.low)

    def inverse(self, s: Fraction) -> Fraction:
        return self.low + s * (self.high - self.low)

    def scale_regret(self, r: Fraction) -> Fraction:
        """Translate a regret measured in the scaled game back to original units."""
        return r * (self.high - self.low)

    def to_json(self) -> dict:
        return {"low": str(self.low), "high": str(self.high)}


def scale_payoffs(game: BimatrixGame) -> tuple:
    """Jointly rescale both matrices into [0, 1]; returns ``(game, AffineMap)``."""
    low, high = game.payoff_range
    amap = AffineMap(low, high)
    row = [[amap.forward(u) for u in r] for r in game.row_payoff]
    col = [[amap.forward(u) for u in r] for r in game.col_payoff]
    meta = dict(game.metadata)
    meta["scaling"] = amap.to_json()
    return BimatrixGame(game.labels, row, col, meta), amap


def load_json(path_or_dash: str) -> Any:
    import sys

    if path_or_dash == "-":
        return json.load(sys.stdin)
    with open(path_or_dash) as fh:
        return json.load(fh)


def read_game(path: str) -> BimatrixGame:
    return BimatrixGame.from_json(load_json(path))


def read_profile(path: str) -> Profile:
    return Profile.from_json(load_json(path))
