"""Game surgeries: strategy duplication, diagonal modification and
projection of derived-game profiles back to the source game."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .game import BimatrixGame, GameError, MixedStrategy, Profile, to_rational

SHARED = "shared"
ROW_COPY = "row"
COL_COPY = "col"


@dataclass(frozen=True)
class LabelMap:
    """``forward[k] = (source index, owner)`` for each derived strategy ``k``."""

    forward: tuple
    punishment: Fraction
    source_range: tuple

    @property
    def source_n(self) -> int:
        return 1 + max(s for s, _ in self.forward)

    def associated(self, k: int, player: str) -> bool:
        owner = self.forward[k][1]
        return owner == SHARED or owner == player

    def to_json(self) -> dict:
        return {
            "forward": [[s, o] for s, o in self.forward],
            "punishment": str(self.punishment),
            "source_range": [str(v) for v in self.source_range],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LabelMap":
        return cls(
            tuple((int(s), str(o)) for s, o in data["forward"]),
            to_rational(data["punishment"]),
            tuple(to_rational(v) for v in data["source_range"]),
        )


def duplicate_strategies(game: BimatrixGame, subset: Iterable[int] = (), sigma=None) -> tuple:
    """Split each strategy in ``subset`` into a row copy and a column copy.

    A player on the opponent's copy receives ``sigma`` (default: minimum
    payoff minus one) while the opponent receives the minimum payoff, so
    such strategies are strictly dominated. Returns ``(game, LabelMap)``.
    """
    n = game.n
    subset = set(subset)
    if any(not 0 <= i < n for i in subset):
        raise GameError(f"subset index out of range for n={n}")
    lo, hi = game.payoff_range
    sigma = lo - 1 if sigma is None else to_rational(sigma)
    if sigma >= lo:
        raise GameError(f"sigma={sigma} must be strictly below the minimum payoff {lo}")
    forward, labels = [], []
    for i, lab in enumerate(game.labels):
        if i in subset:
            forward += [(i, ROW_COPY), (i, COL_COPY)]
            labels += [f"{lab}.r", f"{lab}.c"]
        else:
            forward.append((i, SHARED))
            labels.append(lab)
    R, C = game.row_payoff, game.col_payoff
    rows, cols = [], []
    for a, oa in forward:
        rrow, crow = [], []
        for b, ob in forward:
            row_bad = oa == COL_COPY
            col_bad = ob == ROW_COPY
            if row_bad or col_bad:
                rrow.append(sigma if row_bad else lo)
                crow.append(sigma if col_bad else lo)
            else:
                rrow.append(R[a][b])
                crow.append(C[a][b])
        rows.append(rrow)
        cols.append(crow)
    lmap = LabelMap(tuple(forward), sigma, (lo, hi))
    meta = dict(game.metadata)
    meta["transform"] = {"duplicate": sorted(subset), "label_map": lmap.to_json()}
    return BimatrixGame(tuple(labels), rows, cols, meta), lmap


def lift_profile(profile: Profile, label_map: LabelMap) -> Profile:
    """Place a source profile on each player's associated copies."""
    n = label_map.source_n

    def lift(v: MixedStrategy, player: str):
        if len(v) != n:
            raise GameError(f"profile dimension {len(v)} does not match source size {n}")
        return MixedStrategy(
            tuple(v[s] if o in (SHARED, player) else Fraction(0) for s, o in label_map.forward)
        )

    return Profile(lift(profile.x, ROW_COPY), lift(profile.y, COL_COPY))


def project_profile(profile: Profile, label_map: LabelMap) -> tuple:
    """Sum each copy's mass onto its source strategy.

    Returns ``(profile, extra_bound)`` where ``extra_bound = 2 eps (beta -
    alpha)`` and ``eps`` is the total mass both players had on copies that
    are not theirs.
    """
    m = len(label_map.forward)
    if len(profile.x) != m or len(profile.y) != m:
        raise GameError(f"profile dimension does not match derived game size {m}")
    n = label_map.source_n
    stray = Fraction(0)

    def proj(v: MixedStrategy, player: str):
        nonlocal stray
        out = [Fraction(0)] * n
        for k, (s, o) in enumerate(label_map.forward):
            out[s] += v[k]
            if o not in (SHARED, player):
                stray += v[k]
        return MixedStrategy(tuple(out))

    p = Profile(proj(profile.x, ROW_COPY), proj(profile.y, COL_COPY))
    lo, hi = label_map.source_range
    return p, 2 * stray * (hi - lo)


def default_diagonal_m(game: BimatrixGame) -> Fraction:
    lo, hi = game.payoff_range
    return 2 * game.n * (hi - lo) + 1


def diagonal_modify(game: BimatrixGame, M: Optional[Fraction] = None) -> BimatrixGame:
    """Set every diagonal entry of both matrices to ``-M``."""
    M = default_diagonal_m(game) if M is None else to_rational(M)
    if M <= 0:
        raise GameError("M must be positive")
    rows = [[-M if i == j else u for j, u in enumerate(r)] for i, r in enumerate(game.row_payoff)]
    cols = [[-M if i == j else u for j, u in enumerate(r)] for i, r in enumerate(game.col_payoff)]
    meta = dict(game.metadata)
    meta["transform"] = {"diagonal_modify": str(M)}
    return BimatrixGame(game.labels, rows, cols, meta)
