"""Reduction games built from CNF formulas.

Every generator lays out a list of :class:`Role` objects and fills the
payoff matrices from one role-based rule table (:func:`_base_payoff`). The
generators differ only in which strategies are duplicated per player and in
the shape of the ``f`` block.

Owner tags: ``shared`` strategies may be played by both players; ``row`` and
``col`` copies belong to one player, and the other player is punished with
``-2n`` for using them.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..game import COL, ROW, BimatrixGame, GameError, MixedStrategy, Profile, to_rational
from .cnf import CnfFormula

SHARED = "shared"
LIT, VAR, CLAUSE, F = "lit", "var", "clause", "f"


class ReductionError(ValueError):
    """Generator parameter out of range."""


@dataclass(frozen=True)
class Role:
    kind: str
    key: int
    owner: str = SHARED
    copy: int = 0

    def label(self) -> str:
        if self.kind == LIT:
            base = ("x" if self.key > 0 else "~x") + str(abs(self.key))
        elif self.kind == VAR:
            base = f"v{self.key}"
        elif self.kind == CLAUSE:
            base = f"c{self.key + 1}"
        else:
            base = f"f{self.key + 1}"
        if self.copy:
            base += f"#{self.copy}"
        if self.owner != SHARED:
            base += ".r" if self.owner == ROW else ".c"
        return base

    def to_json(self) -> list:
        return [self.kind, self.key, self.owner, self.copy]

    @classmethod
    def from_json(cls, data) -> "Role":
        kind, key, owner, copy = data
        return cls(str(kind), int(key), str(owner), int(copy))


@dataclass(frozen=True)
class _FBlock:
    size: int
    diag: Fraction
    succ: Fraction


@dataclass(frozen=True)
class ReductionGame:
    game: BimatrixGame
    roles: tuple
    params: dict
    formula: CnfFormula

    @property
    def n(self) -> int:
        return self.formula.num_vars

    def indices(self, kind: str, key: Optional[int] = None, player: Optional[str] = None) -> list:
        """Strategy indices of a given kind (and key), optionally restricted
        to those ``player`` may use without punishment."""
        out = []
        for k, r in enumerate(self.roles):
            if r.kind != kind or (key is not None and r.key != key):
                continue
            if player is not None and r.owner not in (SHARED, player):
                continue
            out.append(k)
        return out

    def to_json(self) -> dict:
        return self.game.to_json()

    @classmethod
    def from_game(cls, game: BimatrixGame) -> "ReductionGame":
        meta = game.metadata or {}
        if "roles" not in meta or "formula" not in meta:
            raise GameError("game metadata has no reduction roles; produce it with the reduce command")
        roles = tuple(Role.from_json(r) for r in meta["roles"])
        if len(roles) != game.n:
            raise GameError("reduction roles do not match the game size")
        return cls(game, roles, dict(meta.get("params", {})), CnfFormula.from_json(meta["formula"]))


def _default_eps(n: int) -> Fraction:
    return Fraction(1, 2 * n**3)


def _threshold(n: int) -> Fraction:
    n = Fraction(n)
    return 1 / n - 1 / n**2 - 1 / n**3


def _base_payoff(mine: Role, theirs: Role, me: str, n: int, clauses, fblock: Optional[_FBlock]) -> Fraction:
    """Payoff to player ``me`` playing ``mine`` against ``theirs``."""
    if mine.owner not in (SHARED, me):
        return Fraction(-2 * n)
    if theirs.owner == me:
        return Fraction(n - 1) if mine.kind == F and theirs.kind != F else Fraction(0)
    if mine.kind == F:
        if theirs.kind != F:
            return Fraction(n - 1)
        if mine.key == theirs.key:
            return fblock.diag
        if mine.key == (theirs.key + 1) % fblock.size:
            return fblock.succ
        return Fraction(0)
    if theirs.kind == F:
        return Fraction(0)
    if mine.kind == LIT:
        if theirs.kind == LIT:
            return Fraction(n - 4 if mine.key == -theirs.key else n - 1)
        return Fraction(n - 4)
    if theirs.kind != LIT:
        return Fraction(n - 4)
    if mine.kind == VAR:
        return Fraction(0 if abs(theirs.key) == mine.key else n)
    return Fraction(0 if theirs.key in clauses[mine.key] else n)


def _build(name: str, phi: CnfFormula, roles: list, fblock, params: dict) -> ReductionGame:
    n = phi.num_vars
    clauses = [frozenset(c) for c in phi.clauses]
    rows = [[_base_payoff(a, b, ROW, n, clauses, fblock) for b in roles] for a in roles]
    cols = [[_base_payoff(b, a, COL, n, clauses, fblock) for b in roles] for a in roles]
    labels = tuple(r.label() for r in roles)
    meta = {
        "generator": name,
        "params": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in params.items()},
        "formula": phi.to_json(),
        "roles": [r.to_json() for r in roles],
    }
    if fblock is not None and fblock.diag > 2 * n:
        meta["note"] = "f-block payoffs exceed the literal range; game is emitted unscaled"
    game = BimatrixGame(labels, rows, cols, meta)
    return ReductionGame(game, tuple(roles), dict(params), phi)


def _check_formula(phi: CnfFormula, name: str) -> None:
    if phi.num_vars < 1:
        raise ReductionError(f"{name}: formula needs at least one variable")
    if not phi.is_3cnf():
        warnings.warn(f"{name}: formula is not 3CNF; hardness guarantees assume exactly 3 literals per clause")


def _literal_roles(n: int, dup_vars=(), multi=None) -> list:
    """Literal roles in block order: shared, then row copies, then column copies.

    ``dup_vars`` lists variables whose literals are split per player.
    ``multi = (var, d, i)`` gives that variable ``d`` copies per sign, the
    first ``i`` split per player and the rest shared.
    """
    dup_vars = set(dup_vars)
    shared, row, col = [], [], []
    for v in range(1, n + 1):
        for lit in (v, -v):
            if multi is not None and v == multi[0]:
                _, d, i = multi
                for j in range(1, i + 1):
                    row.append(Role(LIT, lit, ROW, j))
                    col.append(Role(LIT, lit, COL, j))
                shared.extend(Role(LIT, lit, SHARED, j) for j in range(i + 1, d + 1))
            elif v in dup_vars:
                row.append(Role(LIT, lit, ROW))
                col.append(Role(LIT, lit, COL))
            else:
                shared.append(Role(LIT, lit))
    return shared + row + col


def _vc_roles(phi: CnfFormula, split: bool) -> list:
    n, m = phi.num_vars, phi.num_clauses
    if not split:
        return [Role(VAR, v) for v in range(1, n + 1)] + [Role(CLAUSE, k) for k in range(m)]
    out = [Role(VAR, v, ROW) for v in range(1, n + 1)]
    out += [Role(VAR, v, COL) for v in range(1, n + 1)]
    out += [Role(CLAUSE, k, ROW) for k in range(m)]
    out += [Role(CLAUSE, k, COL) for k in range(m)]
    return out


def _eps(phi: CnfFormula, eps) -> Fraction:
    e = _default_eps(phi.num_vars) if eps is None else to_rational(eps)
    if e <= 0:
        raise ReductionError("eps must be positive")
    return e


def gen_sv(phi: CnfFormula, eps=None) -> ReductionGame:
    """Symmetric game on literals, variables and clauses."""
    _check_formula(phi, "sv")
    e = _eps(phi, eps)
    roles = _literal_roles(phi.num_vars) + _vc_roles(phi, False)
    rg = _build("sv", phi, roles, None, {"eps": e})
    R, C = rg.game.row_payoff, rg.game.col_payoff
    if any(R[a][b] != C[b][a] for a in range(rg.game.n) for b in range(rg.game.n)):
        raise AssertionError("sv game is not symmetric")
    return rg


def _unit_f(n: int) -> tuple:
    return [Role(F, 0)], _FBlock(1, Fraction(2 * n), Fraction(2 * n))


def gen_g(phi: CnfFormula, eps=None) -> ReductionGame:
    """Literals split into row and column copies, shared variables and
    clauses, and one outside option ``f``."""
    _check_formula(phi, "g")
    n = phi.num_vars
    e = _eps(phi, eps)
    froles, fb = _unit_f(n)
    roles = _literal_roles(n, range(1, n + 1)) + _vc_roles(phi, False) + froles
    return _build("g", phi, roles, fb, {"eps": e})


def gen_c(phi: CnfFormula, c: Optional[int] = None, eps=None) -> ReductionGame:
    """``gen_g`` with ``f`` replaced by a cyclic block of ``c`` strategies."""
    _check_formula(phi, "c")
    n = phi.num_vars
    e = _eps(phi, eps)
    c = n + 1 if c is None else int(c)
    if not n < c < 1 / e:
        raise ReductionError(f"c must satisfy n < c < 1/eps ({n} < c < {1 / e}), got {c}")
    K = Fraction(n * n) / e
    roles = _literal_roles(n, range(1, n + 1)) + _vc_roles(phi, False) + [Role(F, k) for k in range(c)]
    return _build("c", phi, roles, _FBlock(c, K, 2 * K), {"eps": e, "c": c, "K": K})


def _h_count(n: int, delta: Fraction, e: Fraction) -> tuple:
    denom = Fraction(1, n) - 2 * e - Fraction(1, n * n)
    if denom <= 0:
        raise ReductionError("eps too large: 1/n - 2 eps - 1/n^2 must be positive")
    i = delta / denom
    return i, min(math.floor(i), n)


def _h_vars(n: int, k: int, seed: Optional[int]) -> list:
    if seed is None:
        return list(range(1, k + 1))
    return sorted(random.Random(seed).sample(range(1, n + 1), k))


def gen_h(phi: CnfFormula, delta, eps=None, seed: Optional[int] = None) -> ReductionGame:
    """Duplicate the literals of ``floor(i)`` variables, ``i = delta / (1/n -
    2 eps - 1/n^2)``; the first ones by default, a seeded sample otherwise."""
    _check_formula(phi, "h")
    n = phi.num_vars
    e = _eps(phi, eps)
    delta = to_rational(delta)
    if not _threshold(n) < delta <= 1:
        raise ReductionError(f"h: delta must lie in ({_threshold(n)}, 1], got {delta}")
    i, k = _h_count(n, delta, e)
    if k == 0:
        warnings.warn("h: floor(i) = 0, no literal is duplicated; emitting the symmetric game")
        roles = _literal_roles(n) + _vc_roles(phi, False)
        return _build("sv", phi, roles, None, {"eps": e, "delta": delta, "i": i, "duplicated": []})
    dup = _h_vars(n, k, seed)
    froles, fb = _unit_f(n)
    roles = _literal_roles(n, dup) + _vc_roles(phi, False) + froles
    return _build("h", phi, roles, fb, {"eps": e, "delta": delta, "i": i, "duplicated": dup, "seed": seed})


def _d_counts(n: int, delta: Fraction) -> int:
    T = _threshold(n)
    if not 0 < delta <= T:
        raise ReductionError(f"delta must lie in (0, {T}], got {delta}")
    d = math.floor(T / delta)
    if d < 1:
        raise ReductionError("d < 1")
    return d


def gen_d(phi: CnfFormula, delta, eps=None) -> ReductionGame:
    """Give variable 1 ``d = floor(T / delta)`` copies per sign, one of them
    split per player; every other literal is shared."""
    _check_formula(phi, "d")
    n = phi.num_vars
    e = _eps(phi, eps)
    delta = to_rational(delta)
    d = _d_counts(n, delta)
    froles, fb = _unit_f(n)
    roles = _literal_roles(n, (), (1, d, 1)) + _vc_roles(phi, False) + froles
    return _build("d", phi, roles, fb, {"eps": e, "delta": delta, "d": d, "i": 1, "target_var": 1})


def gen_r(phi: CnfFormula, delta, eps=None, seed: Optional[int] = None) -> ReductionGame:
    """Literal layout of ``gen_d`` (or ``gen_h`` for large ``delta``) with
    variables, clauses and a cyclic block split per player."""
    _check_formula(phi, "r")
    n = phi.num_vars
    e = _eps(phi, eps)
    delta = to_rational(delta)
    if not 0 < delta <= 1:
        raise ReductionError(f"r: delta must lie in (0, 1], got {delta}")
    params = {"eps": e, "delta": delta}
    if delta <= _threshold(n):
        d = _d_counts(n, delta)
        lits = _literal_roles(n, (), (1, d, 1))
        params.update({"d": d, "i": 1, "target_var": 1})
    else:
        d = 1
        i, k = _h_count(n, delta, e)
        dup = _h_vars(n, k, seed)
        lits = _literal_roles(n, dup)
        params.update({"d": d, "i": i, "duplicated": dup, "seed": seed})
    c = math.ceil(d / delta) + 1
    K = d * Fraction(n * n) / (delta * e)
    froles = [Role(F, k, ROW) for k in range(c)] + [Role(F, k, COL) for k in range(c)]
    params.update({"c": c, "K": K, "theta": delta / d})
    roles = lits + _vc_roles(phi, True) + froles
    return _build("r", phi, roles, _FBlock(c, K, 2 * K), params)


GENERATORS = {"sv": gen_sv, "g": gen_g, "c": gen_c, "h": gen_h, "d": gen_d, "r": gen_r}


def _player_strategy(rg: ReductionGame, assignment, player: str) -> MixedStrategy:
    n = rg.n
    probs = [Fraction(0)] * rg.game.n
    for v in range(1, n + 1):
        lit = v if assignment[v - 1] else -v
        idx = rg.indices(LIT, lit, player)
        if not idx:
            raise GameError(f"no {player} strategy represents literal {lit}")
        share = Fraction(1, n * len(idx))
        for k in idx:
            probs[k] = share
    return MixedStrategy(tuple(probs))


def assignment_to_profile(rg: ReductionGame, assignment) -> Profile:
    """Each player puts ``1/n`` on the chosen literal of every variable,
    spread evenly over the copies that player may use."""
    if len(assignment) != rg.n:
        raise GameError(f"assignment has {len(assignment)} entries, formula has {rg.n} variables")
    return Profile(_player_strategy(rg, assignment, ROW), _player_strategy(rg, assignment, COL))


def profile_to_assignment(rg: ReductionGame, profile: Profile, player: str = ROW) -> tuple:
    """Variable ``v`` is true iff ``player`` puts at least as much mass on
    copies of ``v`` as on copies of ``-v``."""
    s = profile.strategy(player)
    if len(s) != rg.game.n:
        raise GameError("profile dimension does not match the reduction game")
    out = []
    for v in range(1, rg.n + 1):
        pos = sum((s[k] for k in rg.indices(LIT, v)), Fraction(0))
        neg = sum((s[k] for k in rg.indices(LIT, -v)), Fraction(0))
        out.append(pos >= neg)
    return tuple(out)


class AssignmentFilter:
    """Support filter restricting each player to the literal copies of one
    truth assignment (one sign per variable)."""

    name = "assignment"

    def __init__(self, rg: ReductionGame):
        self.rg = rg

    def supports(self, player: str) -> list:
        from itertools import product

        out = []
        for bits in product((True, False), repeat=self.rg.n):
            idx = []
            for v, b in enumerate(bits, 1):
                idx += self.rg.indices(LIT, v if b else -v, player)
            out.append(tuple(sorted(idx)))
        return out

    def candidates(self, player: str) -> list:
        return self.supports(player)

    def __call__(self, I, J) -> bool:
        return True


def assignment_filter(rg: ReductionGame) -> AssignmentFilter:
    return AssignmentFilter(rg)
