"""Exact equilibrium enumeration by support enumeration.

Each candidate support pair ``(I, J)`` yields two small linear systems: the
row mix on ``I`` must make the column player indifferent across ``J`` and
vice versa. The systems are solved over the integers by the kernels in
:mod:`farnash.kernels`; surviving candidates are checked for profitable
deviations with exact integer comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Callable, Optional

from . import kernels
from .game import BimatrixGame, MixedStrategy, Profile
from .verify import ConstraintSpec, check_constraint

MAX_EXHAUSTIVE_N = 14


class SearchTooLarge(ValueError):
    """Exhaustive enumeration requested beyond the supported game size."""


@dataclass
class EquilibriumSet:
    equilibria: list
    exhaustive: bool
    search_bounds: dict = field(default_factory=dict)
    degenerate: list = field(default_factory=list)

    def __len__(self):
        return len(self.equilibria)

    def __iter__(self):
        return iter(self.equilibria)

    def __bool__(self):
        return bool(self.equilibria)

    def to_json(self) -> dict:
        return {
            "equilibria": [p.to_json() for p in self.equilibria],
            "degenerate": list(self.degenerate),
            "exhaustive": self.exhaustive,
            "search_bounds": self.search_bounds,
        }


def _lex_subsets(indices, max_size):
    """All nonempty subsets of ``indices`` up to ``max_size``, sorted lexicographically."""
    out = []
    for k in range(1, max_size + 1):
        out.extend(combinations(indices, k))
    out.sort()
    return out


def _support_pairs(rows, cols, max_support, support_filter):
    """Yield ``(I, J)`` in canonical order ``(|I| + |J|, I, J)``."""
    ms_r = min(max_support, len(rows))
    ms_c = min(max_support, len(cols))
    cand = getattr(support_filter, "candidates", None)
    if cand is not None:
        row_sets = sorted(s for s in cand("row") if len(s) <= ms_r)
        col_sets = sorted(s for s in cand("col") if len(s) <= ms_c)
        pairs = [(I, J) for I in row_sets for J in col_sets]
        pairs.sort(key=lambda p: (len(p[0]) + len(p[1]), p[0], p[1]))
        for I, J in pairs:
            if support_filter(I, J):
                yield I, J
        return
    row_sets = _lex_subsets(rows, ms_r)
    col_by_size = {k: list(combinations(cols, k)) for k in range(1, ms_c + 1)}
    for total in range(2, ms_r + ms_c + 1):
        for I in row_sets:
            Js = col_by_size.get(total - len(I))
            if not Js:
                continue
            for J in Js:
                if support_filter is None or support_filter(I, J):
                    yield I, J


def _iterated_dominance(R, C, rows, cols):
    """Remove pure strategies strictly dominated by another pure strategy."""
    rows, cols = list(rows), list(cols)
    changed = True
    while changed:
        changed = False
        for q in list(rows):
            if any(p != q and all(R[p][j] > R[q][j] for j in cols) for p in rows):
                rows.remove(q)
                changed = True
        for q in list(cols):
            if any(p != q and all(C[i][p] > C[i][q] for i in rows) for p in cols):
                cols.remove(q)
                changed = True
    return tuple(rows), tuple(cols)


def _solve_pair(mats, I, J):
    """Solve both indifference systems; return ``(xs, ys)`` or ``None``."""
    R, RT, C, CT = mats
    xs = kernels.solve_indifference(C, I, J)
    if xs is None:
        return None
    ys = kernels.solve_indifference(RT, J, I)
    if ys is None:
        return None
    return xs, ys


def _rref(rows, ncols):
    """Reduced row echelon form over Fractions; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    piv, r = [], 0
    for c in range(ncols):
        p = next((q for q in range(r, len(rows)) if rows[q][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [a / lead for a in rows[r]]
        for q in range(len(rows)):
            if q != r and rows[q][c]:
                f = rows[q][c]
                rows[q] = [a - f * b for a, b in zip(rows[q], rows[r])]
        piv.append(c)
        r += 1
    return rows[:r], piv


def _central_solution(M, weights, equations):
    """Solution of a degenerate indifference system closest (in L2) to the
    uniform mix on ``weights``, as ``(nums, v_num, den)``, or ``None`` if it
    has a negative weight."""
    k = len(weights)
    rows = [[Fraction(M[i][j]) for i in weights] + [Fraction(-1), Fraction(0)] for j in equations]
    rows.append([Fraction(1)] * k + [Fraction(0), Fraction(1)])
    red, piv = _rref(rows, k + 1)
    free = [c for c in range(k + 1) if c not in piv]
    part = [Fraction(0)] * (k + 1)
    for row, c in zip(red, piv):
        part[c] = row[-1]
    basis = []
    for f in free:
        vec = [Fraction(0)] * (k + 1)
        vec[f] = Fraction(1)
        for row, c in zip(red, piv):
            vec[c] = -row[f]
        basis.append(vec)
    u = Fraction(1, k)
    gram = [[sum(a[t] * b[t] for t in range(k)) for b in basis] for a in basis]
    rhs = [sum(a[t] * (u - part[t]) for t in range(k)) for a in basis]
    sol_rows, sol_piv = _rref([g + [r] for g, r in zip(gram, rhs)], len(basis))
    if len(sol_piv) < len(basis):
        return None
    coef = [Fraction(0)] * len(basis)
    for row, c in zip(sol_rows, sol_piv):
        coef[c] = row[-1]
    z = [part[t] + sum(cf * b[t] for cf, b in zip(coef, basis)) for t in range(k + 1)]
    if any(w < 0 for w in z[:k]):
        return None
    den = 1
    for w in z:
        den = den * w.denominator // gcd(den, w.denominator)
    return [int(w * den) for w in z[:k]], int(z[k] * den), den


def _candidates(M, weights, equations, basic):
    """Basic solution first; for degenerate systems also the central one."""
    nums, v, den, deg = basic
    out = [(nums, v, den)]
    if deg:
        central = _central_solution(M, weights, equations)
        if central is not None and central != out[0]:
            out.append(central)
    return out


def _to_strategy(n, idx, nums, den):
    probs = [Fraction(0)] * n
    for a, w in zip(idx, nums):
        if w:
            probs[a] = Fraction(w, den)
    return MixedStrategy(tuple(probs))


def _deviation_ok(M, nums, sup, v_num, allowed):
    pay = kernels.payoff_numerators(M, nums, sup)
    return all(pay[q] <= v_num for q in allowed)


def _run(game, max_support, support_filter, prune_dominated, accept):
    n = game.n
    if max_support is None and support_filter is None and n > MAX_EXHAUSTIVE_N:
        raise SearchTooLarge(
            f"exhaustive enumeration is limited to n <= {MAX_EXHAUSTIVE_N}; "
            f"pass max_support or a support filter (n = {n})"
        )
    mats = game.integer_matrices
    R, RT, C, CT = mats
    rows = cols = tuple(range(n))
    if prune_dominated and support_filter is None:
        rows, cols = _iterated_dominance(R, C, rows, cols)
    bound = n if max_support is None else max_support
    found, flags, seen = [], [], set()
    for I, J in _support_pairs(rows, cols, bound, support_filter):
        sol = _solve_pair(mats, I, J)
        if sol is None:
            continue
        xs, ys = sol
        xdeg, ydeg = xs[3], ys[3]
        hit = None
        for xn, xv, xd in _candidates(C, I, J, xs):
            for yn, yv, yd in _candidates(RT, J, I, ys):
                if accept(mats, I, J, xn, xv, yn, yv):
                    hit = (xn, xd, yn, yd)
                    break
            if hit:
                break
        if hit is None:
            continue
        xn, xd, yn, yd = hit
        prof = Profile(_to_strategy(n, I, xn, xd), _to_strategy(n, J, yn, yd))
        key = (prof.x.probs, prof.y.probs)
        if key in seen:
            continue
        seen.add(key)
        found.append(prof)
        flags.append(bool(xdeg or ydeg))
    truncated = max_support is not None and max_support < n
    bounds = {
        "max_support": max_support,
        "support_filter": getattr(support_filter, "name", None if support_filter is None else "custom"),
        "pruned_dominated": bool(prune_dominated and support_filter is None),
    }
    return EquilibriumSet(found, not truncated and support_filter is None, bounds, flags)


def enumerate_nash(
    game: BimatrixGame,
    max_support: Optional[int] = None,
    support_filter: Optional[Callable] = None,
    prune_dominated: bool = False,
) -> EquilibriumSet:
    """All exact Nash equilibria reachable by support enumeration.

    ``support_filter(I, J)`` restricts the visited support pairs; it may also
    expose ``candidates(player)`` to generate per-player supports directly.
    ``prune_dominated`` first removes iteratively strictly dominated pure
    strategies, which no equilibrium uses.
    """
    n = game.n
    full = tuple(range(n))

    def accept(mats, I, J, xn, xv, yn, yv):
        R, RT, C, CT = mats
        return _deviation_ok(R, yn, J, yv, full) and _deviation_ok(CT, xn, I, xv, full)

    return _run(game, max_support, support_filter, prune_dominated, accept)


def fully_mixed_nash(game: BimatrixGame) -> Optional[Profile]:
    """The full-support equilibrium if both indifference systems have a
    strictly positive solution, else ``None``."""
    n = game.n
    full = tuple(range(n))
    sol = _solve_pair(game.integer_matrices, full, full)
    if sol is None:
        return None
    R, RT, C, CT = game.integer_matrices
    xs = [c for c in _candidates(C, full, full, sol[0]) if all(c[0])]
    ys = [c for c in _candidates(RT, full, full, sol[1]) if all(c[0])]
    if not xs or not ys:
        return None
    (xn, _, xd), (yn, _, yd) = xs[0], ys[0]
    return Profile(_to_strategy(n, full, xn, xd), _to_strategy(n, full, yn, yd))


def filter_nash_by_constraint(
    game: BimatrixGame,
    spec: ConstraintSpec,
    max_support: Optional[int] = None,
    support_filter: Optional[Callable] = None,
    prune_dominated: bool = False,
) -> EquilibriumSet:
    """Nash equilibria satisfying ``spec``; ``exhaustive`` carries over."""
    base = enumerate_nash(game, max_support, support_filter, prune_dominated)
    keep = [i for i, p in enumerate(base.equilibria) if check_constraint(p, spec, game.n)]
    bounds = dict(base.search_bounds, constraint=str(spec))
    return EquilibriumSet(
        [base.equilibria[i] for i in keep], base.exhaustive, bounds, [base.degenerate[i] for i in keep]
    )


def enumerate_constrained_disjoint(
    game: BimatrixGame,
    max_support: Optional[int] = None,
) -> EquilibriumSet:
    """Exact constrained equilibria where each player may only deviate to
    strategies outside the opponent's support. These need not be Nash."""
    n = game.n

    def disjoint(I, J):
        return not set(I) & set(J)

    disjoint.name = "disjoint"

    def accept(mats, I, J, xn, xv, yn, yv):
        R, RT, C, CT = mats
        sx = {a for a, w in zip(I, xn) if w}
        sy = {a for a, w in zip(J, yn) if w}
        row_ok = _deviation_ok(R, yn, J, yv, [q for q in range(n) if q not in sy])
        return row_ok and _deviation_ok(CT, xn, I, xv, [q for q in range(n) if q not in sx])

    res = _run(game, max_support, disjoint, False, accept)
    res.exhaustive = max_support is None or max_support >= n
    res.search_bounds["support_filter"] = "disjoint"
    return res


__all__ = [
    "EquilibriumSet",
    "SearchTooLarge",
    "enumerate_nash",
    "fully_mixed_nash",
    "filter_nash_by_constraint",
    "enumerate_constrained_disjoint",
]
