"""Command-line front end.

Exit codes: 0 found/true, 1 not found/false, 2 usage or data error. Errors
are written to standard error as a JSON object with a ``code`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .construct import ConstructionError, greedy_constrained_disjoint, make_far, semi_to_constrained_far
from .game import BimatrixGame, GameError, Profile, l1_distance, load_json, scale_payoffs, to_rational
from .reduce import GENERATORS, DimacsError, ReductionError, ReductionGame, assignment_filter, parse_dimacs
from .solve import SearchTooLarge, enumerate_constrained_disjoint, enumerate_nash, filter_nash_by_constraint
from .transform import diagonal_modify, duplicate_strategies
from .verify import (
    ConstraintSpec,
    InfeasibleConstraint,
    check_constraint,
    constrained_disjoint_regrets,
    constrained_far_regrets,
    regret_report,
)

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message)


def _rational(text):
    try:
        return to_rational(text)
    except GameError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _constraint(text):
    try:
        return ConstraintSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _index_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated indices, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="farnash", description="Exact equilibria of bimatrix games with strategic constraints.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("-o", "--output", default="-", help="output path ('-' for standard output)")

    s = sub.add_parser("solve", help="enumerate exact equilibria")
    s.add_argument("game")
    s.add_argument("--constraint", type=_constraint)
    s.add_argument("--notion", choices=("nash", "constrained"), default="nash")
    s.add_argument("--max-support", type=int)
    s.add_argument("--support-filter", choices=("assignment",))
    common(s)

    v = sub.add_parser("verify", help="check a profile against an equilibrium notion")
    v.add_argument("game")
    v.add_argument("profile")
    v.add_argument("--eps", type=_rational, required=True)
    v.add_argument("--constraint", type=_constraint)
    v.add_argument("--notion", choices=("nash", "constrained"), default="nash")
    common(v)

    c = sub.add_parser("construct", help="build a certified approximate equilibrium")
    c.add_argument("game")
    mode = c.add_mutually_exclusive_group(required=True)
    mode.add_argument("--far", type=_rational, metavar="DELTA")
    mode.add_argument("--greedy-disjoint", type=_rational, metavar="EPS")
    mode.add_argument("--semi-to-far", type=_rational, metavar="M")
    c.add_argument("--ne", help="equilibrium profile (for --far and --semi-to-far)")
    c.add_argument("--anchor", type=int, default=0)
    common(c)

    t = sub.add_parser("transform", help="derive a new game")
    t.add_argument("game")
    tm = t.add_mutually_exclusive_group(required=True)
    tm.add_argument("--diag-modify", type=_rational, metavar="M")
    tm.add_argument("--duplicate", action="store_true")
    tm.add_argument("--scale", action="store_true")
    t.add_argument("--subset", type=_index_list)
    t.add_argument("--sigma", type=_rational)
    common(t)

    r = sub.add_parser("reduce", help="compile a DIMACS CNF formula into a reduction game")
    r.add_argument("cnf")
    r.add_argument("--game", choices=tuple(GENERATORS), required=True)
    r.add_argument("--delta", type=_rational)
    r.add_argument("--eps", type=_rational)
    r.add_argument("--c", type=int)
    r.add_argument("--seed", type=int)
    common(r)

    d = sub.add_parser("distance", help="L1 distance between the two strategies of a profile")
    d.add_argument("profile")
    common(d)
    return p


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _game(path) -> BimatrixGame:
    return BimatrixGame.from_json(load_json(path))


def _profile(path) -> Profile:
    return Profile.from_json(load_json(path))


def _emit(obj, path: str) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _cmd_solve(a):
    game = _game(a.game)
    filt = None
    if a.support_filter == "assignment":
        filt = assignment_filter(ReductionGame.from_game(game))
    if a.notion == "constrained":
        if a.constraint is None or a.constraint.kind != "disjoint":
            raise CliError("unsupported", "--notion constrained enumeration supports only --constraint disjoint")
        if filt is not None:
            raise CliError("unsupported", "--support-filter is not available for constrained enumeration")
        res = enumerate_constrained_disjoint(game, a.max_support)
    elif a.constraint is not None:
        res = filter_nash_by_constraint(game, a.constraint, a.max_support, filt, prune_dominated=True)
    else:
        res = enumerate_nash(game, a.max_support, filt, prune_dominated=True)
    return res.to_json(), EXIT_TRUE if res.equilibria else EXIT_FALSE


def _cmd_verify(a):
    game, prof = _game(a.game), _profile(a.profile)
    if a.eps < 0:
        raise CliError("bad_value", "--eps must be nonnegative")
    out = {"notion": a.notion}
    ok = True
    if a.notion == "constrained":
        if a.constraint is None or a.constraint.kind not in ("disjoint", "far"):
            raise CliError("unsupported", "--notion constrained requires --constraint disjoint or far:<r>")
        if a.constraint.kind == "disjoint":
            report = constrained_disjoint_regrets(game, prof)
        else:
            report = constrained_far_regrets(game, prof, a.constraint.param)
    else:
        report = regret_report(game, prof)
        if a.constraint is not None:
            holds = check_constraint(prof, a.constraint, game.n)
            out["constraint"] = {"spec": str(a.constraint), "holds": holds}
            ok = holds
    out["regret"] = report.to_json()
    out["eps"] = str(a.eps)
    ok = ok and report.max_regret <= a.eps
    out["result"] = ok
    return out, EXIT_TRUE if ok else EXIT_FALSE


def _cmd_construct(a):
    game = _game(a.game)
    if a.greedy_disjoint is not None:
        cert = greedy_constrained_disjoint(game, a.greedy_disjoint, a.anchor)
    else:
        if not a.ne:
            raise CliError("usage", "--ne <profile> is required for --far and --semi-to-far")
        ne = _profile(a.ne)
        if a.far is not None:
            cert = make_far(game, ne, a.far)
        else:
            cert = semi_to_constrained_far(game, a.semi_to_far, ne)
    out = cert.to_json()
    out["measured_regret"] = str(cert.measured_regret(game))
    return out, EXIT_TRUE


def _cmd_transform(a):
    game = _game(a.game)
    if a.diag_modify is not None:
        return diagonal_modify(game, a.diag_modify).to_json(), EXIT_TRUE
    if a.scale:
        return scale_payoffs(game)[0].to_json(), EXIT_TRUE
    subset = range(game.n) if a.subset is None else a.subset
    derived, _ = duplicate_strategies(game, subset, a.sigma)
    return derived.to_json(), EXIT_TRUE


def _cmd_reduce(a):
    phi = parse_dimacs(_read_text(a.cnf))
    kind = a.game
    kwargs = {"eps": a.eps}
    if kind in ("h", "d", "r"):
        if a.delta is None:
            raise CliError("usage", f"--delta is required for --game {kind}")
        kwargs["delta"] = a.delta
    if kind in ("h", "r"):
        kwargs["seed"] = a.seed
    if kind == "c":
        kwargs["c"] = a.c
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rg = GENERATORS[kind](phi, **kwargs)
    for w in caught:
        sys.stderr.write(json.dumps({"warning": str(w.message)}) + "\n")
    return rg.game.to_json(), EXIT_TRUE


def _cmd_distance(a):
    prof = _profile(a.profile)
    return {"l1_distance": str(l1_distance(prof.x, prof.y))}, EXIT_TRUE


COMMANDS = {
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "construct": _cmd_construct,
    "transform": _cmd_transform,
    "reduce": _cmd_reduce,
    "distance": _cmd_distance,
}

_ERROR_CODES = (
    (CliError, None),
    (DimacsError, None),
    (InfeasibleConstraint, "infeasible"),
    (ConstructionError, "precondition"),
    (ReductionError, "bad_parameter"),
    (SearchTooLarge, "search_too_large"),
    (GameError, "bad_data"),
    (json.JSONDecodeError, "bad_json"),
    (OSError, "io"),
    (ValueError, "bad_value"),
)


def run(argv=None) -> int:
    """Run one command; returns the process exit code."""
    try:
        a = build_parser().parse_args(argv)
        out, code = COMMANDS[a.command](a)
        _emit(out, a.output)
        return code
    except Exception as exc:  # mapped to a machine-readable error below
        for cls, tag in _ERROR_CODES:
            if isinstance(exc, cls):
                tag = tag or getattr(exc, "code", "error")
                sys.stderr.write(json.dumps({"error": tag, "message": str(exc)}) + "\n")
                return EXIT_ERROR
        raise


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
