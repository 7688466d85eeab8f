import random
from fractions import Fraction as F

import pytest

from examples_games import RPS, NO_DISJOINT, BACH, prof, pure, random_int_game, random_simplex, uniform
from grid_oracle import grid_max
from farnash.construct import greedy_constrained_disjoint
from farnash.game import COL, ROW, BimatrixGame, MixedStrategy, Profile, l1_distance
from farnash.verify import (
    ConstraintSpec,
    InfeasibleConstraint,
    check_constraint,
    constrained_disjoint_regrets,
    constrained_far_regrets,
    constrained_regret_disjoint,
    constrained_regret_far,
    is_eps_nash,
    max_payoff_far,
    regret,
    regret_report,
    regret_with_witness,
)


def test_regret_rps_uniform_zero():
    p = Profile(uniform(3), uniform(3))
    assert regret(RPS, p, ROW) == 0 and regret(RPS, p, COL) == 0


def test_regret_no_disjoint_game_col_deviation_with_witness():
    p = Profile(pure(0, 2), pure(1, 2))
    assert regret_with_witness(NO_DISJOINT, p, COL) == (1, 0)
    assert regret(NO_DISJOINT, p, ROW) == 0
    rep = regret_report(NO_DISJOINT, p)
    assert rep.col_regret == 1 and rep.col_witness == 0


def test_regret_constant_game_zero():
    g = BimatrixGame.from_matrices([[2, 2], [2, 2]], [[2, 2], [2, 2]])
    p = prof(["1/4", "3/4"], ["1/4", "3/4"])
    assert regret(g, p, ROW) == regret(g, p, COL) == 0


def test_is_eps_nash_examples():
    assert is_eps_nash(BACH, prof(["2/3", "1/3"], ["1/3", "2/3"]), 0)
    assert is_eps_nash(NO_DISJOINT, Profile(pure(1, 2), pure(1, 2)), 0)
    assert not is_eps_nash(NO_DISJOINT, Profile(pure(0, 2), pure(1, 2)), F(1, 2))
    assert is_eps_nash(NO_DISJOINT, Profile(pure(0, 2), pure(1, 2)), 1)
    with pytest.raises(ValueError):
        is_eps_nash(NO_DISJOINT, Profile(pure(0, 2), pure(1, 2)), -1)


def test_check_constraint_examples():
    p = Profile(pure(0, 3), pure(1, 3))
    assert check_constraint(p, ConstraintSpec.disjoint(), 3)
    assert not check_constraint(p, ConstraintSpec.partition(), 3)
    assert not check_constraint(Profile(uniform(3), uniform(3)), ConstraintSpec.disjoint(), 3)
    assert check_constraint(prof(["2/3", "1/3"], ["1/3", "2/3"]), ConstraintSpec.far("1/3"), 2)
    assert not check_constraint(prof(["2/3", "1/3"], ["1/3", "2/3"]), ConstraintSpec.far("1/2"), 2)
    assert check_constraint(prof(["1/2", "1/2", 0], [0, 0, 1]), ConstraintSpec.partition(), 3)


def test_check_constraint_major_and_semi():
    p = prof(["1/2", "1/2", 0], ["1/10", "9/10", 0])
    assert check_constraint(p, ConstraintSpec.major("1/20"), 3)
    assert not check_constraint(p, ConstraintSpec.major("1/10"), 3)  # strict
    assert not check_constraint(p, ConstraintSpec.semi(5), 3)  # strategy 1 is major for both
    q = prof(["1/2", "1/2", 0], ["1/10", 0, "9/10"])
    assert check_constraint(q, ConstraintSpec.semi(5), 3)
    assert not check_constraint(q, ConstraintSpec.semi(10), 3)  # strict


def test_constraint_spec_validation_and_parse():
    assert ConstraintSpec.parse("far:1/3") == ConstraintSpec.far(F(1, 3))
    assert str(ConstraintSpec.parse("semi:100")) == "semi:100"
    for bad in ["far:2", "major:1", "semi:0", "far", "disjoint:1", "nope", "far:0.5"]:
        with pytest.raises(ValueError):
            ConstraintSpec.parse(bad)


def test_constrained_disjoint_rps_spec_profile():
    # row on rock, column (0, 1 - eps, eps): the row's only feasible deviation
    # is rock itself; the column may use paper or scissors and paper beats
    # its current mix by 2 eps
    eps = F(1, 100)
    p = Profile(pure(0, 3), MixedStrategy((0, 1 - eps, eps)))
    assert constrained_regret_disjoint(RPS, p, ROW) == 0
    assert constrained_regret_disjoint(RPS, p, COL) == 2 * eps


def test_constrained_disjoint_greedy_rps_profile_is_within_eps_scaled():
    eps = F(1, 100)
    p = Profile(MixedStrategy((0, 1 - eps, eps)), pure(0, 3))
    assert constrained_regret_disjoint(RPS, p, COL) == 0
    assert constrained_regret_disjoint(RPS, p, ROW) == 2 * eps  # range of RPS is 2


def test_constrained_disjoint_no_disjoint_game_row():
    p = Profile(pure(0, 2), pure(1, 2))
    assert constrained_regret_disjoint(NO_DISJOINT, p, ROW) == 0


def test_constrained_disjoint_empty_feasible_set_flag():
    p = Profile(pure(0, 3), uniform(3))
    rep = constrained_disjoint_regrets(RPS, p)
    assert rep.row_regret == 0 and rep.row_empty and not rep.col_empty
    assert rep.to_json()["empty_feasible_set"] == {"row": True, "col": False}


def test_max_payoff_far_examples():
    y = MixedStrategy((1, 0))
    assert max_payoff_far([1, 0], y, F(1, 2)) == (F(1, 2), MixedStrategy((F(1, 2), F(1, 2))))
    val, w = max_payoff_far([3, 5, 1], uniform(3), 0)
    assert val == 5 and w == pure(1, 3)
    val, _ = max_payoff_far([7, 7, 7], random_simplex(random.Random(0), 3), F(1, 5))
    assert val == 7


def test_max_payoff_far_infeasible():
    with pytest.raises(InfeasibleConstraint):
        max_payoff_far([1, 2, 3], uniform(3), 1)
    with pytest.raises(ValueError):
        max_payoff_far([1, 2], uniform(2), F(3, 2))


def test_max_payoff_far_witness_is_feasible_and_attains_value():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(2, 4)
        y = random_simplex(rng, n, sparse=0.3)
        top = 1 - min(y)
        delta = top * F(rng.randint(0, 20), 20)
        c = [F(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]
        val, w = max_payoff_far(c, y, delta)
        assert l1_distance(w, y) >= 2 * delta
        assert sum(a * b for a, b in zip(c, w)) == val


def test_max_payoff_far_matches_grid_oracle_small():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(2, 3)
        y = random_simplex(rng, n)
        delta = (1 - min(y)) * F(rng.randint(0, 10), 10)
        c = [F(rng.randint(0, 20), 20) for _ in range(n)]
        val, _ = max_payoff_far(c, y, delta)
        gval, _ = grid_max(c, y, delta, res=200)
        if gval is None:
            continue
        assert float(val) >= gval - 1e-12
        assert float(val) <= gval + float(max(c) - min(c)) / 200 + 1e-12


def test_max_payoff_far_monotone_in_delta():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(2, 4)
        y = random_simplex(rng, n)
        c = [rng.randint(-5, 5) for _ in range(n)]
        top = 1 - min(y)
        deltas = sorted(top * F(rng.randint(0, 12), 12) for _ in range(4))
        vals = [max_payoff_far(c, y, d)[0] for d in deltas]
        assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_far_regret_delta_zero_equals_regret():
    rng = random.Random(6)
    for _ in range(100):
        n = rng.randint(2, 4)
        g = random_int_game(rng, n)
        p = Profile(random_simplex(rng, n), random_simplex(rng, n))
        for pl in (ROW, COL):
            assert constrained_regret_far(g, p, 0, pl) == regret(g, p, pl)


def test_far_regret_rps_examples():
    with pytest.raises(InfeasibleConstraint):
        constrained_regret_far(RPS, Profile(uniform(3), uniform(3)), 1, ROW)
    p = Profile(pure(0, 3), pure(1, 3))  # rock vs paper: scissors is feasible and wins
    assert constrained_regret_far(RPS, p, 1, ROW) == 2
    rep = constrained_far_regrets(RPS, p, 1)
    assert rep.row_witness == pure(2, 3)


def test_far_regret_of_greedy_output_at_delta_one():
    eps = F(1, 100)
    cert = greedy_constrained_disjoint(RPS, eps, 0)
    lo, hi = RPS.payoff_range
    for pl in (ROW, COL):
        assert constrained_regret_far(RPS, cert.profile, 1, pl) <= eps * (hi - lo)


def test_constraint_implications():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(2, 4)
        p = Profile(random_simplex(rng, n, sparse=0.5), random_simplex(rng, n, sparse=0.5))
        if check_constraint(p, ConstraintSpec.partition(), n):
            assert check_constraint(p, ConstraintSpec.disjoint(), n)
        if check_constraint(p, ConstraintSpec.disjoint(), n):
            assert check_constraint(p, ConstraintSpec.far(1), n)
        M = F(rng.randint(n, 30))
        if check_constraint(p, ConstraintSpec.semi(M), n):
            assert check_constraint(p, ConstraintSpec.far(1 - n / M), n)


def test_regret_report_json_is_exact_strings():
    rep = regret_report(NO_DISJOINT, Profile(pure(0, 2), pure(1, 2)))
    assert rep.to_json() == {"row_regret": "0", "col_regret": "1", "row_witness": 0, "col_witness": 0}
