import random
from fractions import Fraction as F

import pytest

from examples_games import COORD, RPS, prof, pure, random_simplex, random_unit_game, uniform
from farnash.construct import (
    CONSTRAINED_DISJOINT,
    CONSTRAINED_FAR,
    NASH,
    ConstructionError,
    greedy_constrained_disjoint,
    make_far,
    redistribute,
    semi_to_constrained_far,
)
from farnash.game import COL, ROW, BimatrixGame, GameError, MixedStrategy, Profile, expected_payoff, l1_distance, scale_payoffs, support
from farnash.solve import enumerate_nash, fully_mixed_nash
from farnash.transform import diagonal_modify
from farnash.verify import ConstraintSpec, check_constraint, constrained_regret_disjoint, constrained_regret_far, regret


def test_redistribute_empty_and_formula():
    x = MixedStrategy((F(1), F(0), F(0)))
    assert redistribute(x, [], (0, 1)) == (x, 0)
    x2, b = redistribute(x, [(0, (1, 2), F(1, 10))], (F(-1), F(3)))
    assert b == 2 * F(1, 10) * 4
    assert x2.probs == (F(9, 10), F(1, 20), F(1, 20))


def test_redistribute_rejects_overdraw():
    with pytest.raises(GameError):
        redistribute(MixedStrategy((F(1, 2), F(1, 2))), [(0, 1, F(3, 4))], (0, 1))


def test_redistribute_bound_on_random_equilibria():
    rng = random.Random(10)
    for _ in range(150):
        g = random_unit_game(rng, 4)
        ne = enumerate_nash(g, prune_dominated=True).equilibria[0]
        src = rng.choice(sorted(support(ne.x)))
        mass = min(ne.x[src], F(rng.randint(1, 25), 100))
        dst = rng.sample([i for i in range(4) if i != src], rng.randint(1, 3))
        x2, bound = redistribute(ne.x, [(src, dst, mass)], g.payoff_range)
        assert sum(x2.probs) == 1
        p2 = Profile(x2, ne.y)
        assert max(regret(g, p2, ROW), regret(g, p2, COL)) <= bound
        for pl in (ROW, COL):
            assert abs(expected_payoff(g, p2, pl) - expected_payoff(g, ne, pl)) <= bound


def test_make_far_coordination_example():
    cert = make_far(COORD, Profile(uniform(2), uniform(2)), F(1, 2))
    assert cert.profile == prof([0, 1], ["1/2", "1/2"])
    assert l1_distance(cert.profile.x, cert.profile.y) == 1
    assert (regret(COORD, cert.profile, ROW), regret(COORD, cert.profile, COL)) == (0, F(1, 2))
    assert cert.regret_bound == 2 and cert.bound_kind == NASH


def test_make_far_trivial_cases():
    far = Profile(pure(0, 2), pure(1, 2))
    opp = BimatrixGame.from_matrices([[0, 1], [1, 0]], [[0, 1], [1, 0]])
    assert make_far(opp, far, F(1, 2)).regret_bound == 0
    ne = Profile(uniform(2), uniform(2))
    c0 = make_far(COORD, ne, 0)
    assert c0.profile == ne and c0.regret_bound == 0


def test_make_far_rejects_non_equilibrium_and_large_delta():
    with pytest.raises(ConstructionError):
        make_far(COORD, Profile(pure(0, 2), pure(1, 2)), F(1, 4))
    with pytest.raises(ConstructionError):
        make_far(COORD, Profile(pure(0, 2), pure(0, 2)), F(3, 2))


def test_make_far_property():
    rng = random.Random(11)
    for _ in range(120):
        n = rng.choice((2, 3, 4))
        g = random_unit_game(rng, n)
        ne = enumerate_nash(g, prune_dominated=True).equilibria[-1]
        d = F(1, 2 * n)
        cert = make_far(g, ne, d)
        if cert.profile == ne:
            assert l1_distance(ne.x, ne.y) >= 2 * d and cert.regret_bound == 0
        else:
            assert l1_distance(cert.profile.x, cert.profile.y) == 2 * d
        assert cert.measured_regret(g) <= cert.regret_bound <= 4 * d


def test_greedy_rps():
    eps = F(1, 100)
    cert = greedy_constrained_disjoint(RPS, eps, anchor=0)
    assert cert.profile == prof([0, 1 - eps, eps], [1, 0, 0])
    assert cert.bound_kind == CONSTRAINED_DISJOINT
    assert constrained_regret_disjoint(RPS, cert.profile, COL) == 0
    assert constrained_regret_disjoint(RPS, cert.profile, ROW) <= eps * 2


def test_greedy_two_strategies_exact():
    rng = random.Random(12)
    for _ in range(50):
        g = random_unit_game(rng, 2)
        cert = greedy_constrained_disjoint(g, F(1, 3), anchor=rng.randrange(2))
        assert cert.regret_bound == 0 and cert.measured_regret(g) == 0
        assert check_constraint(cert.profile, ConstraintSpec.disjoint())


def test_greedy_property_five_by_five():
    rng = random.Random(13)
    for _ in range(200):
        g = random_unit_game(rng, 5)
        eps = F(1, rng.randint(2, 10**6))
        cert = greedy_constrained_disjoint(g, eps, anchor=rng.randrange(5))
        p = cert.profile
        assert not set(support(p.x)) & set(support(p.y)) and len(support(p.y)) == 1
        assert sum(p.x.probs) == 1
        assert constrained_regret_disjoint(g, p, ROW) <= eps
        assert constrained_regret_disjoint(g, p, COL) == 0


def test_greedy_preconditions():
    with pytest.raises(ConstructionError):
        greedy_constrained_disjoint(BimatrixGame.from_matrices([[1]], [[1]]), F(1, 10))
    with pytest.raises(ConstructionError):
        greedy_constrained_disjoint(RPS, 0)


def test_semi_bound_formula_and_disjoint_input():
    # identity coordination in D^30 has pure-anticoordination equilibria
    g = BimatrixGame.from_matrices([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    ne = Profile(pure(0, 3), pure(1, 3))
    assert regret(diagonal_modify(g, 30), ne, ROW) == 0
    cert = semi_to_constrained_far(g, 30, ne)
    assert cert.regret_bound == F(3, 5) and cert.delta == F(9, 10)
    assert cert.profile == ne and cert.bound_kind == CONSTRAINED_FAR
    assert cert.measured_regret(g) <= cert.regret_bound


def test_semi_rejects_bad_input():
    g = COORD
    with pytest.raises(ConstructionError):
        semi_to_constrained_far(g, 1, Profile(pure(0, 2), pure(1, 2)))
    with pytest.raises(ConstructionError):
        semi_to_constrained_far(g, 10, Profile(uniform(2), uniform(2)))


def test_semi_structure_on_random_games():
    rng = random.Random(14)
    M = F(100)
    converted = 0
    for _ in range(60):
        g = random_unit_game(rng, 3)
        dm = diagonal_modify(g, M)
        for ne in enumerate_nash(dm):
            if not check_constraint(ne, ConstraintSpec.semi(M), 3):
                continue
            cert = semi_to_constrained_far(g, M, ne)
            d = 1 - 3 / M
            p = cert.profile
            assert cert.delta == d and cert.regret_bound == F(18, 100)
            assert not set(support(p.x)) & set(support(p.y))
            assert all(v > 1 / M for v in p.x.probs + p.y.probs if v)
            assert l1_distance(p.x, p.y) >= 2 * d
            small = [v for v in ne.x.probs + ne.y.probs if 0 < v <= 1 / M]
            if not small:
                assert cert.measured_regret(g) <= cert.regret_bound
            converted += 1
    assert converted > 0


def test_semi_bound_fails_when_opponent_small_mass_is_removed():
    # the small column mass on s0 costs the row M * 1/169 in the modified
    # game; dropping it makes s0 a far deviation worth 3/5 in the source game
    R = [["1/10", "9/10", 1], ["4/5", "3/10", "2/5"], ["2/5", "2/5", "1/10"]]
    C = [[1, "7/10", "2/5"], ["7/10", 1, "3/5"], ["3/5", "1/10", "2/5"]]
    g = BimatrixGame.from_matrices([[F(v) for v in r] for r in R], [[F(v) for v in r] for r in C])
    ne = prof(["1/1005", "1004/1005", 0], ["1/169", 0, "168/169"])
    M = F(100)
    dm = diagonal_modify(g, M)
    assert regret(dm, ne, ROW) == regret(dm, ne, COL) == 0
    cert = semi_to_constrained_far(g, M, ne)
    assert cert.profile == prof([0, 1, 0], [0, 0, 1])
    assert cert.measured_regret(g) == F(3, 5) > cert.regret_bound


def test_certified_json():
    cert = greedy_constrained_disjoint(RPS, F(1, 100))
    out = cert.to_json()
    assert out["regret_bound"] == "1/50"
    assert out["trace"] == [{"player": "row", "from": 1, "to": [2], "mass": "1/100"}]
