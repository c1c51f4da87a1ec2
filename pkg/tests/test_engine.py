import math
import random

import pytest

from sc2combat import (
    ROUND_CAP,
    ArmyState,
    DamagePool,
    ModelId,
    StalemateError,
    TargetPolicy,
    Winner,
    apply_pool,
    bonus_pool,
    compute_pool,
    run_trial,
    step_round,
)

from conftest import make_unit


def army(*entries):
    return ArmyState(list(entries))


def three_sigma(p, n):
    return 3 * math.sqrt(p * (1 - p) / n)


class TestModelId:
    def test_parse(self):
        assert ModelId.parse("apx1") is ModelId.APX1
        assert ModelId.parse("APX4") is ModelId.APX4
        with pytest.raises(ValueError):
            ModelId.parse("apx5")

    def test_each_model_adds_exactly_one_feature(self):
        features = {
            m: (m.ranged_first_round, m.bonus_pools, m.target_policy is TargetPolicy.MELEE_FIRST)
            for m in ModelId
        }
        assert features[ModelId.APX1] == (False, False, False)
        assert features[ModelId.APX2] == (True, False, False)
        assert features[ModelId.APX3] == (True, True, False)
        assert features[ModelId.APX4] == (True, True, True)


class TestComputePool:
    def test_four_hellions_apx1(self, catalog):
        hellions = army((catalog["hellion"], 4))
        lings = army((catalog["zergling"], 10))
        assert compute_pool(hellions, lings, ModelId.APX1, True).remaining == 64.0
        assert compute_pool(hellions, lings, ModelId.APX1, False).remaining == 64.0

    def test_apx2_first_round_all_melee_is_zero(self):
        melee = army((make_unit("m", dps=9.0), 5))
        other = army((make_unit("x"), 1))
        assert compute_pool(melee, other, ModelId.APX2, True).remaining == 0.0
        assert compute_pool(melee, other, ModelId.APX2, False).remaining == 45.0

    def test_apx2_first_round_all_ranged_matches_apx1(self):
        ranged = army((make_unit("r", dps=7.0, ranged=True), 3),
                      (make_unit("s", dps=2.5, ranged=True), 2))
        other = army((make_unit("x"), 1))
        apx1 = compute_pool(ranged, other, ModelId.APX1, True).remaining
        apx2 = compute_pool(ranged, other, ModelId.APX2, True).remaining
        assert apx1 == apx2

    def test_dead_classes_contribute_nothing(self):
        a = army((make_unit("a", dps=4.0), 2), (make_unit("b", dps=9.0), 1))
        a.counts[1] = 0
        other = army((make_unit("x"), 1))
        assert compute_pool(a, other, ModelId.APX1, False).remaining == 8.0


class TestBonusPool:
    def test_half_vulnerable_gives_half_bonus(self, catalog):
        hellions = army((catalog["hellion"], 2))
        defenders = army((catalog["zergling"], 2), (catalog["roach"], 2))
        # two hellions at 12 effective bonus DPS each, half the enemy is light
        assert bonus_pool(hellions, defenders, ranged_only=False) == pytest.approx(12.0)

    def test_no_bonus_traits_gives_zero(self):
        plain = army((make_unit("p", dps=5.0), 4))
        defenders = army((make_unit("d", attrs=("light",)), 4))
        assert bonus_pool(plain, defenders, ranged_only=False) == 0.0

    def test_fully_vulnerable_gives_full_bonus(self):
        attacker = army((make_unit("a", dps=1.0, bonus=3.0, bonus_vs=("light",)), 2))
        defenders = army((make_unit("d", attrs=("light", "biological")), 3))
        assert bonus_pool(attacker, defenders, ranged_only=False) == pytest.approx(6.0)

    def test_ranged_only_excludes_melee_bonus(self):
        melee = make_unit("m", dps=1.0, bonus=3.0, bonus_vs=("light",), ranged=False)
        shooter = make_unit("s", dps=1.0, bonus=2.0, bonus_vs=("light",), ranged=True)
        attacker = army((melee, 1), (shooter, 1))
        defenders = army((make_unit("d", attrs=("light",)), 2))
        assert bonus_pool(attacker, defenders, ranged_only=True) == pytest.approx(2.0)
        assert bonus_pool(attacker, defenders, ranged_only=False) == pytest.approx(5.0)

    def test_apx3_pool_includes_bonus(self, catalog):
        hellions = army((catalog["hellion"], 2))
        defenders = army((catalog["zergling"], 2), (catalog["roach"], 2))
        pool = compute_pool(hellions, defenders, ModelId.APX3, False)
        assert pool.remaining == pytest.approx(32.0 + 12.0)


class TestApplyPool:
    def test_exact_lethal_kill_is_certain(self):
        defender = army((make_unit("d", health=20), 1))
        pool = DamagePool(20.0)
        apply_pool(pool, defender, TargetPolicy.UNIFORM_RANDOM, random.Random(1))
        assert defender.counts == [0]
        assert pool.remaining == 0.0

    def test_partial_pool_kills_at_ratio(self):
        kills = 0
        n = 10_000
        for i in range(n):
            defender = army((make_unit("d", health=10), 1))
            apply_pool(DamagePool(5.0), defender, TargetPolicy.UNIFORM_RANDOM,
                       random.Random(i))
            kills += defender.counts[0] == 0
        assert abs(kills / n - 0.5) <= three_sigma(0.5, n)

    def test_melee_first_kills_melee_with_certainty(self):
        melee = make_unit("m", health=10, ranged=False)
        shooter = make_unit("r", health=10, ranged=True)
        for seed in range(200):
            defender = army((melee, 1), (shooter, 1))
            apply_pool(DamagePool(10.0), defender, TargetPolicy.MELEE_FIRST,
                       random.Random(seed))
            assert defender.counts == [0, 1]

    def test_overkill_is_discarded(self):
        defender = army((make_unit("d", health=5), 2))
        pool = DamagePool(1000.0)
        apply_pool(pool, defender, TargetPolicy.UNIFORM_RANDOM, random.Random(0))
        assert defender.counts == [0]
        assert defender.defeated

    def test_zero_pool_is_noop(self):
        defender = army((make_unit("d"), 3))
        apply_pool(DamagePool(0.0), defender, TargetPolicy.UNIFORM_RANDOM,
                   random.Random(0))
        assert defender.counts == [3]


class TestStepRound:
    def test_simultaneous_exchange(self):
        # pools fixed from start-of-round state: B always dies, A dies half the time
        deaths = 0
        n = 10_000
        for i in range(n):
            a = army((make_unit("a", health=10, dps=10.0), 1))
            b = army((make_unit("b", health=10, dps=5.0), 1))
            step_round(a, b, ModelId.APX1, True, random.Random(i))
            assert b.counts == [0]
            deaths += a.counts == [0]
        assert abs(deaths / n - 0.5) <= three_sigma(0.5, n)

    def test_zero_dps_changes_nothing(self):
        a = army((make_unit("a", dps=0.0), 2))
        b = army((make_unit("b", dps=0.0), 3))
        step_round(a, b, ModelId.APX1, True, random.Random(0))
        assert a.counts == [2] and b.counts == [3]

    def test_apx2_ranged_wipe_before_melee_contact(self):
        shooters = army((make_unit("r", health=10, dps=50.0, ranged=True), 2))
        melee = army((make_unit("m", health=10, dps=100.0), 10))
        step_round(shooters, melee, ModelId.APX2, True, random.Random(3))
        assert melee.counts == [0]
        assert shooters.counts == [2]


class TestRunTrial:
    def test_two_versus_one(self):
        # army1 pool 20 always covers the single 20-health defender;
        # the return fire of 4 kills one 5-health attacker 80% of the time
        ones = 0
        n = 10_000
        for i in range(n):
            a = army((make_unit("a", health=5, dps=10.0), 2))
            b = army((make_unit("b", health=20, dps=4.0), 1))
            outcome = run_trial(a, b, ModelId.APX1, random.Random(i))
            assert outcome.winner is Winner.ARMY1
            assert outcome.rounds == 1
            ones += outcome.survivors1 == (1,)
        assert abs(ones / n - 0.8) <= three_sigma(0.8, n)

    def test_mirror_exact_lethal_always_draws(self):
        for seed in range(50):
            a = army((make_unit("a", health=10, dps=10.0), 1))
            b = army((make_unit("b", health=10, dps=10.0), 1))
            outcome = run_trial(a, b, ModelId.APX1, random.Random(seed))
            assert outcome.winner is Winner.DRAW
            assert outcome.survivors1 == (0,) and outcome.survivors2 == (0,)

    def test_zero_dps_stalemate(self):
        a = army((make_unit("a", dps=0.0), 1))
        b = army((make_unit("b", dps=0.0), 1))
        with pytest.raises(StalemateError):
            run_trial(a, b, ModelId.APX1, random.Random(0))

    def test_round_cap_value(self):
        assert ROUND_CAP == 10_000

    def test_empty_army_rejected(self):
        a = army((make_unit("a"), 0))
        b = army((make_unit("b"), 1))
        with pytest.raises(ValueError):
            run_trial(a, b, ModelId.APX1, random.Random(0))

    def test_same_seed_reproducible(self, catalog):
        def once():
            a = army((catalog["zealot"], 8), (catalog["stalker"], 2))
            b = army((catalog["marine"], 12), (catalog["marauder"], 4))
            return run_trial(a, b, ModelId.APX4, random.Random(123))

        assert once() == once()

    def test_winner_survivor_consistency(self, catalog):
        for seed in range(100):
            a = army((catalog["zealot"], 3), (catalog["stalker"], 1))
            b = army((catalog["marine"], 5))
            outcome = run_trial(a, b, ModelId.APX2, random.Random(seed))
            if outcome.winner is Winner.ARMY1:
                assert any(outcome.survivors1) and not any(outcome.survivors2)
            elif outcome.winner is Winner.ARMY2:
                assert any(outcome.survivors2) and not any(outcome.survivors1)
            else:
                assert not any(outcome.survivors1) and not any(outcome.survivors2)


class TestArmyState:
    def test_counts_validated(self):
        with pytest.raises(ValueError):
            ArmyState([(make_unit("a"), -1)])

    def test_fresh_resets(self):
        a = army((make_unit("a"), 3))
        a.counts[0] = 1
        assert a.fresh().counts == [3]

    def test_total_effective_health(self):
        a = army((make_unit("a", health=100, armor=1), 2))
        assert a.total_effective_health() == 300.0
