"""Exact outcome distributions for tiny battles by exhaustive enumeration.

This is a brute-force cross-check for the sampling engine, implemented
independently of it: instead of drawing targets and kill rolls, it expands
the full probability tree over target selections and probabilistic kills
with exact rational arithmetic.

Rounds that change nothing on either side (possible when both pools are too
small to guarantee a kill) would make the tree infinite; such a round maps a
state to itself with some probability q, so the enumeration folds the loop
analytically by renormalizing the remaining branches by 1/(1-q). The
recursion therefore only ever descends into states with strictly fewer
units and needs no round cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .engine import ModelId, TargetPolicy, Winner
from .errors import EnumerationLimitError, StalemateError
from .scenarios import MatchupSpec, resolve_composition
from .units import UnitCatalog, UnitClass, effective_bonus_dps, effective_dps, effective_health

# (winner, survivors1, survivors2)
Outcome = tuple[Winner, tuple[int, ...], tuple[int, ...]]

_SUM_TOLERANCE = Fraction(1, 10**12)


@dataclass(frozen=True)
class EnumerationLimits:
    """Guard rails for the state-space expansion."""

    max_units_per_side: int = 4
    max_states: int = 20_000


@dataclass(frozen=True)
class ExactDistribution:
    """Exact probability of every terminal (winner, survivors) outcome."""

    outcomes: dict[Outcome, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        total = sum(self.outcomes.values(), Fraction(0))
        if abs(total - 1) > _SUM_TOLERANCE:
            raise AssertionError(f"outcome probabilities sum to {float(total)}, not 1")

    def probability(self, outcome: Outcome) -> Fraction:
        return self.outcomes.get(outcome, Fraction(0))

    def winner_probability(self, winner: Winner) -> Fraction:
        return sum(
            (p for (w, _, _), p in self.outcomes.items() if w is winner),
            Fraction(0),
        )

    def as_floats(self) -> dict[Outcome, float]:
        return {outcome: float(p) for outcome, p in self.outcomes.items()}


class _SideStats(NamedTuple):
    eff_health: tuple[float, ...]
    eff_dps: tuple[float, ...]
    eff_bonus_dps: tuple[float, ...]
    ranged: tuple[bool, ...]
    attributes: tuple[frozenset[str], ...]
    bonus_vs: tuple[frozenset[str], ...]


def _side_stats(composition: list[tuple[UnitClass, int]]) -> tuple[_SideStats, tuple[int, ...]]:
    units = [u for u, _ in composition]
    stats = _SideStats(
        eff_health=tuple(effective_health(u) for u in units),
        eff_dps=tuple(effective_dps(u) for u in units),
        eff_bonus_dps=tuple(effective_bonus_dps(u) for u in units),
        ranged=tuple(u.ranged for u in units),
        attributes=tuple(u.attributes for u in units),
        bonus_vs=tuple(u.bonus_vs for u in units),
    )
    return stats, tuple(count for _, count in composition)


def _round_pool(attacker: _SideStats, atk_counts: tuple[int, ...],
                defender: _SideStats, def_counts: tuple[int, ...],
                model: ModelId, first_round: bool) -> float:
    ranged_gate = model.ranged_first_round and first_round
    pool = 0.0
    for i, count in enumerate(atk_counts):
        if count and (attacker.ranged[i] or not ranged_gate):
            pool += count * attacker.eff_dps[i]
    if model.bonus_pools:
        defenders_alive = sum(def_counts)
        for i, count in enumerate(atk_counts):
            if not count or attacker.eff_bonus_dps[i] == 0.0:
                continue
            if ranged_gate and not attacker.ranged[i]:
                continue
            vulnerable = sum(
                dc for j, dc in enumerate(def_counts)
                if dc and not attacker.bonus_vs[i].isdisjoint(defender.attributes[j])
            )
            if vulnerable:
                pool += count * attacker.eff_bonus_dps[i] * (vulnerable / defenders_alive)
    return pool


def _apply_distribution(pool: float, side: _SideStats, counts: tuple[int, ...],
                        policy: TargetPolicy) -> dict[tuple[int, ...], Fraction]:
    """Distribution of post-pool counts: every selection/kill branch, exactly."""
    out: dict[tuple[int, ...], Fraction] = {}

    def expand(pool: float, counts: tuple[int, ...], prob: Fraction) -> None:
        if pool <= 0 or not any(counts):
            out[counts] = out.get(counts, Fraction(0)) + prob
            return
        if policy is TargetPolicy.MELEE_FIRST:
            eligible = [i for i, c in enumerate(counts) if c and not side.ranged[i]]
            if not eligible:
                eligible = [i for i, c in enumerate(counts) if c]
        else:
            eligible = [i for i, c in enumerate(counts) if c]
        total = sum(counts[i] for i in eligible)
        for i in eligible:
            p_select = prob * Fraction(counts[i], total)
            health = side.eff_health[i]
            killed = counts[:i] + (counts[i] - 1,) + counts[i + 1:]
            if pool >= health:
                expand(pool - health, killed, p_select)
            else:
                p_kill = Fraction(pool) / Fraction(health)
                out[killed] = out.get(killed, Fraction(0)) + p_select * p_kill
                if p_kill != 1:
                    out[counts] = out.get(counts, Fraction(0)) + p_select * (1 - p_kill)

    expand(pool, counts, Fraction(1))
    return out


def enumerate_compositions(comp1: list[tuple[UnitClass, int]],
                           comp2: list[tuple[UnitClass, int]],
                           model: ModelId,
                           limits: EnumerationLimits = EnumerationLimits()) -> ExactDistribution:
    """Exact outcome distribution for two resolved compositions."""
    stats1, counts1 = _side_stats(comp1)
    stats2, counts2 = _side_stats(comp2)
    for side, counts in (("army1", counts1), ("army2", counts2)):
        if sum(counts) > limits.max_units_per_side:
            raise EnumerationLimitError(
                f"{side} has {sum(counts)} units; limit is {limits.max_units_per_side}"
            )
    if not any(counts1) or not any(counts2):
        raise ValueError("both armies must start with at least one unit")

    policy = model.target_policy
    memo: dict[tuple, dict[Outcome, Fraction]] = {}

    def battle(c1: tuple[int, ...], c2: tuple[int, ...],
               first_round: bool) -> dict[Outcome, Fraction]:
        key = (c1, c2, first_round)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if len(memo) >= limits.max_states:
            raise EnumerationLimitError(f"more than {limits.max_states} battle states")

        pool1 = _round_pool(stats1, c1, stats2, c2, model, first_round)
        pool2 = _round_pool(stats2, c2, stats1, c1, model, first_round)
        dist2 = _apply_distribution(pool1, stats2, c2, policy)
        dist1 = _apply_distribution(pool2, stats1, c1, policy)

        result: dict[Outcome, Fraction] = {}
        self_prob = Fraction(0)

        def add(outcome: Outcome, p: Fraction) -> None:
            result[outcome] = result.get(outcome, Fraction(0)) + p

        for n1, p1 in dist1.items():
            for n2, p2 in dist2.items():
                p = p1 * p2
                alive1 = any(n1)
                alive2 = any(n2)
                if not alive1 and not alive2:
                    add((Winner.DRAW, n1, n2), p)
                elif not alive2:
                    add((Winner.ARMY1, n1, n2), p)
                elif not alive1:
                    add((Winner.ARMY2, n1, n2), p)
                elif n1 == c1 and n2 == c2 and not first_round:
                    self_prob += p
                else:
                    for outcome, sub_p in battle(n1, n2, False).items():
                        add(outcome, p * sub_p)

        if self_prob == 1:
            raise StalemateError("neither army can make progress from this state")
        if self_prob:
            scale = 1 / (1 - self_prob)
            result = {outcome: p * scale for outcome, p in result.items()}
        memo[key] = result
        return result

    return ExactDistribution(battle(counts1, counts2, True))


def enumerate_exact(matchup: MatchupSpec, model: ModelId, catalog: UnitCatalog,
                    limits: EnumerationLimits = EnumerationLimits()) -> ExactDistribution:
    """Exact outcome distribution for a matchup resolved against a catalog."""
    comp1 = resolve_composition(catalog, matchup.army1)
    comp2 = resolve_composition(catalog, matchup.army2)
    return enumerate_compositions(comp1, comp2, model, limits)
