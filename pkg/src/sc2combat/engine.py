"""Round-stepped damage-pool combat engine implementing models APX1-APX4.

All four models share one loop. Each one-second round, every army converts
its surviving units into a damage pool, and both pools (computed from the
start-of-round state, so damage lands simultaneously) are spent killing
randomly selected enemy units. A selected unit whose effective health fits
inside the remaining pool dies outright and shrinks the pool; otherwise it
dies with probability pool / health and the pool is exhausted either way.
No partial hit points are ever tracked: units are alive at full strength or
dead, and the probabilistic kill stands in for fractional damage carryover.

The models are additive refinements:

    APX1  damage pools with uniformly random targeting
    APX2  + only ranged units contribute to the first round's pool
          (free damage landed before melee contact)
    APX3  + bonus-damage pools, scaled by the fraction of enemy units
          carrying a vulnerable attribute (ranged-only on round one)
    APX4  + melee units are targeted before any ranged unit
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import StalemateError
from .units import UnitClass, effective_bonus_dps, effective_dps, effective_health

# Rounds after which a trial with both armies still standing is declared a
# stalemate (degenerate zero-DPS input) instead of looping forever.
ROUND_CAP = 10_000


class TargetPolicy(enum.Enum):
    UNIFORM_RANDOM = "uniform_random"
    MELEE_FIRST = "melee_first"


class ModelId(enum.Enum):
    """The four approximation models; each adds one feature to the last."""

    APX1 = 1
    APX2 = 2
    APX3 = 3
    APX4 = 4

    @property
    def ranged_first_round(self) -> bool:
        """Only ranged units contribute to the opening round's pool."""
        return self.value >= 2

    @property
    def bonus_pools(self) -> bool:
        """Attribute-bonus damage is added to the pools."""
        return self.value >= 3

    @property
    def target_policy(self) -> TargetPolicy:
        if self.value >= 4:
            return TargetPolicy.MELEE_FIRST
        return TargetPolicy.UNIFORM_RANDOM

    @classmethod
    def parse(cls, text: str) -> "ModelId":
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown model: {text!r} (expected apx1..apx4)") from None


class Winner(enum.Enum):
    ARMY1 = "army1"
    ARMY2 = "army2"
    DRAW = "draw"


@dataclass
class DamagePool:
    """Damage points available to one army for one round."""

    remaining: float


@dataclass(frozen=True)
class TrialOutcome:
    """Result of one simulated battle."""

    winner: Winner
    survivors1: tuple[int, ...]
    survivors2: tuple[int, ...]
    rounds: int


class ArmyState:
    """Per-class alive counts for one side, with derived stats cached.

    Mutable and trial-local: the engine decrements counts in place. Use
    ``fresh()`` to get a reset copy for a new trial.
    """

    __slots__ = ("classes", "counts", "initial_counts",
                 "eff_health", "eff_dps", "eff_bonus_dps", "ranged")

    def __init__(self, composition: Sequence[tuple[UnitClass, int]]):
        if any(count < 0 for _, count in composition):
            raise ValueError("unit counts must be non-negative")
        self.classes: tuple[UnitClass, ...] = tuple(unit for unit, _ in composition)
        self.initial_counts: tuple[int, ...] = tuple(count for _, count in composition)
        self.counts: list[int] = list(self.initial_counts)
        self.eff_health: tuple[float, ...] = tuple(effective_health(u) for u in self.classes)
        self.eff_dps: tuple[float, ...] = tuple(effective_dps(u) for u in self.classes)
        self.eff_bonus_dps: tuple[float, ...] = tuple(effective_bonus_dps(u) for u in self.classes)
        self.ranged: tuple[bool, ...] = tuple(u.ranged for u in self.classes)

    def fresh(self) -> "ArmyState":
        """A new state with counts reset to the initial composition."""
        return ArmyState(list(zip(self.classes, self.initial_counts)))

    def total_units(self) -> int:
        return sum(self.counts)

    def total_effective_health(self) -> float:
        return sum(c * h for c, h in zip(self.counts, self.eff_health))

    @property
    def defeated(self) -> bool:
        return self.total_units() == 0

    def survivors(self) -> tuple[int, ...]:
        return tuple(self.counts)


def bonus_pool(attacker: ArmyState, defender: ArmyState, ranged_only: bool) -> float:
    """Total bonus DPS, each contribution scaled by the fraction of
    defender units carrying a vulnerable attribute.

    The fraction is recomputed from current alive counts every round.
    """
    defenders = defender.total_units()
    if defenders == 0:
        return 0.0
    total = 0.0
    for i, count in enumerate(attacker.counts):
        if count == 0 or attacker.eff_bonus_dps[i] == 0.0:
            continue
        if ranged_only and not attacker.ranged[i]:
            continue
        tags = attacker.classes[i].bonus_vs
        vulnerable = sum(
            dcount for j, dcount in enumerate(defender.counts)
            if dcount and not tags.isdisjoint(defender.classes[j].attributes)
        )
        if vulnerable:
            total += count * attacker.eff_bonus_dps[i] * (vulnerable / defenders)
    return total


def compute_pool(attacker: ArmyState, defender: ArmyState,
                 model: ModelId, is_first_round: bool) -> DamagePool:
    """One round's damage pool for ``attacker``, per the model's rules."""
    ranged_only = model.ranged_first_round and is_first_round
    total = 0.0
    for i, count in enumerate(attacker.counts):
        if count and (not ranged_only or attacker.ranged[i]):
            total += count * attacker.eff_dps[i]
    if model.bonus_pools:
        total += bonus_pool(attacker, defender, ranged_only)
    return DamagePool(total)


def _pick_target(defender: ArmyState, policy: TargetPolicy, rng: random.Random) -> int:
    """Index of the class a randomly selected unit instance belongs to."""
    counts = defender.counts
    if policy is TargetPolicy.MELEE_FIRST:
        eligible = [i for i, c in enumerate(counts) if c and not defender.ranged[i]]
        if not eligible:
            eligible = [i for i, c in enumerate(counts) if c]
    else:
        eligible = [i for i, c in enumerate(counts) if c]
    total = sum(counts[i] for i in eligible)
    pick = rng.random() * total
    for i in eligible:
        pick -= counts[i]
        if pick < 0:
            return i
    return eligible[-1]


def apply_pool(pool: DamagePool, defender: ArmyState,
               policy: TargetPolicy, rng: random.Random) -> None:
    """Spend a damage pool on the defender, killing units one at a time.

    Killed units are removed immediately and cannot be re-selected; damage
    left over when the defender is wiped out is discarded.
    """
    remaining = pool.remaining
    counts = defender.counts
    while remaining > 0:
        if not any(counts):
            break
        i = _pick_target(defender, policy, rng)
        health = defender.eff_health[i]
        if remaining >= health:
            counts[i] -= 1
            remaining -= health
        else:
            if rng.random() < remaining / health:
                counts[i] -= 1
            remaining = 0.0
    pool.remaining = max(remaining, 0.0)


def step_round(army1: ArmyState, army2: ArmyState, model: ModelId,
               is_first_round: bool, rng: random.Random) -> None:
    """Advance both armies by one round.

    Both pools are computed from the start-of-round state before either is
    applied, so the exchange is simultaneous and both armies may end the
    round defeated.
    """
    pool1 = compute_pool(army1, army2, model, is_first_round)
    pool2 = compute_pool(army2, army1, model, is_first_round)
    policy = model.target_policy
    apply_pool(pool1, army2, policy, rng)
    apply_pool(pool2, army1, policy, rng)


def run_trial(army1: ArmyState, army2: ArmyState,
              model: ModelId, rng: random.Random) -> TrialOutcome:
    """Simulate one battle to completion; mutates both army states.

    Raises StalemateError if neither army is defeated within ROUND_CAP
    rounds (possible only for zero-progress inputs).
    """
    if army1.defeated or army2.defeated:
        raise ValueError("both armies must start with at least one unit")
    for rounds in range(1, ROUND_CAP + 1):
        step_round(army1, army2, model, rounds == 1, rng)
        alive1 = army1.total_units()
        alive2 = army2.total_units()
        if alive1 == 0 or alive2 == 0:
            if alive1 == 0 and alive2 == 0:
                winner = Winner.DRAW
            elif alive2 == 0:
                winner = Winner.ARMY1
            else:
                winner = Winner.ARMY2
            return TrialOutcome(winner, army1.survivors(), army2.survivors(), rounds)
    raise StalemateError(f"both armies still standing after {ROUND_CAP} rounds")
