"""Benchmark matchups, bundled reference results, and the scenario file format.

The twelve benchmark matchups come in four rounds of increasing army
complexity, three race pairings each (PvT, TvZ, PvZ). The reference table
bundles, for every matchup, the win rates and mean surviving compositions
observed in scripted in-game test battles plus the predictions of the four
approximation models. Both live as YAML data files so transcription fixes
are diffable, and are validated against count and sum invariants at load.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import IO, Union

import yaml

from .engine import ArmyState, ModelId
from .errors import ScenarioError
from .units import Race, UnitCatalog, UnitClass

PAIRINGS = ("PvT", "TvZ", "PvZ")
ROUNDS = (1, 2, 3, 4)
ROW_TYPES = ("Test", "APX1", "APX2", "APX3", "APX4")

_RACE_BY_LETTER = {"P": Race.PROTOSS, "T": Race.TERRAN, "Z": Race.ZERG}

Composition = tuple[tuple[str, int], ...]
ScenarioSource = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class MatchupSpec:
    """Two armies by (unit name, count); builtin matchups carry a round/pairing id."""

    army1: Composition
    army2: Composition
    round: int | None = None
    pairing: str | None = None
    name: str | None = None

    def __post_init__(self) -> None:
        for side, army in (("army1", self.army1), ("army2", self.army2)):
            if not army:
                raise ScenarioError(f"{side} must contain at least one unit entry")
            for unit_name, count in army:
                if count < 1:
                    raise ScenarioError(f"{side}: count for {unit_name!r} must be >= 1")
        if self.pairing is not None and self.pairing not in PAIRINGS:
            raise ScenarioError(f"unknown pairing: {self.pairing!r}")
        if self.round is not None and self.round not in ROUNDS:
            raise ScenarioError(f"round must be 1..4, got {self.round}")

    @property
    def label(self) -> str:
        if self.round is not None and self.pairing is not None:
            return f"round {self.round} {self.pairing}"
        return self.name or "custom"


@dataclass(frozen=True)
class Scenario:
    """A matchup plus optional experiment settings from a scenario file."""

    matchup: MatchupSpec
    model: ModelId | None = None
    trials: int | None = None
    seed: int | None = None


@dataclass(frozen=True)
class ReferenceRow:
    """One bundled reference result: a test battle or a model prediction."""

    round: int
    type: str
    match: str
    survivors1: tuple[int, int, int, int]
    survivors2: tuple[int, int, int, int]
    win1: float
    win2: float

    def __post_init__(self) -> None:
        if self.type not in ROW_TYPES:
            raise ScenarioError(f"unknown row type: {self.type!r}")
        if self.match not in PAIRINGS or self.round not in ROUNDS:
            raise ScenarioError(f"bad row id: round {self.round} {self.match}")
        if not 0.99 <= self.win1 + self.win2 <= 1.01:
            raise ScenarioError(
                f"round {self.round} {self.type} {self.match}: "
                f"win percentages sum to {self.win1 + self.win2:.2f}"
            )


def resolve_composition(catalog: UnitCatalog, army: Composition,
                        race: Race | None = None) -> list[tuple[UnitClass, int]]:
    """Look up army entries in the catalog; optionally enforce a single race."""
    resolved = []
    for name, count in army:
        if name not in catalog:
            raise ScenarioError(f"unknown unit name: {name!r}")
        unit = catalog[name]
        if race is not None and unit.race is not race:
            raise ScenarioError(
                f"{name!r} is {unit.race.value}, expected {race.value}"
            )
        resolved.append((unit, count))
    return resolved


def build_armies(matchup: MatchupSpec, catalog: UnitCatalog) -> tuple[ArmyState, ArmyState]:
    """Resolve a matchup into two fresh army states.

    For builtin matchups the pairing also pins each side's race.
    """
    race1 = race2 = None
    if matchup.pairing is not None:
        race1 = _RACE_BY_LETTER[matchup.pairing[0]]
        race2 = _RACE_BY_LETTER[matchup.pairing[2]]
    comp1 = resolve_composition(catalog, matchup.army1, race1)
    comp2 = resolve_composition(catalog, matchup.army2, race2)
    return ArmyState(comp1), ArmyState(comp2)


def _parse_army(doc: object, context: str) -> Composition:
    if not isinstance(doc, dict) or not doc:
        raise ScenarioError(f"{context} must be a non-empty mapping of unit name -> count")
    army = []
    for name, count in doc.items():
        if not isinstance(count, int) or isinstance(count, bool):
            raise ScenarioError(f"{context}: count for {name!r} must be an integer")
        army.append((str(name), count))
    return tuple(army)


def _load_yaml(source: ScenarioSource, what: str) -> object:
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioError(f"{what} is not valid YAML: {exc}") from exc


def _bundled(name: str) -> object:
    text = resources.files("sc2combat.data").joinpath(name).read_text(encoding="utf-8")
    return yaml.safe_load(text)


def builtin_matchups() -> list[MatchupSpec]:
    """The 12 benchmark matchups (4 rounds x PvT, TvZ, PvZ)."""
    doc = _bundled("matchups.yaml")
    matchups = [
        MatchupSpec(
            army1=_parse_army(entry["army1"], "army1"),
            army2=_parse_army(entry["army2"], "army2"),
            round=int(entry["round"]),
            pairing=str(entry["match"]),
        )
        for entry in doc
    ]
    ids = [(m.round, m.pairing) for m in matchups]
    if len(matchups) != 12 or len(set(ids)) != 12:
        raise ScenarioError("matchup data must contain exactly the 12 benchmark matchups")
    for rnd in ROUNDS:
        if sum(1 for m in matchups if m.round == rnd) != 3:
            raise ScenarioError(f"round {rnd} must contain exactly 3 matchups")
    return matchups


def find_matchup(round: int, pairing: str) -> MatchupSpec:
    """Look up one builtin matchup by round number and pairing."""
    pairing = _normalize_pairing(pairing)
    for matchup in builtin_matchups():
        if matchup.round == round and matchup.pairing == pairing:
            return matchup
    raise ScenarioError(f"no builtin matchup for round {round} {pairing}")


def _normalize_pairing(text: str) -> str:
    for pairing in PAIRINGS:
        if text.lower() == pairing.lower():
            return pairing
    raise ScenarioError(f"unknown pairing: {text!r}")


def reference_table() -> list[ReferenceRow]:
    """All 60 bundled reference rows (12 matchups x Test + APX1..APX4)."""
    doc = _bundled("reference_table.yaml")
    rows = [
        ReferenceRow(
            round=int(entry["round"]),
            type=str(entry["type"]),
            match=str(entry["match"]),
            survivors1=tuple(int(v) for v in entry["survivors1"]),
            survivors2=tuple(int(v) for v in entry["survivors2"]),
            win1=float(entry["win1"]),
            win2=float(entry["win2"]),
        )
        for entry in doc
    ]
    ids = [(r.round, r.type, r.match) for r in rows]
    if len(rows) != 60 or len(set(ids)) != 60:
        raise ScenarioError("reference data must contain exactly 60 distinct rows")
    return rows


def find_reference_row(round: int, type: str, match: str) -> ReferenceRow:
    match = _normalize_pairing(match)
    for row in reference_table():
        if (row.round, row.type.lower(), row.match) == (round, type.lower(), match):
            return row
    raise ScenarioError(f"no reference row for round {round} {type} {match}")


def load_scenario(source: ScenarioSource, catalog: UnitCatalog) -> Scenario:
    """Parse a user scenario document and resolve it against the catalog.

    The document holds ``army1`` and ``army2`` mappings of unit name to
    count, plus optional ``model``, ``trials``, ``seed`` and ``name`` keys.
    """
    doc = _load_yaml(source, "scenario")
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a mapping")
    unknown = doc.keys() - {"army1", "army2", "model", "trials", "seed", "name"}
    if unknown:
        raise ScenarioError(f"scenario has unknown keys: {sorted(unknown)}")
    if "army1" not in doc or "army2" not in doc:
        raise ScenarioError("scenario must define army1 and army2")
    matchup = MatchupSpec(
        army1=_parse_army(doc["army1"], "army1"),
        army2=_parse_army(doc["army2"], "army2"),
        name=str(doc["name"]) if "name" in doc else None,
    )
    resolve_composition(catalog, matchup.army1)
    resolve_composition(catalog, matchup.army2)
    model = None
    if "model" in doc:
        try:
            model = ModelId.parse(str(doc["model"]))
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
    trials = None
    if "trials" in doc:
        if not isinstance(doc["trials"], int) or doc["trials"] < 1:
            raise ScenarioError("trials must be a positive integer")
        trials = doc["trials"]
    seed = None
    if "seed" in doc:
        if not isinstance(doc["seed"], int):
            raise ScenarioError("seed must be an integer")
        seed = doc["seed"]
    return Scenario(matchup=matchup, model=model, trials=trials, seed=seed)
