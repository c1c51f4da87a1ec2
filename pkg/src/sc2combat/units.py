"""Unit type definitions and the data-driven unit catalog.

A unit type is reduced to the handful of numbers the combat models consume:
hit points plus shields folded into a single health figure, armor as a
multiplicative health scale, damage per second with the maximum potential
area-of-effect folded in, a ranged flag, attribute tags, and bonus damage
against tagged targets.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Union

import yaml

from .errors import CatalogError

# Each point of armor multiplies surviving power by this factor.
ARMOR_HEALTH_FACTOR = 1.5

DEFAULT_CATALOG_ENV = "SC2COMBAT_CATALOG"

_RECORD_KEYS = {
    "name", "race", "health", "shields", "armor", "dps", "aoe_area",
    "ranged", "attributes", "bonus_dps", "bonus_aoe_area", "bonus_vs",
}

CatalogSource = Union[str, Path, IO[str]]


class Race(enum.Enum):
    PROTOSS = "protoss"
    TERRAN = "terran"
    ZERG = "zerg"


@dataclass(frozen=True)
class UnitClass:
    """Immutable stats for one unit type."""

    name: str
    race: Race
    base_health: int
    shields: int
    armor: int
    base_dps: float
    aoe_area: float = 1.0
    ranged: bool = False
    attributes: frozenset[str] = field(default_factory=frozenset)
    bonus_base_dps: float = 0.0
    bonus_aoe_area: float = 1.0
    bonus_vs: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not self.name:
            raise CatalogError("unit name must be non-empty")
        if self.base_health < 0 or self.shields < 0 or self.armor < 0:
            raise CatalogError(f"{self.name}: health, shields and armor must be non-negative")
        if self.base_health + self.shields <= 0:
            raise CatalogError(f"{self.name}: health + shields must be positive")
        if self.base_dps < 0 or self.bonus_base_dps < 0:
            raise CatalogError(f"{self.name}: DPS values must be non-negative")
        if self.aoe_area < 1 or self.bonus_aoe_area < 1:
            raise CatalogError(f"{self.name}: area multipliers must be >= 1")
        if bool(self.bonus_vs) != (self.bonus_base_dps > 0):
            raise CatalogError(
                f"{self.name}: bonus_vs must be non-empty exactly when bonus_dps > 0"
            )


def effective_health(unit: UnitClass) -> float:
    """Hit points plus shields, scaled by the armor multiplier."""
    return (unit.base_health + unit.shields) * ARMOR_HEALTH_FACTOR ** unit.armor


def effective_dps(unit: UnitClass) -> float:
    """Single-target DPS times the maximum potential area-of-effect."""
    return unit.base_dps * unit.aoe_area


def effective_bonus_dps(unit: UnitClass) -> float:
    """Bonus DPS times the bonus attack's area-of-effect."""
    return unit.bonus_base_dps * unit.bonus_aoe_area


class UnitCatalog:
    """Immutable name -> UnitClass mapping with unique names."""

    def __init__(self, units: Iterable[UnitClass] = ()):
        entries: dict[str, UnitClass] = {}
        for unit in units:
            if unit.name in entries:
                raise CatalogError(f"duplicate unit name: {unit.name}")
            entries[unit.name] = unit
        self._entries = entries

    def __getitem__(self, name: str) -> UnitClass:
        return self._entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnitCatalog):
            return NotImplemented
        return self._entries == other._entries

    def names(self) -> list[str]:
        return list(self._entries)


def _parse_record(record: object) -> UnitClass:
    if not isinstance(record, dict):
        raise CatalogError(f"unit record must be a mapping, got {type(record).__name__}")
    missing = _RECORD_KEYS - record.keys()
    unknown = record.keys() - _RECORD_KEYS
    if missing:
        raise CatalogError(f"unit record missing keys: {sorted(missing)}")
    if unknown:
        raise CatalogError(f"unit record has unknown keys: {sorted(unknown)}")
    try:
        race = Race(str(record["race"]).lower())
    except ValueError:
        raise CatalogError(f"unknown race: {record['race']!r}") from None
    for key in ("attributes", "bonus_vs"):
        if not isinstance(record[key], list):
            raise CatalogError(f"{record['name']}: {key} must be a list")
    try:
        return UnitClass(
            name=str(record["name"]),
            race=race,
            base_health=int(record["health"]),
            shields=int(record["shields"]),
            armor=int(record["armor"]),
            base_dps=float(record["dps"]),
            aoe_area=float(record["aoe_area"]),
            ranged=bool(record["ranged"]),
            attributes=frozenset(str(a).lower() for a in record["attributes"]),
            bonus_base_dps=float(record["bonus_dps"]),
            bonus_aoe_area=float(record["bonus_aoe_area"]),
            bonus_vs=frozenset(str(a).lower() for a in record["bonus_vs"]),
        )
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"{record.get('name', '?')}: bad field value ({exc})") from exc


def load_catalog(source: CatalogSource) -> UnitCatalog:
    """Load a catalog from a YAML path or open text stream.

    The document is a list of unit records; see the bundled
    ``data/units.yaml`` for the schema. An empty document is a valid,
    empty catalog.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    return loads_catalog(text)


def loads_catalog(text: str) -> UnitCatalog:
    """Parse a catalog from YAML text."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise CatalogError(f"catalog is not valid YAML: {exc}") from exc
    if doc is None:
        return UnitCatalog()
    if not isinstance(doc, list):
        raise CatalogError("catalog document must be a list of unit records")
    return UnitCatalog(_parse_record(record) for record in doc)


def dumps_catalog(catalog: UnitCatalog) -> str:
    """Serialize a catalog back to YAML; loads_catalog round-trips it."""
    records = []
    for u in catalog:
        records.append({
            "name": u.name,
            "race": u.race.value,
            "health": u.base_health,
            "shields": u.shields,
            "armor": u.armor,
            "dps": u.base_dps,
            "aoe_area": u.aoe_area,
            "ranged": u.ranged,
            "attributes": sorted(u.attributes),
            "bonus_dps": u.bonus_base_dps,
            "bonus_aoe_area": u.bonus_aoe_area,
            "bonus_vs": sorted(u.bonus_vs),
        })
    return yaml.safe_dump(records, sort_keys=False)


def default_catalog_path() -> str | None:
    """Path of the catalog named by $SC2COMBAT_CATALOG, if set."""
    return os.environ.get(DEFAULT_CATALOG_ENV) or None


def default_catalog() -> UnitCatalog:
    """The bundled Wings-of-Liberty-era catalog, unless overridden by env var."""
    override = default_catalog_path()
    if override:
        return load_catalog(override)
    text = resources.files("sc2combat.data").joinpath("units.yaml").read_text(encoding="utf-8")
    return loads_catalog(text)
