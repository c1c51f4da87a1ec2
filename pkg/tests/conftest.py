import pytest
from hypothesis import settings

from sc2combat import Race, UnitClass, default_catalog

settings.register_profile("invariants", max_examples=1000, deadline=None)
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def make_unit(name="u", health=10, dps=5.0, ranged=False, armor=0, shields=0,
              attrs=(), bonus=0.0, bonus_vs=(), aoe=1.0, bonus_aoe=1.0,
              race=Race.TERRAN):
    return UnitClass(
        name=name, race=race, base_health=health, shields=shields, armor=armor,
        base_dps=dps, aoe_area=aoe, ranged=ranged,
        attributes=frozenset(attrs), bonus_base_dps=bonus,
        bonus_aoe_area=bonus_aoe, bonus_vs=frozenset(bonus_vs),
    )


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()
