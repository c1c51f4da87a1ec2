import pytest

from invariant_props import PROPERTIES


@pytest.mark.parametrize("prop", PROPERTIES, ids=lambda p: p.__name__)
def test_invariant(prop):
    prop()
