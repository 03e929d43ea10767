import math

import pytest

from bandspec import RadialRegion
from bandspec.regions import EMPTY


def test_kinds():
    assert RadialRegion.disk(1, 2).kind == "closed_disk"
    assert RadialRegion.open_disk(1, 2).kind == "open_disk"
    assert RadialRegion.circle(1, 2).kind == "circle"
    assert RadialRegion.singleton(1).kind == "singleton"
    assert RadialRegion.plane(1).kind == "plane"
    assert RadialRegion.open_disk(1, 0) is EMPTY
    assert RadialRegion(0, 0, 1, False, True).kind == "punctured_disk"
    assert RadialRegion(0, 1, 2, False, True).kind == "annulus"


def test_contains_boundaries():
    d, o, c = RadialRegion.disk(1, 1), RadialRegion.open_disk(1, 1), RadialRegion.circle(1, 1)
    assert d.contains(2) and not o.contains(2) and c.contains(1j + 1)
    assert o.contains(1.5) and not c.contains(1.5)
    assert RadialRegion.singleton(2).contains(2) and not RadialRegion.singleton(2).contains(2.1)
    assert RadialRegion.plane(0).contains(1e300)
    assert not EMPTY.contains(0)


def test_subset():
    d = RadialRegion.disk(0, 1)
    assert RadialRegion.open_disk(0, 1).is_subset(d)
    assert not d.is_subset(RadialRegion.open_disk(0, 1))
    assert RadialRegion.singleton(0).is_subset(d)
    assert d.is_subset(RadialRegion.plane(0))
    assert EMPTY.is_subset(d) and not d.is_subset(EMPTY)
    with pytest.raises(ValueError):
        d.is_subset(RadialRegion.disk(1, 1))


def test_json_and_str():
    assert RadialRegion.singleton(2.0).to_json() == {"kind": "singleton", "singleton": 2.0}
    assert RadialRegion.plane().to_json() == {"kind": "plane"}
    assert RadialRegion.circle(1, 3).to_json()["radius"] == 3
    assert str(RadialRegion.disk(1, 1)) == "|a - 1| <= 1"
    assert str(RadialRegion.plane()) == "C"
    assert str(EMPTY) == "{}"
    assert math.isinf(RadialRegion.plane().hi)
