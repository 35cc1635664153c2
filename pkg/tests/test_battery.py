import json

import pytest

from mackeyalg.fdalg import battery
from mackeyalg.fdalg.battery import BatteryConfig, gorenstein_battery, run_battery

from conftest import group


@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:3"])
def test_square_free_battery_vanishes(spec):
    recs = gorenstein_battery(group(spec))
    assert recs and all(r.passed for r in recs)
    assert {r.check for r in recs} == {"ext2_vanishes"}
    assert {r.module for r in recs} == set(battery.TEST_MODULES)
    assert all(r.value == "0" for r in recs)


@pytest.mark.parametrize("spec", ["cyclic:4", "klein"])
def test_non_square_free_battery_is_obstructed(spec):
    recs = gorenstein_battery(group(spec))
    assert [(r.check, r.p, r.value, r.passed) for r in recs] == [
        ("self_injective", 2, "false", True)]


def test_battery_modules_are_modules():
    G = group("cyclic:2")
    mods = battery.test_modules(G, 2)
    for name in ("top", "residue"):
        assert mods[name].modulus == 2
    assert mods["corner_projective"].modulus == 0
    with pytest.raises(ValueError):
        battery.test_modules(G, 2, ["injective_hull"])


def test_record_json_drops_seconds():
    rec = gorenstein_battery(group("cyclic:2"), config=BatteryConfig(modules=["top"]))[0]
    assert "seconds" not in rec.to_json(timestamps=False)
    assert "seconds" in rec.to_json()


def test_config_from_json():
    cfg = BatteryConfig.from_json(json.dumps({"groups": ["cyclic:2"], "modules": ["top"]}))
    assert cfg.groups == ["cyclic:2"] and cfg.degree == 2
    recs = run_battery(cfg)
    assert len(recs) == 1 and recs[0].passed


@pytest.mark.parametrize("text", ['{"groups": [], "bogus": 1}', '{"modules": ["dual"]}',
                                  '{"groups": '])
def test_config_errors(text):
    with pytest.raises(ValueError):
        BatteryConfig.from_json(text)
