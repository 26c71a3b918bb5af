"""Smoke tests for the python bindings against the freshly built extension."""

import json
import os
from pathlib import Path

import pytest

import hdbkit

FIXTURES = Path(os.environ["HDB_FIXTURE_DIR"])


def test_targets_sum_to_reference_diet():
    t = hdbkit.targets()
    six = [g for g in hdbkit.group_labels() if g != "sugars"]
    assert sum(t[g] for g in six) == 2330.0
    assert t["sugars"] == 233.0


def test_hdbi_anchor_values():
    afghanistan_1961 = {
        "animal_source_foods": 0.663,
        "fruits": 0.369,
        "legumes_nuts_seeds": 0.117,
        "oils_fats": 0.243,
        "starchy_staples": 2.203,
        "vegetables": 0.2,
        "sugars": 0.222,
    }
    assert hdbkit.hdbi(afghanistan_1961) == pytest.approx(0.432, abs=0.002)
    assert hdbkit.hdbi({g: 2.0 for g in hdbkit.group_labels()}) == 1.0
    only_staples = {g: 0.0 for g in hdbkit.group_labels()}
    only_staples["starchy_staples"] = 2.0
    assert hdbkit.hdbi(only_staples) == pytest.approx(1 - 5 / 6, abs=0.0005)


def test_ratio_round_trip():
    kcal = {"starchy_staples": 1160, "fruits": 160, "vegetables": 110,
            "animal_source_foods": 300, "legumes_nuts_seeds": 300,
            "oils_fats": 300, "sugars": 233}
    ratios = hdbkit.adequacy_ratios(kcal)
    assert all(r == 1.0 for r in ratios.values())
    assert hdbkit.total_energy(kcal) == 2563.0
    ratios2, score = hdbkit.score_supply(kcal)
    assert score == 1.0
    assert ratios2 == ratios


def test_unknown_group_raises():
    with pytest.raises(hdbkit.PipelineError):
        hdbkit.hdbi({"cheese": 1.0})


def test_validate_and_run(tmp_path):
    config = FIXTURES / "mini" / "config.json"
    assert hdbkit.validate(config) == []

    out = tmp_path / "out"
    written = hdbkit.run(config, out_dir=str(out))
    assert (out / "scores_country.csv").exists()
    assert len(written) == 10

    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["outputs"]

    expected = (FIXTURES / "mini" / "expected" / "scores_country.csv").read_bytes()
    assert (out / "scores_country.csv").read_bytes() == expected


def test_validation_reports_gaps(tmp_path):
    cfg = {
        "fbsh": [str(FIXTURES / "mini" / "fbsh.csv")],
        "fbs": [str(FIXTURES / "mini" / "fbs.csv")],
        "region_scheme": str(FIXTURES / "mini" / "regions.csv"),
        "succession": str(FIXTURES / "mini" / "succession.csv"),
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg))
    violations = hdbkit.validate(path)
    assert any(field == "commodity_map" for field, _ in violations)
