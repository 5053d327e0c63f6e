import json

import numpy as np
import pytest

from levynoise import (
    default_verification_config,
    mc_mean_test,
    parse_config,
    report_to_json,
    run,
    write_report,
)
from levynoise.errors import ConfigError, DegenerateVarianceError, UnknownCheckError
from levynoise.harness import write_samples_csv


BASE = {
    "measure": {"atoms": [[1.0, 1.0]]},
    "window": 2.0,
    "samples": 2000,
    "seed": 11,
    "checks": [],
}


def cfg(**overrides):
    raw = dict(BASE)
    raw.update(overrides)
    return parse_config(raw)


def test_parse_minimal():
    c = cfg()
    assert c.samples == 2000 and c.se_multiplier == 3.0


def test_parse_rejects_small_sample_count():
    with pytest.raises(ConfigError):
        cfg(samples=10)


def test_parse_rejects_small_multiplier():
    with pytest.raises(ConfigError):
        cfg(se_multiplier=0.5)


def test_parse_rejects_unknown_check():
    with pytest.raises(UnknownCheckError):
        cfg(checks=[{"kind": "nope"}])


def test_parse_rejects_garbage():
    with pytest.raises(ConfigError):
        parse_config("{not json")
    with pytest.raises(ConfigError):
        parse_config(12)


def test_mc_mean_test_constant_on_target():
    est, se, z, passed = mc_mean_test(np.full(2000, 3.0), 3.0)
    assert (est, se, z, passed) == (3.0, 0.0, 0.0, True)


def test_mc_mean_test_degenerate():
    with pytest.raises(DegenerateVarianceError):
        mc_mean_test(np.full(2000, 3.0), 2.0)


def test_mc_mean_test_mean_zero_property():
    rng = np.random.default_rng(0)
    est, se, z, passed = mc_mean_test(rng.normal(0, 1, 10_000), 0.0)
    assert passed and abs(z) <= 3


def test_empty_check_list_passes():
    report = run(cfg())
    assert report.passed and len(report.checks) == 0


def test_char_gap_at_zero_theta():
    report = run(cfg(checks=[{"kind": "char_gap", "set": [0.0, 1.0],
                              "n_theta": 1, "theta_max": 0.0}]))
    assert report.checks[0].lhs == pytest.approx(0.0, abs=1e-12)
    assert report.passed


def test_moment_check_hits_exact_target():
    report = run(cfg(samples=100_000,
                     checks=[{"kind": "moment_mc", "p": 6, "set": [0.0, 1.0]}]))
    c = report.checks[0]
    assert c.rhs == 41.0  # exact sixth moment for the unit-atom measure
    assert c.passed


def test_reports_are_reproducible(tmp_path):
    config = default_verification_config(seed=5, samples=2000)
    r1, r2 = run(config), run(config)
    d1, d2 = json.loads(report_to_json(r1)), json.loads(report_to_json(r2))
    d1["environment"]["wall_time_s"] = d2["environment"]["wall_time_s"] = 0.0
    assert json.dumps(d1, sort_keys=True) == json.dumps(d2, sort_keys=True)


def test_json_round_trip_full_precision(tmp_path):
    config = default_verification_config(seed=6, samples=2000)
    report = run(config)
    path = tmp_path / "report.json"
    write_report(report, "json", path)
    loaded = json.loads(path.read_text())
    for c_obj, c in zip(loaded["checks"], report.checks):
        if c.z is not None:
            assert c_obj["z"] == c.z  # repr round-trip is exact


def test_csv_round_trip_z_scores(tmp_path):
    config = default_verification_config(seed=7, samples=2000)
    report = run(config)
    path = tmp_path / "report.csv"
    write_report(report, "csv", path)
    import csv as csvmod
    with path.open() as fh:
        rows = list(csvmod.DictReader(fh))
    for row, c in zip(rows, report.checks):
        if c.z is not None:
            assert float(row["z"]) == c.z


def test_unknown_format_rejected(tmp_path):
    report = run(cfg())
    with pytest.raises(ConfigError):
        write_report(report, "yaml", tmp_path / "r.out")


def test_samples_dump(tmp_path):
    config = cfg(checks=[{"kind": "moment_mc", "p": 2, "set": [0.0, 1.0]}])
    report = run(config, keep_samples=True)
    path = tmp_path / "samples.csv"
    write_samples_csv(report, path)
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 1 + 2000


def test_default_suite_passes():
    report = run(default_verification_config(samples=5000))
    failed = [c.name for c in report.checks if not c.passed]
    assert report.passed, failed
    kinds = {c.kind for c in report.checks}
    assert len(kinds) >= 15  # every family is represented
