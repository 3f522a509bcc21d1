"""Smoke tests for the python module: a few worked values per operation."""

import json
import math
import os
import subprocess
import sys
import tempfile

import degenop


def op_1d(gamma=1.0, c=0.0, b=0.75, alpha=0.0):
    return degenop.Operator(
        {
            "dim_x": 0,
            "alpha1": alpha,
            "alpha2": alpha,
            "Q": [],
            "q": [],
            "gamma": gamma,
            "d": [],
            "c": c,
            "b": b,
        }
    )


def op_2d(**kw):
    record = {
        "dim_x": 1,
        "alpha1": 0.0,
        "alpha2": 0.0,
        "Q": [1.0],
        "q": [0.0],
        "gamma": 1.0,
        "d": [0.0],
        "c": 1.0,
        "b": 0.0,
    }
    record.update(kw)
    return degenop.Operator(record)


def test_indicial_roots():
    D, s1, s2 = degenop.indicial_roots(op_1d())
    assert abs(D - 1.0) < 1e-14
    assert abs(s1 + 1.5) < 1e-14
    assert abs(s2 - 0.5) < 1e-14


def test_validate_flags_bad_exponents():
    bad = op_2d(alpha2=2.5)
    assert "alpha2 < 2" in degenop.validate(bad)
    assert degenop.validate(op_2d()) == []


def test_kelvin_conjugation_kills_potential():
    space = degenop.Space(p=2.0, m=0.0)
    conj, conj_space = degenop.conjugate_by_kelvin(op_1d(), space, 1.5, 0.0)
    report = json.loads(conj.to_json())
    assert abs(report["c"] - 3.0) < 1e-14
    assert abs(report["b"]) < 1e-14
    assert abs(conj_space.m - 3.0) < 1e-14


def test_generation_window():
    report = degenop.check_generation(op_1d(), degenop.Space(p=2.0, m=0.0), "dirichlet")
    assert report["generates"] is True
    assert abs(report["window"]["lo"] + 1.5) < 1e-14
    assert abs(report["window"]["hi"] - 2.5) < 1e-14


def test_regime_flags():
    flags = degenop.regime_flags(op_2d(c=2.0), degenop.Space(p=2.0, m=0.0))
    assert "DIRICHLET_OBLIQUE_COINCIDE" in flags


def test_reduce_pipeline_shape():
    pipe = degenop.reduce_to_canonical(
        op_2d(alpha1=1.0, alpha2=0.0, c=0.0), degenop.Space(p=2.0, m=0.0), "oblique"
    )
    kinds = [step["kind"] for step in pipe["steps"]]
    assert kinds == ["kelvin"]
    assert abs(pipe["steps"][0]["beta"] - 0.5) < 1e-14
    assert abs(pipe["target"]["operator"]["alpha1"] - 2.0 / 3.0) < 1e-14


def test_solve_resolvent_trace():
    out = degenop.solve_resolvent(
        op_1d(), degenop.Space(p=2.0, m=0.0), "dirichlet", 1.0, ny=320, y_max=12.0
    )
    assert out["residual"] <= 1e-10
    assert abs(out["trace_estimate"]) <= 1e-2
    assert out["norm"] > 0.0


def test_analyze_document_shape():
    doc = degenop.analyze(op_2d(), degenop.Space(p=2.0, m=0.0))
    assert doc["validation"]["admissible"] is True
    assert set(doc["generation"].keys()) == {"oblique", "dirichlet"}
    assert doc["generation"]["oblique"]["generates"] is True


def test_selftest_passes():
    results = degenop.selftest(11)
    assert all(entry["pass"] for entry in results.values())


def test_cli_analyze_roundtrip():
    cli = os.environ.get("DEGENOP_CLI")
    if not cli:
        import pytest

        pytest.skip("CLI path not provided")
    with tempfile.TemporaryDirectory() as tmp:
        config = {
            "schema_version": 1,
            "operator": {
                "dim_x": 0,
                "alpha1": 0.0,
                "alpha2": 0.0,
                "Q": [],
                "q": [],
                "gamma": 1.0,
                "d": [],
                "c": 0.0,
                "b": 0.75,
            },
            "space": {"p": 2.0, "m": 0.0},
        }
        cfg = os.path.join(tmp, "config.json")
        with open(cfg, "w") as f:
            json.dump(config, f)
        subprocess.run([cli, "analyze", "--config", cfg, "--out", tmp], check=True)
        with open(os.path.join(tmp, "analyze.json")) as f:
            report = json.load(f)
        assert math.isclose(report["indicial"]["s1"], -1.5)
        assert report["generation"]["dirichlet"]["generates"] is True
