"""The verification harness: checkers, reports, batch runner, serialization."""

import json
import math

import numpy as np
import pytest

from shadowcalc import (Config, DegenerateInput, bodies, hull,
                        make_rule, mc_volume, resolve_seed, verify_all,
                        verify_cauchy, verify_lemma_linearity,
                        verify_lemma_projection, verify_mixed_volume,
                        verify_moment, verify_surface_eq2, volume)
from shadowcalc.verify import (THEOREMS, reports_to_csv, reports_to_json,
                               reports_to_pretty, resolve_body)
from conftest import random_rotation


def test_resolve_seed_precedence(monkeypatch):
    monkeypatch.delenv("SHADOWCALC_SEED", raising=False)
    assert resolve_seed(None) == 42
    monkeypatch.setenv("SHADOWCALC_SEED", "17")
    assert resolve_seed(None) == 17
    assert resolve_seed(3) == 3
    monkeypatch.setenv("SHADOWCALC_SEED", "not-a-number")
    with pytest.raises(DegenerateInput):
        resolve_seed(None)


def test_verify_cauchy_cube3(cube3):
    report = verify_cauchy(cube3, make_rule(3, "fibonacci-sphere", 10_000))
    assert report.passed
    assert report.theorem == "cauchy"
    assert report.lhs == pytest.approx(6.0, rel=1e-12)
    assert report.rel_error <= 1e-3
    assert report.nodes == 10_000
    assert report.rule["kind"] == "fibonacci-sphere"


def test_verify_cauchy_rotated_body():
    poly = bodies.random_polytope(3, 20, seed=3)
    rot = random_rotation(3, seed=8)
    rotated = hull(poly.vertices @ rot.T)
    rule = make_rule(3, "fibonacci-sphere", 10_000)
    assert verify_cauchy(poly, rule).passed
    assert verify_cauchy(rotated, rule).passed


def test_verify_cauchy_monotone_refinement(cube3):
    errs = [verify_cauchy(cube3,
                          make_rule(3, "fibonacci-sphere", size)).rel_error
            for size in (1000, 10_000, 100_000)]
    assert errs[1] <= errs[0] * 1.1
    assert errs[2] <= errs[1] * 1.1


def test_verify_moment_square(square):
    report = verify_moment(square, make_rule(2, "angular-trapezoid", 3600))
    assert report.passed
    np.testing.assert_allclose(report.lhs, [2.0, 2.0], atol=1e-12)
    np.testing.assert_allclose(report.rhs, [2.0, 2.0], atol=1e-5)
    # the unweighted reading overshoots by pi/2 exactly
    ratio = np.asarray(report.extra["unweighted_rhs"]) / np.asarray(
        report.lhs)
    np.testing.assert_allclose(ratio, math.pi / 2.0, atol=1e-3)


def test_verify_moment_monte_carlo():
    body = bodies.simplex(4)
    report = verify_moment(body, make_rule(4, "monte-carlo", 20_000,
                                           seed=11))
    assert report.passed  # within 4 reported standard errors
    assert "stderr" in report.extra


def test_verify_surface_eq2_cube(cube3):
    report = verify_surface_eq2(cube3, levels=(1, 2, 3))
    assert report.passed
    assert report.extra["monotone"]
    assert len(report.extra["rhs_by_level"]) == 3
    assert report.rhs == pytest.approx(6.0, rel=1e-2)


def test_verify_surface_eq2_rejects_empty_levels(cube3):
    with pytest.raises(DegenerateInput):
        verify_surface_eq2(cube3, levels=())


def test_verify_lemma_projection_quick(simplex3):
    report = verify_lemma_projection(simplex3, trials=10, seed=1)
    assert report.passed
    assert report.extra["identity_max"] <= 1e-8
    assert report.extra["agreement_max"] <= 1e-9


def test_verify_lemma_linearity_quick(cube3):
    report = verify_lemma_linearity(cube3, trials=5, seed=1)
    assert report.passed
    assert report.rel_error <= 1e-8


def test_verify_mixed_volume(cube3):
    report = verify_mixed_volume(cube3)
    assert report.passed
    assert report.extra["fit_residual"] <= 1e-8
    assert report.extra["min_coefficient"] >= -1e-9


def test_mc_volume_basics(cube3):
    estimate, stderr = mc_volume(cube3, 5000, seed=0)
    # [0,1]^3 fills its own bounding box: every sample hits
    assert estimate == pytest.approx(1.0, abs=1e-12)
    assert stderr == pytest.approx(0.0, abs=1e-12)
    cross = bodies.cross_polytope(3)
    estimate, stderr = mc_volume(cross, 100_000, seed=1)
    assert abs(estimate - volume(cross)) <= 4.0 * stderr
    again, _ = mc_volume(cross, 100_000, seed=1)
    assert again == estimate
    with pytest.raises(DegenerateInput):
        mc_volume(cube3, 999, seed=0)


def test_verify_all_order_and_pass(square):
    config = Config(seed=5)
    reports = verify_all(square, config)
    assert [r.theorem for r in reports] == list(THEOREMS)
    assert all(r.passed for r in reports)


def test_verify_all_continues_past_errors(cube3):
    # A dimension-mismatched rule spec breaks cauchy and moment, but the
    # remaining checkers still run.
    config = Config(quadrature={3: {"kind": "angular-trapezoid",
                                    "size": 360}}, seed=5)
    reports = verify_all(cube3, config)
    assert [r.theorem for r in reports] == list(THEOREMS)
    failed = {r.theorem: r for r in reports if "error" in r.extra}
    assert set(failed) == {"cauchy", "moment"}
    assert failed["cauchy"].extra["error"] == "kind-dimension-mismatch"
    assert not failed["cauchy"].passed
    assert all(r.passed for r in reports if "error" not in r.extra)


def test_verify_all_builtin_requires_dim():
    reports = verify_all("cube", Config(seed=1), theorems=("cauchy",))
    assert "error" in reports[0].extra


def test_resolve_body_forms(cube3):
    assert resolve_body(cube3)[1] is cube3
    label, ball = resolve_body("ball:2", dim=3)
    assert label == "ball:2" and ball.level == 2
    _, rancho = resolve_body("random:12,5", dim=2)
    assert rancho.dim == 2
    with pytest.raises(DegenerateInput):
        resolve_body("dodecahedron", dim=3)
    with pytest.raises(DegenerateInput):
        resolve_body("cube")  # no dim


def test_config_validation():
    with pytest.raises(DegenerateInput):
        Config(output="yaml")
    with pytest.raises(DegenerateInput):
        Config(tolerances={"cauchy": -1.0})
    with pytest.raises(DegenerateInput):
        Config(tolerances={"no-such-theorem": 1.0})
    with pytest.raises(DegenerateInput):
        Config.from_dict({"unknown_field": 1})
    config = Config.from_dict({"quadrature": {"2": {
        "kind": "angular-trapezoid", "size": 720}}, "seed": 9})
    assert config.rule_for(2).size == 720
    assert config.rule_for(4).seed == 9


def test_config_default_rules():
    config = Config(seed=4)
    assert config.rule_for(2).kind == "angular-trapezoid"
    assert config.rule_for(3).kind == "fibonacci-sphere"
    assert config.rule_for(4).kind == "monte-carlo"
    assert config.eq2_levels(3) == [1, 2, 3, 4]
    assert config.eq2_levels(5) == [1, 2, 3]


def test_reports_json_deterministic(square):
    config = Config(seed=11)
    first = reports_to_json(verify_all(square, config))
    second = reports_to_json(verify_all(square, config))
    assert first == second
    assert "runtime_ms" not in first
    with_timings = reports_to_json(verify_all(square, config), timings=True)
    assert "runtime_ms" in with_timings


def test_reports_csv_shape(square):
    reports = verify_all(square, Config(seed=2), theorems=("cauchy",
                                                           "moment"))
    csv_text = reports_to_csv(reports)
    lines = csv_text.strip().split("\n")
    assert lines[0] == ("theorem,dim,body,lhs,rhs,rel_error,nodes,seed,"
                        "runtime_ms,pass")
    assert len(lines) == 3
    assert lines[1].startswith("cauchy,2,")
    assert lines[2].split(",")[-1] == "true"
    # vector cells join components with semicolons
    assert ";" in lines[2].split(",")[3]


def test_reports_pretty(square):
    reports = verify_all(square, Config(seed=2), theorems=("cauchy",))
    text = reports_to_pretty(reports)
    assert text.startswith("PASS")
    assert "cauchy" in text


def test_report_json_roundtrip_fields(cube3):
    report = verify_cauchy(cube3, make_rule(3, "fibonacci-sphere", 1000))
    data = json.loads(reports_to_json([report]))[0]
    assert set(data) == {"theorem", "dim", "body", "lhs", "rhs", "abs_error",
                         "rel_error", "tolerance", "pass", "nodes", "seed",
                         "rule", "extra"}
    assert data["pass"] is True
    assert data["rule"]["dim"] == 3
