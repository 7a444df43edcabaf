import math
import os
from pathlib import Path

import numpy as np
import pytest

import bergspec

SCENARIOS = Path(os.environ.get("BERGSPEC_SOURCE_DIR", Path(__file__).resolve().parents[2])) / "scenarios"


def test_scenario_closed_forms():
    s = bergspec.load_scenario(SCENARIOS / "strip_flow.cfg")
    assert s.model == "strip_flow"
    assert abs(s.h(0.5) - math.log(3.0)) < 1e-14
    assert abs(s.flow(1.0, 0.0) - math.tanh(0.5)) < 1e-15
    assert [fp.role for fp in s.fixed_points] == ["denjoy_wolff", "repelling"]


def test_classify_strip_flow():
    report = bergspec.classify((SCENARIOS / "strip_flow.cfg").read_text(), t=[1.0])
    assert report["exit_code"] == 0
    assert report["case"] == "i"
    assert report["regions"]["generator_spectrum"] == [
        {"kind": "VStrip", "params": [-1, 1], "certainty": "certified"}
    ]


def test_generator_spectrum_cases():
    assert bergspec.generator_spectrum(0.5, [1.0, -0.3]) == [
        {"kind": "HalfPlaneLeft", "params": [-0.3], "certainty": "certified"},
        {"kind": "VStrip", "params": [0.5, 1], "certainty": "certified"},
    ]
    assert bergspec.generator_spectrum(-1.0, [2.0, 0.0])[0]["kind"] == "HalfPlaneLeft"
    with pytest.raises(bergspec.CoverageError):
        bergspec.generator_spectrum(-math.inf, [1.0])


def test_verify_and_truncate():
    s = bergspec.load_scenario(SCENARIOS / "strip_flow.cfg")
    report = bergspec.verify(s, [0.5, 2.0])
    assert report["exit_code"] == 0
    assert report["summary"]["fail"] == 0

    m = bergspec.truncation_matrix(s, 1.0, 20)
    assert m.shape == (20, 20)
    assert np.allclose(m[:, 0], np.eye(20)[:, 0])
    assert bergspec.gelfand_radius(np.eye(5, dtype=complex), 8) == pytest.approx(1.0)
    t = bergspec.truncate(s, t=1.0, N=20, n_max=8)
    assert t["operator_radius"] == pytest.approx(math.e, rel=1e-10)


def test_ap_norm_and_errors():
    s = bergspec.load_scenario(SCENARIOS / "strip_flow.cfg")
    status, tau, limit = bergspec.ap_norm(s, lambda z: 1.0, 2.0)
    assert status == "convergent"
    assert limit == pytest.approx(math.pi, rel=1e-6)
    with pytest.raises(bergspec.ConfigError):
        bergspec.parse_scenario("p = 0.5\nmodel = strip_flow\n")
    assert bergspec.render_svg(s).startswith("<?xml")
