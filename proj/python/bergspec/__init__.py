"""Spectral regions and numerical checks for weighted composition semigroups on Bergman spaces.

The heavy lifting happens in the C++ core; reports come back as plain dictionaries with the
same layout as the ``bergspec`` command-line tool.
"""

import json
from pathlib import Path

from ._core import (
    BergspecError,
    ConfigError,
    CoverageError,
    FixedPoint,
    Scenario,
    ap_norm,
    eigen_cloud,
    gelfand_radius,
    parse_scenario,
    render_svg,
    truncation_matrix,
)
from . import _core

__all__ = [
    "BergspecError",
    "ConfigError",
    "CoverageError",
    "FixedPoint",
    "Scenario",
    "ap_norm",
    "classify",
    "eigen_cloud",
    "gelfand_radius",
    "generator_spectrum",
    "load_scenario",
    "operator_spectrum",
    "parse_scenario",
    "render_svg",
    "truncate",
    "truncation_matrix",
    "verify",
]


def load_scenario(path):
    return parse_scenario(Path(path).read_text())


def _as_scenario(scenario):
    return parse_scenario(scenario) if isinstance(scenario, str) else scenario


def classify(scenario, t=(1.0,)):
    """Classification report; ``report["exit_code"]`` mirrors the CLI exit status."""
    text, code = _core.classify_json(_as_scenario(scenario), list(t))
    report = json.loads(text)
    report["exit_code"] = code
    return report


def verify(scenario, lambdas, t=(1.0,)):
    text, code = _core.verify_json(_as_scenario(scenario), [complex(x) for x in lambdas], list(t))
    report = json.loads(text)
    report["exit_code"] = code
    return report


def truncate(scenario, t=1.0, N=60, n_max=24):
    text, code = _core.truncate_json(_as_scenario(scenario), float(t), int(N), int(n_max))
    report = json.loads(text)
    report["exit_code"] = code
    return report


def generator_spectrum(gamma0, repelling=(), p=2.0):
    return json.loads(_core.generator_spectrum_json(float(p), float(gamma0), [float(x) for x in repelling]))


def operator_spectrum(gamma0, repelling=(), t=1.0, p=2.0):
    return json.loads(_core.operator_spectrum_json(float(p), float(gamma0), [float(x) for x in repelling], float(t)))
