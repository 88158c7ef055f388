"""Scenario files: declarative (algebra, r, s, L, sigma, k, numeric) problem instances."""

from __future__ import annotations

import copy
import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from ..errors import ExpressionSyntaxError, PoleError, ScenarioError
from ..lie import named_algebra
from ..pcm import build_pcm, pcm_r_coefficient, pcm_s_coefficient
from ..sigma import AntiAutomorphism
from ..tensor import MatrixRF, identity
from .parser import parse_expression

BUILTINS = ("pcm",)

DEFAULT_NUMERIC = {
    "cells": 2000,
    "length": 1.0,
    "seed": 0,
    "currents": {"kind": "fourier", "modes": 3, "amplitude": 1.0},
    "lambda_grid": [8, 12, 16, 24],
    "lambdas": [3.0],
    "tolerance": 1e-6,
}


def bundled(name="pcm"):
    """Path of a scenario shipped with the package."""
    ref = resources.files("boundary_lax.scenario") / "data" / f"{name}.yaml"
    return Path(str(ref))


def _matrix(rows, where, size=None):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ScenarioError(f"{where}: expected a list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ScenarioError(f"{where}: matrix must be square")
    if size is not None and n != size:
        raise ScenarioError(f"{where}: expected a {size}x{size} matrix, got {n}x{n}")
    try:
        return [[parse_expression(str(v)) for v in r] for r in rows]
    except ExpressionSyntaxError as e:
        raise ScenarioError(f"{where}: {e}") from e


def _numeric_matrix(rows, where, N):
    a = np.asarray(rows, dtype=float)
    if a.shape != (N, N):
        raise ScenarioError(f"{where}: expected a {N}x{N} numeric matrix")
    return a


@dataclass(frozen=True, eq=False)
class Scenario:
    name: str
    raw: dict
    algebra: object
    r: MatrixRF
    s: MatrixRF
    sigma: AntiAutomorphism
    k: MatrixRF
    checks: tuple
    numeric: dict
    options: dict = field(default_factory=dict)
    _model: list = field(default_factory=list, repr=False)

    @property
    def N(self):
        return self.algebra.N

    @property
    def model(self):
        """PCM model (field template and bracket table), built on first use."""
        if not self._model:
            self._model.append(build_pcm(self.algebra, self.options.get("dprime_coefficient", 1)))
        return self._model[0]

    @property
    def uses_pcm_fields(self):
        return self.raw.get("lax", "pcm") == "pcm"

    def digest(self, extra=""):
        blob = json.dumps(self.raw, sort_keys=True, default=str) + extra
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _tensor(spec, which, algebra):
    N = algebra.N
    if spec == "pcm":
        coeff = pcm_r_coefficient() if which == "r" else pcm_s_coefficient()
        return algebra.pi.scale(coeff)
    if isinstance(spec, (str, int, float)):
        try:
            return algebra.pi.scale(parse_expression(str(spec)))
        except ExpressionSyntaxError as e:
            raise ScenarioError(f"{which}: {e}") from e
    rows = _matrix(spec, which, N * N)
    return MatrixRF.from_rows(rows, N=N, legs=2)


def _sigma(spec):
    if isinstance(spec, str):
        try:
            return AntiAutomorphism.named(spec)
        except ValueError as e:
            raise ScenarioError(str(e)) from e
    if isinstance(spec, dict):
        try:
            return AntiAutomorphism.custom(int(spec.get("sign", -1)), bool(spec.get("transpose", False)))
        except ValueError as e:
            raise ScenarioError(f"sigma: {e}") from e
    raise ScenarioError("sigma: expected 'reflection', 'twisted' or a {sign, transpose} mapping")


def from_dict(data, name=None):
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a mapping")
    data = copy.deepcopy(data)
    try:
        algebra = named_algebra(str(data.get("algebra", "gl(2)")))
    except (ValueError, KeyError) as e:
        raise ScenarioError(f"algebra: {e}") from e
    r = _tensor(data.get("r", "pcm"), "r", algebra)
    s = _tensor(data.get("s", "pcm"), "s", algebra)
    lax = data.get("lax", "pcm")
    if lax not in BUILTINS:
        raise ScenarioError(f"lax: unknown builtin {lax!r}")
    sigma = _sigma(data.get("sigma", "reflection"))
    k = identity(algebra.N) if "k" not in data else MatrixRF.from_rows(_matrix(data["k"], "k", algebra.N))
    try:
        if not k.det():
            raise ScenarioError("k: matrix is not invertible")
    except PoleError as e:
        raise ScenarioError(f"k: {e}") from e
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise ScenarioError("checks: expected a list of names")
    numeric = {**DEFAULT_NUMERIC, **(data.get("numeric") or {})}
    numeric["currents"] = {**DEFAULT_NUMERIC["currents"], **(numeric.get("currents") or {})}
    kspec = numeric.get("K") or {}
    N = algebra.N
    numeric["K_k"] = (
        _numeric_matrix(kspec["k"], "numeric.K.k", N) if "k" in kspec else _k_float(k)
    )
    numeric["K_f"] = _numeric_matrix(kspec["f"], "numeric.K.f", N) if "f" in kspec else np.zeros((N, N))
    cur = numeric["currents"]
    if cur.get("kind") not in ("fourier", "constant", "zero"):
        raise ScenarioError("numeric.currents.kind must be fourier, constant or zero")
    if cur["kind"] == "constant":
        cur["j0_array"] = _numeric_matrix(cur.get("j0", np.zeros((N, N)).tolist()), "numeric.currents.j0", N)
        cur["j1_array"] = _numeric_matrix(cur.get("j1", np.zeros((N, N)).tolist()), "numeric.currents.j1", N)
    options = {
        "dprime_coefficient": data.get("dprime_coefficient", 1),
        "trace_max_power": int(data.get("trace_max_power", 3)),
        "lax_orders": tuple(data.get("lax_orders", [1, 2])),
        "charge_order": int(data.get("charge_order", 3)),
    }
    return Scenario(
        name or str(data.get("name", "scenario")), data, algebra, r, s, sigma, k, tuple(checks), numeric, options
    )


def _k_float(k):
    if not k.is_constant():
        raise ScenarioError("numeric.K.k must be given when k depends on lambda")
    return np.array([[float(v.constant_value()) for v in row] for row in k.rows()])


def load(path):
    """Read a scenario file; the name ``pcm`` (or ``pcm-twisted``) selects a bundled file."""
    p = Path(path)
    if not p.exists() and not p.suffix:
        candidate = bundled(str(path))
        if candidate.exists():
            p = candidate
    try:
        text = p.read_text()
    except OSError as e:
        raise ScenarioError(f"cannot read scenario {path}: {e}") from e
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ScenarioError(f"scenario {path} is not valid YAML: {e}") from e
    return from_dict(data, name=None)
