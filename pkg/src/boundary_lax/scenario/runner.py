"""Check registry, dependency ordering and reports."""

from __future__ import annotations

import json
import math
import time
import traceback
from dataclasses import dataclass, field

import numpy as np

from ..boundary import closure_check, constraint_report, cybe_residual, skew_residual, symmetry_residual, trace_commute
from ..errors import BoundaryLaxError, ScenarioError
from ..monodromy import numeric as num
from ..monodromy.linear_limit import linear_limit_check
from ..pcm import (
    PCMSpec,
    boundary_current_closure,
    charge_densities,
    pcm_lax_partner,
    restr_check,
    trace_square_series,
)

# check -> prerequisites; the order of this mapping is the execution order
DEPENDENCIES = {
    "cybe": (),
    "constraints": ("cybe",),
    "closure": ("constraints",),
    "traces": ("closure",),
    "lax": ("closure",),
    "pcm-closure": ("constraints",),
    "charges": ("closure",),
    "numeric-convergence": (),
    "numeric-charges": (),
    "numeric-crosscheck": (),
    "linear-limit": ("closure",),
}
CHECKS = tuple(DEPENDENCIES)
DEFAULT_CHECKS = tuple(c for c in CHECKS if c != "linear-limit")
NUMERIC_CHECKS = ("numeric-convergence", "numeric-charges", "numeric-crosscheck")

PASS, FAIL, SKIPPED, ERROR = "pass", "fail", "skipped", "error"


def summarize(x):
    """Deterministic, JSON-ready account of an exact residual."""
    if x is None:
        return None
    zero = x.is_zero()
    out = {"zero": zero}
    if not zero:
        entries = x.entries if hasattr(x, "entries") else dict(x.items())
        out["nonzero_entries"] = len(entries)
        text = str(x)
        out["sample"] = text if len(text) <= 160 else text[:157] + "..."
    return out


def _float(x):
    x = float(x)
    return None if math.isnan(x) else x


@dataclass
class CheckRecord:
    name: str
    status: str
    digest: str
    residuals: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    message: str = ""
    seconds: float = 0.0

    def as_dict(self, timing=False):
        d = {
            "name": self.name,
            "status": self.status,
            "inputs_digest": self.digest,
            "residuals": self.residuals,
            "params": self.params,
        }
        if self.message:
            d["message"] = self.message
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass
class Report:
    scenario: str
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.status == PASS for r in self.records)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def status(self, name):
        for r in self.records:
            if r.name == name:
                return r.status
        raise KeyError(name)

    def record(self, name):
        return next(r for r in self.records if r.name == name)

    def machine(self):
        """Sorted-key JSON without timings; identical inputs give identical bytes."""
        doc = {
            "scenario": self.scenario,
            "passed": self.passed,
            "checks": [r.as_dict() for r in self.records],
        }
        return json.dumps(doc, sort_keys=True, indent=2, default=_json_default)

    def text(self):
        lines = [f"scenario {self.scenario}"]
        for r in self.records:
            line = f"  {r.status.upper():8s} {r.name:22s} {r.seconds:8.3f}s  [{r.digest}]"
            if r.message:
                line += f"  {r.message}"
            lines.append(line)
        n = sum(r.status == PASS for r in self.records)
        lines.append(f"{n}/{len(self.records)} checks passed")
        return "\n".join(lines)


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    return str(o)


# --- individual checks ------------------------------------------------------
# each returns (passed, residuals, params, message)


def _check_cybe(sc):
    skew = skew_residual(sc.r)
    sym = symmetry_residual(sc.s)
    res = {"r_skew": summarize(skew), "s_symmetric": summarize(sym)}
    if not (skew.is_zero() and sym.is_zero()):
        bad = [n for n, v in (("r is not skew", skew), ("s is not symmetric", sym)) if not v.is_zero()]
        return False, res, {}, "precondition failed: " + ", ".join(bad)
    c = cybe_residual(sc.r, sc.s)
    res["cybe"] = summarize(c)
    return c.is_zero(), res, {}, ""


def _check_constraints(sc):
    rep = constraint_report(sc.k, sc.r, sc.s, sc.sigma)
    res = {
        "k_r_constraint": summarize(rep.residual_r),
        "k_s_constraint": summarize(rep.residual_s),
        "derived_form": [summarize(f) for f in rep.derived_form],
    }
    msg = "" if rep.agree else "constraints and derived form disagree"
    return rep.constraints_hold and rep.agree, res, {"sigma": sc.sigma.kind}, msg


def _check_closure(sc):
    m = sc.model
    rep = closure_check(m.L, sc.k, sc.sigma, m.table, sc.r, sc.s)
    res = {
        "dprime": summarize(rep.dprime),
        "dprime_minus_expected": summarize(rep.dprime - rep.dprime_expected),
        "gen": summarize(rep.residual),
        "expanded_formula": summarize(rep.raw_formula_residual),
    }
    return rep.passed, res, {"sigma": sc.sigma.kind}, ""


def _check_traces(sc):
    m = sc.model
    top = sc.options["trace_max_power"]
    res = {}
    ok = True
    for a in range(1, top + 1):
        for b in range(1, top + 1):
            v = trace_commute(m.L, sc.k, sc.sigma, m.table, a, b)
            res[f"{a},{b}"] = summarize(v)
            ok &= v.is_zero()
    return ok, res, {"max_power": top}, ""


def _check_lax(sc):
    spec = _pcm_spec(sc)
    res = {}
    ok = True
    for n in sc.options["lax_orders"]:
        _, r = pcm_lax_partner(spec, n)
        res[str(n)] = summarize(r)
        ok &= r.is_zero()
    return ok, res, {"orders": list(sc.options["lax_orders"])}, ""


def _pcm_spec(sc):
    if sc.sigma.kind not in ("reflection", "twisted"):
        raise ScenarioError("this check needs sigma 'reflection' or 'twisted'")
    return PCMSpec(sc.model, sc.sigma, sc.k)


def _check_pcm_closure(sc):
    spec = _pcm_spec(sc)
    rs = restr_check(sc.k, sc.sigma, sc.algebra)
    rep = boundary_current_closure(spec)
    res = {"restr": summarize(rs), **{k: summarize(v) for k, v in rep.residuals.items()}}
    bad = [k for k, v in rep.residuals.items() if not v.is_zero()]
    msg = ("restr fails; " if not rs.is_zero() else "") + (f"current brackets off in {', '.join(bad)}" if bad else "")
    return rs.is_zero() and rep.passed, res, {"sigma": sc.sigma.kind}, msg.strip("; ")


def _check_charges(sc):
    spec = _pcm_spec(sc)
    order = sc.options["charge_order"]
    if sc.sigma.kind != "reflection":
        series = trace_square_series(spec, order)
        res = {str(k): {"coefficient": str(v)[:160]} for k, v in sorted(series.items())}
        return True, res, {"order": order, "closed_forms": False}, "coefficients reported, no closed form asserted"
    stated = charge_densities(spec, order).residuals()
    corrected = charge_densities(spec, order, corrected=True).residuals()
    res = {
        "stated": {str(k): summarize(v) for k, v in stated.items()},
        "corrected": {str(k): summarize(v) for k, v in corrected.items()},
    }
    bad = [k for k, v in stated.items() if not v.is_zero()]
    msg = f"stated closed form differs at order(s) {bad}" if bad else ""
    return all(v.is_zero() for v in corrected.values()), res, {"order": order}, msg


def _sample(sc, cells=None):
    n = sc.numeric
    cur = n["currents"]
    cells = int(cells or n["cells"])
    length = float(n["length"])
    if cur["kind"] == "constant":
        return num.CurrentSample.constant(cur["j0_array"], cur["j1_array"], cells=cells, length=length)
    if cur["kind"] == "zero":
        return num.CurrentSample.zero(sc.N, cells=cells, length=length)
    return num.CurrentSample.fourier(
        sc.N,
        cells=cells,
        length=length,
        seed=int(n["seed"]),
        modes=int(cur["modes"]),
        amplitude=float(cur["amplitude"]),
    )


def _kseries(sc):
    return num.KSeries.of(sc.numeric["K_k"], sc.numeric["K_f"])


def _numeric_sigma(sc):
    if sc.sigma.kind not in ("reflection", "twisted"):
        raise ScenarioError("numeric checks need sigma 'reflection' or 'twisted'")
    return sc.sigma.kind


def _check_numeric_convergence(sc):
    kind = _numeric_sigma(sc)
    base = int(sc.numeric["cells"])
    cells = tuple(max(base // 8, 16) * 2**i for i in range(4))
    lam = float(sc.numeric["lambdas"][0])
    K = _kseries(sc)
    s = _sample(sc)
    orders = {
        "monodromy": num.convergence_order(lambda t: num.monodromy(t, lam), s, cells),
        "dressed": num.convergence_order(lambda t: num.dressed_monodromy(t, K, lam, kind), s, cells),
        "charges": num.convergence_order(lambda t: num.boundary_charges_direct(t, K, kind).calT1, s, cells),
    }
    res = {k: [_float(o) for o in v] for k, v in orders.items()}
    finite = [o for v in orders.values() for o in v if not math.isnan(o)]
    ok = bool(finite) and all(1.7 <= o <= 2.3 for o in finite)
    if s.describe().get("kind") in ("constant", "zero"):
        ok = True  # the midpoint rule is exact on a constant sample
    return ok, res, {"cells": list(cells), "lambda": lam}, ""


def _check_numeric_charges(sc):
    kind = _numeric_sigma(sc)
    K = _kseries(sc)
    s = _sample(sc)
    est = num.boundary_charges_direct(s, K, kind)
    res = {"liouville": [_float(num.liouville_residual(s, float(l))) for l in sc.numeric["lambdas"]]}
    values = est.as_record()
    tol = float(sc.numeric["tolerance"])
    ok = all(np.all(np.isfinite(np.asarray(values[k]))) for k in ("calT0", "calT1"))
    worst = max((v for v in res["liouville"] if v is not None), default=float("inf"))
    ok &= worst <= tol
    msg = "" if ok else f"Liouville residual {worst:.3g} exceeds tolerance {tol:.3g} at h={s.h:.3g}"
    return ok, res, {"sample": s.describe(), "estimates": values, "tolerance": tol}, msg


def _check_numeric_crosscheck(sc):
    kind = _numeric_sigma(sc)
    rep = num.expansion_crosscheck(_sample(sc), _kseries(sc), kind, tuple(sc.numeric["lambda_grid"]))
    tol = float(sc.numeric["tolerance"])
    d = rep.discrepancy
    worst = max(d["k"], d["calT0"], d["calT1"])
    ok = worst <= tol
    msg = "" if ok else f"fit and quadrature differ by {worst:.3g} > {tol:.3g} at h={rep.direct.h:.3g}"
    return ok, rep.as_record(), {"tolerance": tol}, msg


def _check_linear_limit(sc):
    m = sc.model
    rep = linear_limit_check(m.L, sc.k, sc.sigma, m.table, sc.r, sc.s)
    res = {**rep.summary(), "lhs_minus_rhs": summarize(rep.residual)}
    return rep.passed, res, {"sigma": sc.sigma.kind}, ""


RUNNERS = {
    "cybe": _check_cybe,
    "constraints": _check_constraints,
    "closure": _check_closure,
    "traces": _check_traces,
    "lax": _check_lax,
    "pcm-closure": _check_pcm_closure,
    "charges": _check_charges,
    "numeric-convergence": _check_numeric_convergence,
    "numeric-charges": _check_numeric_charges,
    "numeric-crosscheck": _check_numeric_crosscheck,
    "linear-limit": _check_linear_limit,
}


def plan(requested):
    """Requested checks plus their prerequisites, in execution order."""
    unknown = [c for c in requested if c not in DEPENDENCIES]
    if unknown:
        raise ScenarioError(f"unknown check(s): {', '.join(unknown)}; known: {', '.join(CHECKS)}")
    want = set()

    def add(c):
        if c not in want:
            want.add(c)
            for d in DEPENDENCIES[c]:
                add(d)

    for c in requested:
        add(c)
    return [c for c in CHECKS if c in want]


def run(scenario, checks=None):
    """Run checks on a scenario; a failed or skipped prerequisite skips its dependents."""
    requested = list(checks or scenario.checks or DEFAULT_CHECKS)
    report = Report(scenario.name)
    status = {}
    for name in plan(requested):
        digest = scenario.digest(name)
        blocked = [d for d in DEPENDENCIES[name] if status.get(d) != PASS]
        if blocked:
            rec = CheckRecord(name, SKIPPED, digest, message=f"prerequisite {blocked[0]} did not pass")
        else:
            t0 = time.perf_counter()
            try:
                ok, res, params, msg = RUNNERS[name](scenario)
                rec = CheckRecord(name, PASS if ok else FAIL, digest, res, params, msg)
            except (BoundaryLaxError, ValueError, ZeroDivisionError, ArithmeticError) as e:
                rec = CheckRecord(name, ERROR, digest, message=f"{type(e).__name__}: {e}")
            except Exception as e:  # pragma: no cover - unexpected bug, keep the report going
                rec = CheckRecord(
                    name, ERROR, digest, message=f"{type(e).__name__}: {e}", params={"trace": traceback.format_exc()}
                )
            rec.seconds = time.perf_counter() - t0
        status[name] = rec.status
        report.records.append(rec)
    return report
