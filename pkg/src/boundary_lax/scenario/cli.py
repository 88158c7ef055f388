"""Command line entry point: ``boundary-lax {check,charges,expand,enumerate-k}``.

Exit codes: 0 every check passed, 1 some check failed, skipped or errored,
2 the scenario or the command line is invalid.
"""

from __future__ import annotations

import argparse
import copy
import json
import sys
from itertools import product

from ..errors import BoundaryLaxError, ScenarioError, UnsupportedGrowthError
from ..exact import laurent_at_infinity
from ..pcm import restr_check
from ..tensor import MatrixRF
from . import model
from .runner import CHECKS, DEFAULT_CHECKS, PASS, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--scenario", default="pcm", help="scenario file, or the name of a bundled one (default: pcm)")
    p.add_argument("--report", metavar="PATH", help="also write the report to PATH")
    p.add_argument("--format", choices=("text", "machine"), default="text")


def build_parser():
    ap = _Parser(prog="boundary-lax", description="Exact and numeric checks of boundary Lax algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("check", help="run exact and numeric checks on a scenario")
    _common(c)
    c.add_argument("--check", nargs="+", metavar="NAME", help=f"checks to run; known: {', '.join(CHECKS)}")
    c.add_argument("--order", type=int, help="highest charge density order")
    c.add_argument("--lattice", type=int, help="number of lattice cells for numeric checks")
    c.add_argument("--seed", type=int, help="seed of the sampled currents")
    ch = sub.add_parser("charges", help="charge densities and numeric boundary charges")
    _common(ch)
    ch.add_argument("--order", type=int, default=3)
    ch.add_argument("--lattice", type=int)
    ch.add_argument("--seed", type=int)
    ex = sub.add_parser("expand", help="Laurent expansion of r, s and k at lambda -> infinity")
    _common(ex)
    ex.add_argument("--order", type=int, default=3)
    en = sub.add_parser("enumerate-k", help="list diagonal +-1 boundary matrices and their checks")
    _common(en)
    en.add_argument("--check", nargs="+", metavar="NAME", default=["closure", "pcm-closure"])
    return ap


def _override(sc, **kw):
    raw = copy.deepcopy(sc.raw)
    num = raw.setdefault("numeric", {}) or {}
    raw["numeric"] = num
    if kw.get("lattice") is not None:
        if kw["lattice"] < 2:
            raise ScenarioError("--lattice must be at least 2")
        num["cells"] = kw["lattice"]
    if kw.get("seed") is not None:
        num["seed"] = kw["seed"]
    if kw.get("order") is not None:
        if kw["order"] < 1:
            raise ScenarioError("--order must be positive")
        raw["charge_order"] = kw["order"]
    if "k" in kw:
        raw["k"] = kw["k"]
        num.pop("K", None)
    return model.from_dict(raw, name=kw.get("name", sc.name))


def _emit(doc_text, args):
    print(doc_text)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(doc_text + "\n")


def _cmd_check(args, sc):
    sc = _override(sc, lattice=args.lattice, seed=args.seed, order=args.order)
    rep = run(sc, args.check)
    _emit(rep.machine() if args.format == "machine" else rep.text(), args)
    return rep.exit_code


def _cmd_charges(args, sc):
    sc = _override(sc, lattice=args.lattice, seed=args.seed, order=args.order)
    rep = run(sc, ["charges", "numeric-charges", "numeric-crosscheck"])
    if args.format == "machine":
        _emit(rep.machine(), args)
    else:
        lines = [rep.text()]
        rec = rep.record("numeric-charges")
        est = rec.params.get("estimates")
        if est:
            for key in ("calT0", "calT1"):
                lines.append(f"  {key} = {json.dumps(est[key])}")
        _emit("\n".join(lines), args)
    return rep.exit_code


def _expand(f, order):
    s = laurent_at_infinity(f, "lambda", order, max_growth=order)
    return {str(p): str(s[p]) for p in s.powers() if s[p]}


def _cmd_expand(args, sc):
    doc = {"scenario": sc.name, "order": args.order, "expansions": {}}
    status = EXIT_OK
    for label, t in (("r", sc.r), ("s", sc.s), ("k", sc.k)):
        seen = {}
        for (i, j), v in sorted(t.entries.items()):
            key = str(v)
            if key not in seen:
                try:
                    seen[key] = {"value": key, "positions": [], "series": _expand(v, args.order)}
                except UnsupportedGrowthError as e:
                    seen[key] = {"value": key, "positions": [], "error": str(e)}
                    status = EXIT_FAIL
            seen[key]["positions"].append([i, j])
        doc["expansions"][label] = sorted(seen.values(), key=lambda d: d["positions"][0])
    if args.format == "machine":
        _emit(json.dumps(doc, sort_keys=True, indent=2), args)
    else:
        lines = [f"scenario {sc.name}: expansion in 1/lambda up to order {args.order}"]
        for label, items in doc["expansions"].items():
            for it in items:
                where = ",".join(f"({i},{j})" for i, j in it["positions"][:4])
                more = "..." if len(it["positions"]) > 4 else ""
                body = it.get("error") or "  +  ".join(f"[{c}] lambda^{p}" for p, c in it["series"].items()) or "0"
                lines.append(f"  {label} {where}{more}: {body}")
        _emit("\n".join(lines), args)
    return status


def _cmd_enumerate(args, sc):
    if sc.sigma.kind not in ("reflection", "twisted"):
        raise ScenarioError("enumerate-k needs sigma 'reflection' or 'twisted'")
    rows = []
    code = EXIT_OK
    for signs in product((1, -1), repeat=sc.N):
        kmat = [[str(signs[i]) if i == j else "0" for j in range(sc.N)] for i in range(sc.N)]
        k = MatrixRF.diag(list(signs))
        restr = restr_check(k, sc.sigma, sc.algebra).is_zero()
        sub = _override(sc, k=kmat, name=f"{sc.name}:k=diag{signs}")
        rep = run(sub, args.check)
        statuses = {r.name: r.status for r in rep.records}
        # restr must agree with closure of the boundary bracket; other checks are reported
        consistent = (statuses.get("closure") == PASS) == restr
        if not consistent:
            code = EXIT_FAIL
        rows.append({"k": list(signs), "restr": restr, "checks": statuses, "consistent": consistent})
    if args.format == "machine":
        _emit(json.dumps({"scenario": sc.name, "sigma": sc.sigma.kind, "candidates": rows}, sort_keys=True, indent=2), args)
    else:
        lines = [f"scenario {sc.name}: diagonal k, sigma {sc.sigma.kind}"]
        for r in rows:
            checks = " ".join(f"{n}={s}" for n, s in r["checks"].items())
            flag = "" if r["consistent"] else "  INCONSISTENT"
            lines.append(f"  diag{tuple(r['k'])}: restr={'yes' if r['restr'] else 'no'}  {checks}{flag}")
        _emit("\n".join(lines), args)
    return code


COMMANDS = {"check": _cmd_check, "charges": _cmd_charges, "expand": _cmd_expand, "enumerate-k": _cmd_enumerate}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        sc = model.load(args.scenario)
        return COMMANDS[args.command](args, sc)
    except ScenarioError as e:
        print(f"boundary-lax: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BoundaryLaxError as e:
        print(f"boundary-lax: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

__all__ = ["DEFAULT_CHECKS", "build_parser", "main"]
