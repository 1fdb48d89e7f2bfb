"""Command line front end: ``coring-descent <command> <workspace> [names] [options]``.

Exit status: 0 success, 1 mathematical failure, 2 cap exceeded, 3 bad input
(unreadable file, schema violation, unknown command or object).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable

import numpy as np

from . import exactla as la
from .algmod import free_module, units
from .comodule import d0, end_C_algebra
from .coring import grouplikes
from .descent import (
    classify_torsors,
    d1,
    is_galois_comodule,
    twist_classes,
    verify_descent_twist,
    verify_torsors,
    z1,
)
from .errors import AxiomError, CoringError, MathematicalFailure, ResourceFailure
from .partial import (
    canonical_comodule,
    check_partial_action,
    galois_map,
    grouplike_classes,
    invariants,
    partial_action_coring,
    partial_cohomology,
    units_cohomology,
)
from .workspace import Workspace, WorkspaceError, load

EXIT_OK, EXIT_MATH, EXIT_RESOURCE, EXIT_INPUT = 0, 1, 2, 3


class UnknownCommand(WorkspaceError):
    pass


def jsonable(x: Any) -> Any:
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def pointed(pcs) -> dict:
    return {
        "size": len(pcs),
        "distinguished": pcs.distinguished,
        "class_sizes": pcs.sizes,
        "representatives": pcs.representatives,
    }


def group_report(g) -> dict:
    return {"order": g.order, "identity": g.identity, "elements": list(g.elements), "table": g.table}


# --- commands -----------------------------------------------------------------
# Each takes (workspace, names, opts) and returns (object label, result, ok).


def cmd_check(ws: Workspace, names, opts):
    found = ws.check_all(names or None)
    objects = [
        {"name": n, "kind": ws.kinds[n], "valid": not v, "violations": v} for n, v in sorted(found.items())
    ]
    ok = all(o["valid"] for o in objects)
    return ",".join(names), {"objects": objects, "valid": ok}, ok


def one(ws: Workspace, names, kind: str) -> str:
    if len(names) > 1:
        raise WorkspaceError(f"expected at most one object name, got {names}")
    return ws.pick(kind, names[0] if names else None)


def cmd_units(ws, names, opts):
    n = one(ws, names, "algebras")
    return n, group_report(units(ws.get(n), opts.cap)), True


def cmd_grouplikes(ws, names, opts):
    n = one(ws, names, "corings")
    c = ws.get(n)
    gs = grouplikes(c, opts.cap, opts.jobs)
    classes = grouplike_classes(c, opts.cap, opts.jobs) if gs else None
    result = {"count": len(gs), "grouplikes": gs, "conjugation_classes": pointed(classes) if classes else None}
    return n, result, True


def cmd_z1(ws, names, opts):
    n = one(ws, names, "comodules")
    zs = z1(ws.get(n), opts.cap, opts.jobs)
    return n, {"size": len(zs), "distinguished": zs.distinguished, "cocycles": zs.cocycles}, True


def cmd_d0(ws, names, opts):
    n = one(ws, names, "comodules")
    return n, group_report(d0(ws.get(n), opts.cap)), True


def cmd_d1(ws, names, opts):
    n = one(ws, names, "comodules")
    return n, pointed(d1(ws.get(n), opts.cap, opts.jobs)), True


def cmd_torsors(ws, names, opts):
    n = one(ws, names, "comodules")
    m = ws.get(n)
    classes = classify_torsors(m, opts.cap, opts.jobs)
    rep = verify_torsors(m, opts.cap, opts.jobs, np.random.default_rng(0))
    result = {"torsor_classes": pointed(classes), "bijection": rep, "agrees_with_d1": rep["d1"] == rep["torsors"]}
    return n, result, True


def cmd_galois(ws, names, opts):
    n = one(ws, names, "comodules")
    g = is_galois_comodule(ws.get(n))
    result = {
        "galois": g.is_galois,
        "finitely_generated_projective": g.fgp,
        "evaluation_bijective": g.bijective,
        "evaluation_dims": [g.source_dim, g.target_dim],
        "evaluation": g.evaluation,
        "B_dim": g.algebra.dim,
        "B_mul": g.algebra.mul,
        "B_one": g.algebra.one,
    }
    return n, result, True


def cmd_twist(ws, names, opts):
    n = one(ws, names, "comodules")
    b, sigma_b = end_C_algebra(ws.get(n))
    tw = twist_classes(sigma_b, b, free_module(b, opts.rank), opts.dim_cap, opts.cap)
    pcs = tw.classes
    result = {
        "rank": opts.rank,
        "size": len(pcs),
        "distinguished": pcs.distinguished,
        "class_sizes": pcs.sizes,
        "representatives": [{"dim": q.dim, "action": q.rmats} for q in pcs.representatives],
        "candidates_checked": tw.candidates_checked,
    }
    return n, result, True


def cmd_verify_theorem(ws, names, opts):
    n = one(ws, names, "comodules")
    rep = verify_descent_twist(ws.get(n), opts.rank, cap=opts.cap, dim_cap=opts.dim_cap, jobs=opts.jobs)
    return n, dict(rep, rank=opts.rank, bijection=True), True


def cmd_partial_check(ws, names, opts):
    n = one(ws, names, "partial_actions")
    v = check_partial_action(ws.get(n))
    return n, {"valid": not v, "violations": v}, not v


def cmd_partial_invariants(ws, names, opts):
    n = one(ws, names, "partial_actions")
    ag, incl = invariants(ws.get(n))
    return n, {"dim": ag.dim, "inclusion": incl, "mul": ag.mul, "one": ag.one}, True


def cmd_partial_galois(ws, names, opts):
    n = one(ws, names, "partial_actions")
    pa = ws.get(n)
    gm = galois_map(pa)
    comod = is_galois_comodule(canonical_comodule(pa))
    result = {
        "galois_map": gm.matrix,
        "dims": [gm.source_dim, gm.target_dim],
        "bijective": gm.bijective,
        "galois_comodule": comod.is_galois,
        "verdicts_agree": gm.bijective == comod.is_galois,
    }
    return n, result, gm.bijective == comod.is_galois


def cmd_partial_coring(ws, names, opts):
    n = one(ws, names, "partial_actions")
    pa = ws.get(n)
    c = partial_action_coring(pa)
    result = {
        "dim": c.dim,
        "component_offsets": pa.offsets,
        "left_action": c.bimodule.lmats,
        "right_action": c.bimodule.rmats,
        "coproduct": c.coproduct,
        "counit": c.counit,
        "canonical_grouplike": pa.canonical_grouplike,
    }
    return n, result, True


def _partial_h(i: int):
    def run(ws, names, opts):
        n = one(ws, names, "partial_actions")
        pa = ws.get(n)
        ag, _ = invariants(pa)
        h = partial_cohomology(pa, free_module(ag, opts.rank), i, opts.cap, opts.jobs)
        body = group_report(h) if i == 0 else pointed(h)
        return n, dict(body, rank=opts.rank), True

    return run


def cmd_units_cohomology(ws, names, opts):
    n = one(ws, names, "partial_actions")
    u = units_cohomology(ws.get(n), opts.cap, opts.jobs)
    result = {
        "H0": {"order": len(u.h0), "elements": u.h0},
        "H1": pointed(u.h1),
        "grouplikes": u.grouplike_count,
        "D1_classes": u.h1_descent_classes,
        "H1_to_D1": u.h1_matching,
    }
    return n, result, True


COMMANDS: dict[str, Callable] = {
    "check": cmd_check,
    "units": cmd_units,
    "grouplikes": cmd_grouplikes,
    "z1": cmd_z1,
    "d0": cmd_d0,
    "d1": cmd_d1,
    "torsors": cmd_torsors,
    "galois": cmd_galois,
    "twist": cmd_twist,
    "verify-theorem": cmd_verify_theorem,
    "partial-check": cmd_partial_check,
    "partial-invariants": cmd_partial_invariants,
    "partial-galois": cmd_partial_galois,
    "partial-coring": cmd_partial_coring,
    "h0": _partial_h(0),
    "h1": _partial_h(1),
    "units-cohomology": cmd_units_cohomology,
}


# --- reports ------------------------------------------------------------------


def run(command: str, workspace: str, names: list[str], opts) -> tuple[dict, int]:
    """Execute one command and return ``(report, exit status)``."""
    report: dict[str, Any] = {"command": command, "workspace": str(workspace), "objects": list(names)}
    try:
        if command not in COMMANDS:
            raise UnknownCommand(f"unknown command {command!r}; choose from {sorted(COMMANDS)}")
        ws = load(workspace, validate=command != "check")
        report["workspace"] = ws.source
        cap = opts.cap if opts.cap is not None else (ws.cap if ws.cap is not None else la.default_cap())
        opts.cap = cap
        report["caps"] = {"enumeration": cap, "dim_cap": opts.dim_cap, "rank": opts.rank}
        label, result, ok = COMMANDS[command](ws, names, opts)
        report["objects"] = [label] if label else []
        report["result"] = result
        report["status"] = "ok" if ok else "failure"
        status = EXIT_OK if ok else EXIT_MATH
    except WorkspaceError as exc:
        report["error"], status = _err(exc), EXIT_INPUT
    except ResourceFailure as exc:
        report["error"], status = _err(exc), EXIT_RESOURCE
    except MathematicalFailure as exc:
        report["error"], status = _err(exc), EXIT_MATH
        if isinstance(exc, AxiomError):
            report["error"]["object"] = exc.name
            report["error"]["violations"] = exc.violations
    except CoringError as exc:
        report["error"], status = _err(exc), EXIT_INPUT
    if "error" in report:
        report["status"] = "error"
    return jsonable(report), status


def _err(exc: Exception) -> dict:
    return {"type": type(exc).__name__, "message": str(exc)}


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _is_matrix(x) -> bool:
    return isinstance(x, list) and bool(x) and all(isinstance(r, list) and all(isinstance(v, int) for v in r) for r in x)


def _text(x, indent: int, out: list[str]) -> None:
    pad = " " * indent
    if isinstance(x, dict):
        width = max((len(k) for k in x), default=0)
        for k in sorted(x):
            v = x[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                _text(v, indent + 2, out)
            else:
                out.append(f"{pad}{k.ljust(width)}  {_scalar(v)}")
    elif _is_matrix(x):
        w = max(len(str(v)) for r in x for v in r) if any(x) else 1
        for r in x:
            out.append(pad + "[" + " ".join(str(v).rjust(w) for v in r) + "]")
    else:
        for i, v in enumerate(x):
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}- {i}:")
                _text(v, indent + 4, out)
            else:
                out.append(f"{pad}- {_scalar(v)}")


def _flat(v) -> bool:
    return isinstance(v, list) and all(isinstance(x, (int, bool)) or x is None for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + " ".join(str(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "-" if v is None or v == {} else str(v)


def render_text(report: dict) -> str:
    out: list[str] = []
    _text(report, 0, out)
    return "\n".join(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    class Parser(argparse.ArgumentParser):
        def error(self, message):  # usage errors must not look like a cap failure
            self.print_usage(sys.stderr)
            self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")

    ap = Parser(prog="coring-descent", description="Descent cohomology for corings over finite prime fields.")
    ap.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    ap.add_argument("workspace", help="workspace JSON file, or the name of a bundled example")
    ap.add_argument("names", nargs="*", help="object names (default: the unique object of the needed kind)")
    ap.add_argument("--cap", type=int, default=None, help="enumeration cap (default: CORING_CAP or 2^20)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--jobs", type=int, default=1, help="worker threads for cocycle and grouplike sweeps")
    ap.add_argument("--rank", type=int, default=1, help="rank of the free module N for twist/theorem/h0/h1")
    ap.add_argument("--dim-cap", type=int, default=None, help="largest B-module dimension tried by twist")
    return ap


def main(argv: list[str] | None = None) -> int:
    opts = build_parser().parse_args(argv)
    report, status = run(opts.command, opts.workspace, opts.names, opts)
    text = render_json(report) if opts.format == "json" else render_text(report)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
