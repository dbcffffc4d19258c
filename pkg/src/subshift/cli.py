"""Command line front end: ``subshift check|simulate|construct --config PATH``.

Exit codes: 0 satisfied / pass / all targets hit, 2 violated / fail / refused,
3 inconclusive / vacuous / not applicable, 1 invalid config.  The exit code is
computed from the ``status`` fields of the emitted report alone.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from subshift import serialize as ser
from subshift.constructors import herrero_construction, make_family, rolewicz_example
from subshift.core.operators import Kind, OperatorSpec
from subshift.core.schedule import PowerSchedule
from subshift.core.verdict import Status, Verdict
from subshift.criteria import (
    direct_sum_condition,
    direct_sum_unilateral,
    lemma35_probe,
    thm19_finite_check,
    thm84_condition,
    unilateral_limsup,
    backward_condition,
    eq65_forward,
)
from subshift.errors import ConditionRefused, ConfigError, ConstructionError, KindError, SubshiftError
from subshift.invariance import admissible_powers
from subshift.orbits import (
    TargetResult,
    DensityReport,
    TruncationWindow,
    build_criterion_vector,
    default_grid,
    default_witness,
    density_experiment,
)

log = logging.getLogger("subshift")

EXIT_OK, EXIT_INVALID, EXIT_FAIL, EXIT_UNDECIDED = 0, 1, 2, 3

_EXIT_BY_STATUS = {
    Status.SATISFIED.value: EXIT_OK,
    "pass": EXIT_OK,
    "all_hit": EXIT_OK,
    "constructed": EXIT_OK,
    Status.VIOLATED.value: EXIT_FAIL,
    "fail": EXIT_FAIL,
    "refused": EXIT_FAIL,
    "missed": EXIT_FAIL,
    "construction_failed": EXIT_FAIL,
    Status.INCONCLUSIVE.value: EXIT_UNDECIDED,
    "vacuous": EXIT_UNDECIDED,
    "not_applicable": EXIT_UNDECIDED,
}
# when several reports are bundled, the worst one decides
_SEVERITY = {EXIT_OK: 0, EXIT_UNDECIDED: 1, EXIT_FAIL: 2}


def exit_code(report: dict) -> int:
    if "reports" in report:
        codes = [exit_code(r) for r in report["reports"]] or [EXIT_OK]
        return max(codes, key=_SEVERITY.__getitem__)
    return _EXIT_BY_STATUS[report["status"]]


# ---------------------------------------------------------------- check


def _verdict_report(name: str, v: Verdict, **extra) -> dict:
    return {"schema_version": ser.SCHEMA_VERSION, "check": name, "status": v.status.value, "verdict": ser.verdict_to_json(v), **extra}


def run_check(cfg: dict) -> tuple[dict, Verdict | None]:
    """Evaluate one validated check config; returns the report and its Verdict, if any."""
    name = cfg["check"]
    th = ser.thresholds_from_json(cfg.get("thresholds"))
    op = ser.operator_from_json(cfg["operator"])
    F = ser.index_set_from_json(cfg["subspace"], op)
    sched = ser.schedule_from_json(cfg["schedule"]) if "schedule" in cfg else None

    def witness() -> int:
        return cfg["witness"] if "witness" in cfg else default_witness(F)

    if name == "eq65":
        v = eq65_forward(op, F, witness(), sched, th)
    elif name == "bac":
        v = backward_condition(op, F, witness(), sched, th)
    elif name in ("thm84", "prop85"):
        wanted = Kind.BILATERAL_FORWARD if name == "thm84" else Kind.BILATERAL_BACKWARD
        if op.kind is not wanted:
            raise KindError(f"{name} needs a {wanted.value} operator")
        app, v = thm84_condition(op, F, sched, th, cfg.get("probe_window", 1000), cfg.get("witness"))
        applicability = {"applicable": app.applicable, "b": app.b, "witness": app.witness, "note": app.note}
        if v is None:
            return {"schema_version": ser.SCHEMA_VERSION, "check": name, "status": "not_applicable", "applicability": applicability}, None
        return _verdict_report(name, v, applicability=applicability), v
    elif name == "thm28":
        ds = ser.direct_sum_from_json(cfg)
        v = direct_sum_condition(ds, witness(), cfg.get("right_witness", default_witness(ds.right_space)), sched, th)
    elif name == "corollary":
        ds = ser.direct_sum_from_json(cfg)
        v = direct_sum_unilateral(ds, witness(), cfg.get("right_witness", default_witness(ds.right_space)), cfg["N"], th)
    elif name == "unilateral":
        if op.kind is Kind.UNILATERAL_FORWARD:
            msg = "unilateral forward weighted shifts can not be subspace-hypercyclic for any subspace"
            return {"schema_version": ser.SCHEMA_VERSION, "check": name, "status": "refused", "message": msg}, None
        v = unilateral_limsup(op, F, witness(), cfg["N"], th)
    elif name == "thm19":
        rep = thm19_finite_check(op, F, cfg["delta"], cfg["q"], cfg["n"])
        status = "vacuous" if rep.vacuous else ("pass" if rep.passed else "fail")
        rows = [vars(r) for r in rep.rows]
        return {"schema_version": ser.SCHEMA_VERSION, "check": name, "status": status, "rows": rows}, None
    elif name == "lemma35":
        rep = lemma35_probe(op, F, sched, witness(), cfg["others"], cfg["tol"], th)
        status = "vacuous" if not rep.triggered else ("pass" if rep.passed else "fail")
        report = {
            "schema_version": ser.SCHEMA_VERSION,
            "check": name,
            "status": status,
            "note": rep.note,
            "witness": rep.witness,
            "log_tol": rep.log_tol,
            "witness_window_max": rep.witness_window_max,
            "rows": [vars(r) for r in rep.rows],
        }
        return report, None
    else:  # pragma: no cover - schema rejects other names
        raise ConfigError(f"unknown check {name!r}")
    return _verdict_report(name, v), v


def cmd_check(cfg: dict, trace_csv: Path | None = None) -> dict:
    if "bundle" in cfg:
        ser.validate(cfg, ser.BUNDLE_SCHEMA)
        results = [run_check(c) for c in cfg["checks"]]
        verdicts = [v for _, v in results if v is not None]
        if trace_csv and verdicts:
            trace_csv.write_text("".join(ser.traces_csv(v) for v in verdicts))
        return {"schema_version": ser.SCHEMA_VERSION, "bundle": cfg["bundle"], "reports": [r for r, _ in results]}
    ser.validate(cfg, ser.CHECK_SCHEMA)
    report, v = run_check(cfg)
    if trace_csv and v is not None:
        trace_csv.write_text(ser.traces_csv(v))
    return report


# ---------------------------------------------------------------- simulate


def _window(cfg: dict, op: OperatorSpec) -> TruncationWindow:
    doc = cfg.get("window", {"size": 64})
    if "size" in doc:
        return TruncationWindow.of_size(doc["size"], op.kind)
    return TruncationWindow(doc["lo"], doc["hi"])


def _default_schedule(op, F, grid, win: TruncationWindow, n_iter: int) -> PowerSchedule:
    """Admissible powers whose right-inverse lifts of every grid target stay in the window."""
    if op.kind.forward:
        room = min((min(y.support) - win.lo for y in grid if y), default=win.dimension)
    else:
        room = min((win.hi - max(y.support) for y in grid if y), default=win.dimension)
    powers, _ = admissible_powers(op, F, max(1, min(room, n_iter)))
    if not powers:
        raise ConfigError("no admissible power fits inside the window; give a schedule or a larger window")
    return PowerSchedule.explicit(powers)


def cmd_simulate(cfg: dict, trace_csv: Path | None = None) -> dict:
    ser.validate(cfg, ser.SIMULATE_SCHEMA)
    op = ser.operator_from_json(cfg["operator"])
    F = ser.index_set_from_json(cfg["subspace"], op)
    th = ser.thresholds_from_json(cfg.get("thresholds"))
    eps = cfg.get("eps", 1e-2)
    n_iter = cfg.get("n_iter", 2000)
    win = _window(cfg, op)
    if "grid" in cfg:
        grid = [ser.vector_from_json(g) for g in cfg["grid"]]
    else:
        grid = default_grid(F, win, cfg.get("grid_members", 2))
    base = {"schema_version": ser.SCHEMA_VERSION, "report": "density"}

    def missed(message: str, verdict: Verdict | None = None) -> dict:
        targets = tuple(TargetResult(i, y, False, None, math.inf) for i, y in enumerate(grid))
        report = ser.density_report_to_json(DensityReport(targets, eps, n_iter, 0, 0.0))
        out = {**base, **report, "status": "refused", "message": message}
        if verdict is not None:
            out["verdict"] = ser.verdict_to_json(verdict)
        return out

    if op.kind is Kind.UNILATERAL_FORWARD:
        return missed("unilateral forward weighted shifts can not be subspace-hypercyclic for any subspace")
    extra = {}
    if "x" in cfg:
        x = ser.vector_from_json(cfg["x"])
    else:
        sched = ser.schedule_from_json(cfg["schedule"]) if "schedule" in cfg else _default_schedule(op, F, grid, win, n_iter)
        try:
            cv = build_criterion_vector(op, F, grid, eps, sched, cfg.get("witness"), th)
        except ConditionRefused as exc:
            return missed(str(exc), exc.verdict)
        x = cv.x
        extra = {"placements": list(cv.placements), "tail_bound": cv.tail_bound, "verdict": ser.verdict_to_json(cv.verdict)}
    rep = density_experiment(op, F, x, grid, eps, n_iter, win)
    if trace_csv:
        trace_csv.write_text(ser.density_report_csv(rep))
    status = "all_hit" if rep.hits == len(rep.targets) else "missed"
    return {**base, **ser.density_report_to_json(rep), "status": status, "x": ser.vector_to_json(x), **extra}


# ---------------------------------------------------------------- construct


def _check_entry(name: str, op: OperatorSpec, F, th, **fields) -> dict:
    entry = {
        "schema_version": ser.SCHEMA_VERSION,
        "check": name,
        "operator": ser.operator_to_json(op),
        "subspace": ser.index_set_to_json(F),
        "thresholds": ser.thresholds_to_json(th),
    }
    entry.update(fields)
    return entry


def cmd_construct(cfg: dict) -> dict:
    ser.validate(cfg, ser.CONSTRUCT_SCHEMA)
    family, params = cfg["family"], dict(cfg.get("params", {}))
    th = ser.thresholds_from_json(cfg.get("thresholds"))
    base = {"schema_version": ser.SCHEMA_VERSION, "bundle": family, "parameters": params}

    if family == "herrero":
        try:
            b = herrero_construction(params["low"], params["high"], params["lengths"], params["p"], th)
            status = "constructed"
        except ConstructionError as exc:
            b = exc.diagnostics.get("bundle")
            if b is None:
                return {**base, "status": "construction_failed", "message": str(exc)}
            status = "construction_failed"
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"herrero needs numeric low, high, lengths, p: {exc}") from exc
        checks = [
            _check_entry("eq65", b.op, b.M1, th, witness=b.witness_fwd, schedule=ser.schedule_to_json(b.sched_fwd)),
            _check_entry("bac", b.adjoint_op, b.M2, th, witness=b.witness_bwd, schedule=ser.schedule_to_json(b.sched_bwd)),
        ]
        return {
            **base,
            "operator": ser.operator_to_json(b.op),
            "subspaces": {"M1": ser.index_set_to_json(b.M1), "M2": ser.index_set_to_json(b.M2)},
            "checks": checks,
            "verdicts": [ser.verdict_to_json(b.verdict_fwd), ser.verdict_to_json(b.verdict_bwd)],
            "self_verified": status == "constructed",
            "status": status,
        }

    if family == "example_2B":
        ex = rolewicz_example()
        N = params.get("N", 20)
        v = unilateral_limsup(ex.op, ex.M, 1, N, th)
        ok = v.status is Status.SATISFIED
        return {
            **base,
            "operator": ser.operator_to_json(ex.op),
            "subspaces": {"M": ser.index_set_to_json(ex.M)},
            "checks": [_check_entry("unilateral", ex.op, ex.M, th, witness=1, N=N)],
            "verdicts": [ser.verdict_to_json(v)],
            "self_verified": ok,
            "status": "constructed" if ok else "construction_failed",
        }

    kind = Kind(cfg.get("kind", Kind.BILATERAL_FORWARD.value))
    try:
        w = make_family(family, params, kind.domain)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"missing or malformed parameters for {family}: {exc}") from exc
    op = OperatorSpec(kind, w)
    return {**base, "operator": ser.operator_to_json(op), "checks": [], "verdicts": [], "self_verified": True, "status": "constructed"}


# ---------------------------------------------------------------- entry point


def _summary(report: dict) -> str:
    if "reports" in report:
        return "\n".join(_summary(r) for r in report["reports"])
    parts = [report.get("check") or report.get("bundle") or report.get("report", ""), report["status"]]
    if "verdict" in report:
        v = report["verdict"]
        parts.append(f"horizon={v['horizon']} margin={v['margin']:.6g}")
    if "hit_rate" in report:
        parts.append(f"hit_rate={report['hit_rate']:.3f} leaked={report['leaked_norm_max']:.3g}")
    if report.get("message"):
        parts.append(report["message"])
    return "  ".join(str(p) for p in parts if p != "")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="subshift", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("check", "evaluate a weight-product condition (or every check in a bundle)"),
        ("simulate", "build a criterion vector and run its truncated orbit"),
        ("construct", "build a named family or a self-verified example bundle"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, type=Path, help="JSON config file ('-' for stdin)")
        p.add_argument("--json", action="store_true", help="print the full JSON report")
        if name != "construct":
            p.add_argument("--trace-csv", type=Path, help="write traces (check) or per-target rows (simulate)")
    return parser


def _load(path: Path) -> dict:
    text = sys.stdin.read() if str(path) == "-" else path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path}: {exc}") from exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = _load(args.config)
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        if args.command == "check":
            report = cmd_check(cfg, args.trace_csv)
        elif args.command == "simulate":
            report = cmd_simulate(cfg, args.trace_csv)
        else:
            report = cmd_construct(cfg)
    except (OSError, SubshiftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(ser.dumps(report) if args.json else _summary(report))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
