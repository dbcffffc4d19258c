"""JSON and CSV forms of rules, operators, index sets, verdicts and reports.

Every top-level document carries ``schema_version``; a mismatch is an error.
Floats go through :mod:`json`, which writes the shortest repr that reads back
to the same double, so traces and verdicts round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math

import jsonschema

from subshift.core.index_set import IndexSet
from subshift.core.operators import DirectSumSpec, Kind, OperatorSpec
from subshift.core.schedule import PowerSchedule
from subshift.core.vector import SparseVector
from subshift.core.verdict import CriterionThresholds, Status, Verdict
from subshift.core.weights import BlockInterleaved, Constant, Periodic, Reindexed, Rule, Step, Table
from subshift.errors import ConfigError

SCHEMA_VERSION = 1

_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_INT_LIST = {"type": "array", "items": {"type": "integer"}}

DEFS = {
    "rule": {
        "type": "object",
        "required": ["type"],
        "oneOf": [
            {
                "properties": {"type": {"const": "constant"}, "value": _POSITIVE},
                "required": ["value"],
                "additionalProperties": False,
            },
            {
                "properties": {"type": {"const": "step"}, "pos": _POSITIVE, "neg": _POSITIVE},
                "required": ["pos", "neg"],
                "additionalProperties": False,
            },
            {
                "properties": {"type": {"const": "periodic"}, "values": {"type": "array", "items": _POSITIVE, "minItems": 1}},
                "required": ["values"],
                "additionalProperties": False,
            },
            {
                "properties": {
                    "type": {"const": "block_interleaved"},
                    "low": _POSITIVE,
                    "high": _POSITIVE,
                    "lengths": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
                },
                "required": ["low", "high", "lengths"],
                "additionalProperties": False,
            },
            {
                "properties": {
                    "type": {"const": "table"},
                    "entries": {
                        "type": "array",
                        "items": {"type": "array", "prefixItems": [{"type": "integer"}, _POSITIVE], "minItems": 2, "maxItems": 2},
                    },
                    "default": {"$ref": "#/$defs/rule"},
                },
                "required": ["entries", "default"],
                "additionalProperties": False,
            },
            {
                "properties": {
                    "type": {"const": "reindexed"},
                    "base": {"$ref": "#/$defs/rule"},
                    "sign": {"enum": [1, -1]},
                    "offset": {"type": "integer"},
                },
                "required": ["base", "sign", "offset"],
                "additionalProperties": False,
            },
        ],
    },
    "operator": {
        "type": "object",
        "properties": {"kind": {"enum": [k.value for k in Kind]}, "weights": {"$ref": "#/$defs/rule"}},
        "required": ["kind", "weights"],
        "additionalProperties": False,
    },
    "subspace": {
        "type": "object",
        "properties": {
            "modulus": {"type": "integer", "minimum": 1},
            "residues": _INT_LIST,
            "includes": _INT_LIST,
            "excludes": _INT_LIST,
        },
        "required": ["modulus", "residues"],
        "additionalProperties": False,
    },
    "schedule": {
        "type": "object",
        "oneOf": [
            {
                "properties": {"stride": {"type": "integer", "minimum": 1}, "count": {"type": "integer", "minimum": 1}},
                "required": ["stride", "count"],
                "additionalProperties": False,
            },
            {
                "properties": {"powers": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1}},
                "required": ["powers"],
                "additionalProperties": False,
            },
        ],
    },
    "thresholds": {
        "type": "object",
        "properties": {
            "satisfy_log": {"type": "number"},
            "violate_log": {"type": "number"},
            "window": {"type": "integer", "minimum": 1},
        },
        "additionalProperties": False,
    },
    "vector": {
        "type": "array",
        "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "number"}], "minItems": 2, "maxItems": 2},
    },
    "window": {
        "type": "object",
        "oneOf": [
            {
                "properties": {"lo": {"type": "integer"}, "hi": {"type": "integer"}},
                "required": ["lo", "hi"],
                "additionalProperties": False,
            },
            {
                "properties": {"size": {"type": "integer", "minimum": 1}},
                "required": ["size"],
                "additionalProperties": False,
            },
        ],
    },
}

CHECK_NAMES = ("thm19", "eq65", "thm84", "bac", "prop85", "thm28", "unilateral", "corollary", "lemma35")

# extra fields each check needs beyond the operator and subspace
CHECK_REQUIRES = {
    "thm19": ["delta", "q", "n"],
    "eq65": ["schedule"],
    "thm84": ["schedule"],
    "bac": ["schedule"],
    "prop85": ["schedule"],
    "thm28": ["schedule", "right_operator", "right_subspace"],
    "unilateral": ["N"],
    "corollary": ["N", "right_operator", "right_subspace"],
    "lemma35": ["schedule", "others", "tol"],
}

CHECK_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": DEFS,
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "check": {"enum": list(CHECK_NAMES)},
        "operator": {"$ref": "#/$defs/operator"},
        "subspace": {"$ref": "#/$defs/subspace"},
        "witness": {"type": "integer"},
        "schedule": {"$ref": "#/$defs/schedule"},
        "thresholds": {"$ref": "#/$defs/thresholds"},
        "delta": _POSITIVE,
        "q": {"type": "integer", "minimum": 0},
        "n": {"type": "integer", "minimum": 1},
        "N": {"type": "integer", "minimum": 1},
        "probe_window": {"type": "integer", "minimum": 1},
        "others": _INT_LIST,
        "tol": _POSITIVE,
        "right_operator": {"$ref": "#/$defs/operator"},
        "right_subspace": {"$ref": "#/$defs/subspace"},
        "right_witness": {"type": "integer"},
    },
    "required": ["schema_version", "check", "operator", "subspace"],
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"check": {"const": name}}}, "then": {"required": fields}}
        for name, fields in CHECK_REQUIRES.items()
    ],
}

BUNDLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": DEFS,
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "bundle": {"type": "string"},
        "parameters": {"type": "object"},
        "operator": {"$ref": "#/$defs/operator"},
        "subspaces": {"type": "object", "additionalProperties": {"$ref": "#/$defs/subspace"}},
        "checks": {"type": "array", "items": CHECK_SCHEMA},
        "verdicts": {"type": "array"},
        "self_verified": {"type": "boolean"},
        "status": {"type": "string"},
        "message": {"type": "string"},
    },
    "required": ["schema_version", "bundle", "operator", "checks"],
    "additionalProperties": False,
}

SIMULATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": DEFS,
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "operator": {"$ref": "#/$defs/operator"},
        "subspace": {"$ref": "#/$defs/subspace"},
        "schedule": {"$ref": "#/$defs/schedule"},
        "witness": {"type": "integer"},
        "thresholds": {"$ref": "#/$defs/thresholds"},
        "eps": _POSITIVE,
        "n_iter": {"type": "integer", "minimum": 1},
        "window": {"$ref": "#/$defs/window"},
        "grid": {"type": "array", "items": {"$ref": "#/$defs/vector"}},
        "grid_members": {"type": "integer", "minimum": 1},
        "x": {"$ref": "#/$defs/vector"},
    },
    "required": ["schema_version", "operator", "subspace"],
    "additionalProperties": False,
}

CONSTRUCT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$defs": DEFS,
    "type": "object",
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "family": {"enum": ["constant", "step", "periodic", "block_interleaved", "herrero", "example_2B"]},
        "params": {"type": "object"},
        "kind": {"enum": [k.value for k in Kind]},
        "thresholds": {"$ref": "#/$defs/thresholds"},
    },
    "required": ["schema_version", "family"],
    "additionalProperties": False,
}


def validate(doc, schema: dict) -> None:
    """Raise :class:`ConfigError` listing every schema violation."""
    if isinstance(doc, dict) and "schema_version" in doc and doc["schema_version"] != SCHEMA_VERSION:
        raise ConfigError(f"schema_version {doc['schema_version']!r} is not supported (expected {SCHEMA_VERSION})")
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}" for e in errors[:10]]
        raise ConfigError("invalid config:\n  " + "\n  ".join(lines))


# ---------------------------------------------------------------- rules


def rule_to_json(rule: Rule) -> dict:
    if isinstance(rule, Constant):
        return {"type": "constant", "value": rule.value}
    if isinstance(rule, Step):
        return {"type": "step", "pos": rule.pos, "neg": rule.neg}
    if isinstance(rule, Periodic):
        return {"type": "periodic", "values": list(rule.values)}
    if isinstance(rule, BlockInterleaved):
        return {"type": "block_interleaved", "low": rule.low, "high": rule.high, "lengths": list(rule.block_lengths)}
    if isinstance(rule, Table):
        return {"type": "table", "entries": [[k, v] for k, v in rule.entries], "default": rule_to_json(rule.default)}
    if isinstance(rule, Reindexed):
        return {"type": "reindexed", "base": rule_to_json(rule.base), "sign": rule.sign, "offset": rule.offset}
    raise TypeError(f"no JSON form for {type(rule).__name__}")


def rule_from_json(doc: dict) -> Rule:
    t = doc["type"]
    if t == "constant":
        return Constant(doc["value"])
    if t == "step":
        return Step(doc["pos"], doc["neg"])
    if t == "periodic":
        return Periodic(tuple(doc["values"]))
    if t == "block_interleaved":
        return BlockInterleaved(doc["low"], doc["high"], tuple(doc["lengths"]))
    if t == "table":
        return Table(tuple((int(k), float(v)) for k, v in doc["entries"]), rule_from_json(doc["default"]))
    if t == "reindexed":
        return Reindexed(rule_from_json(doc["base"]), doc["sign"], doc["offset"])
    raise ConfigError(f"unknown rule type {t!r}")


def operator_to_json(op: OperatorSpec) -> dict:
    return {"kind": op.kind.value, "weights": rule_to_json(op.rule)}


def operator_from_json(doc: dict) -> OperatorSpec:
    return OperatorSpec.make(Kind(doc["kind"]), rule_from_json(doc["weights"]))


def index_set_to_json(F: IndexSet) -> dict:
    out = {"modulus": F.modulus, "residues": sorted(F.residues)}
    if F.includes:
        out["includes"] = sorted(F.includes)
    if F.excludes:
        out["excludes"] = sorted(F.excludes)
    return out


def index_set_from_json(doc: dict, op: OperatorSpec) -> IndexSet:
    return op.index_set(doc["modulus"], doc["residues"], doc.get("includes", ()), doc.get("excludes", ()))


def schedule_to_json(s: PowerSchedule) -> dict:
    if s.stride is not None:
        return {"stride": s.stride, "count": len(s)}
    return {"powers": list(s.powers)}


def schedule_from_json(doc: dict) -> PowerSchedule:
    if "powers" in doc:
        return PowerSchedule.explicit(doc["powers"])
    return PowerSchedule.arithmetic(doc["stride"], doc["count"])


def thresholds_to_json(th: CriterionThresholds) -> dict:
    return {"satisfy_log": th.satisfy_log, "violate_log": th.violate_log, "window": th.window}


def thresholds_from_json(doc: dict | None) -> CriterionThresholds:
    return CriterionThresholds(**(doc or {}))


def vector_to_json(v: SparseVector) -> list:
    return [[k, c] for k, c in sorted(v.items())]


def vector_from_json(doc) -> SparseVector:
    out: dict[int, float] = {}
    for k, c in doc:
        out[int(k)] = out.get(int(k), 0.0) + float(c)
    return SparseVector(out)


def direct_sum_from_json(cfg: dict) -> DirectSumSpec:
    left = operator_from_json(cfg["operator"])
    right = operator_from_json(cfg["right_operator"])
    return DirectSumSpec(
        left, right, index_set_from_json(cfg["subspace"], left), index_set_from_json(cfg["right_subspace"], right)
    )


# ---------------------------------------------------------------- verdicts


def _plain(value):
    """Details dicts hold tuples, enums and nested dicts; make them JSON-ready."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Status):
        return value.value
    return value


def verdict_to_json(v: Verdict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "status": v.status.value,
        "horizon": v.horizon,
        "margin": v.margin,
        "rule": v.rule,
        "bound": v.bound,
        "powers": list(v.powers),
        "thresholds": thresholds_to_json(v.thresholds),
        "traces": {k: list(t) for k, t in v.traces.items()},
        "details": _plain(v.details),
    }


def verdict_from_json(doc: dict) -> Verdict:
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"verdict schema_version {doc.get('schema_version')!r} is not supported")
    return Verdict(
        status=Status(doc["status"]),
        horizon=doc["horizon"],
        margin=doc["margin"],
        traces={k: tuple(t) for k, t in doc["traces"].items()},
        powers=tuple(doc["powers"]),
        thresholds=thresholds_from_json(doc["thresholds"]),
        rule=doc["rule"],
        bound=doc["bound"],
        details=doc.get("details", {}),
    )


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


def traces_csv(v: Verdict) -> str:
    """One row per sample: ``k, n_k`` then one ``trace_<name>`` column per trace."""
    names = list(v.traces)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "n_k"] + [f"trace_{name}" for name in names])
    for k, n in enumerate(v.powers, start=1):
        w.writerow([k, n] + [repr(v.traces[name][k - 1]) for name in names])
    return buf.getvalue()


def density_report_to_json(report) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "eps": report.eps,
        "n_iter": report.n_iter,
        "iterations_run": report.iterations_run,
        "hit_rate": report.hit_rate,
        "leaked_norm_max": report.leaked_norm_max,
        "targets": [
            {
                "target_id": t.target_id,
                "target": vector_to_json(t.target),
                "hit": t.hit,
                "first_hit_power": t.first_hit_power,
                "distance": t.distance if math.isfinite(t.distance) else None,
            }
            for t in report.targets
        ],
    }


def density_report_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["target_id", "hit", "first_hit_power", "distance", "target"])
    for t in report.targets:
        target = ";".join(f"{k}:{c!r}" for k, c in sorted(t.target.items()))
        w.writerow([t.target_id, int(t.hit), "" if t.first_hit_power is None else t.first_hit_power, repr(t.distance), target])
    return buf.getvalue()
