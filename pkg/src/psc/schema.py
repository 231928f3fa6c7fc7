"""JSON Schema for everything the CLI prints with ``--output json``."""

from __future__ import annotations

_num = {"type": "number"}
_bool = {"type": "boolean"}
_str = {"type": "string"}
_point = {"type": "array", "items": {"type": "integer", "minimum": 0}}
_pair = {"type": "array", "items": _str, "minItems": 2, "maxItems": 2}

_affine = {
    "oneOf": [
        {"type": "null"},
        {
            "type": "object",
            "required": ["S", "a"],
            "properties": {
                "S": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
                "a": {"type": "array", "items": {"type": "integer"}},
            },
        },
    ]
}

_certificate = {
    "type": "object",
    "required": ["status", "method", "affine", "witness", "reason", "per_kraus"],
    "properties": {
        "status": {"enum": ["covariant", "non-covariant"]},
        "method": _str,
        "affine": _affine,
        "witness": {"oneOf": [{"type": "null"}, _point]},
        "reason": _str,
        "per_kraus": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "status", "affine"],
                "properties": {"index": {"type": "integer"}, "status": _str, "affine": _affine},
            },
        },
        "details": {"type": "object"},
    },
}

_obstruction = {
    "type": "object",
    "required": ["kind", "label", "min_value", "location"],
    "properties": {
        "kind": {"enum": ["state", "effect", "transformation"]},
        "label": _str,
        "min_value": _num,
        "location": {"type": "array"},
    },
}

_tnc_verdict = {
    "type": "object",
    "required": ["noncontextual", "max_discrepancy", "pairs"],
    "properties": {
        "noncontextual": _bool,
        "max_discrepancy": _num,
        "distinguishing_pair": {"oneOf": [{"type": "null"}, _pair]},
        "pairs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["pair", "discrepancy"],
                "properties": {"pair": _pair, "discrepancy": _num},
            },
        },
    },
}

_positivity = {
    "type": "object",
    "required": ["preserving", "min_value", "worst", "checked"],
    "properties": {
        "preserving": _bool,
        "min_value": _num,
        "checked": {"type": "integer", "minimum": 0},
        "worst": {
            "oneOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "required": ["transformation", "state", "point", "value"],
                    "properties": {"transformation": _str, "state": _str, "point": _point, "value": _num},
                },
            ]
        },
        "negativity_totals": {"type": "object", "additionalProperties": _num},
    },
}

_implication = {
    "type": "object",
    "required": ["premise", "positivity_preserving", "implication_holds", "converse_counterexample"],
    "properties": {
        "premise": _bool,
        "positivity_preserving": _bool,
        "implication_holds": _bool,
        "converse_counterexample": _bool,
        "premise_name": _str,
        "eight_state": {"type": "object"},
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["subtheory", "frame", "covariance", "tnc", "positivity", "theorems", "tolerances"],
    "additionalProperties": False,
    "properties": {
        "subtheory": _str,
        "frame": _str,
        "covariance": {
            "type": "array",
            "items": {"allOf": [_certificate, {"required": ["transformation"]}]},
        },
        "tnc": {
            "type": "object",
            "required": ["wigner_model_noncontextual", "obstructions"],
            "properties": {
                "wigner_model_noncontextual": _bool,
                "obstructions": {"type": "array", "items": _obstruction},
                "eight_state": {"type": "object"},
            },
        },
        "positivity": _positivity,
        "theorems": {
            "type": "object",
            "required": ["covariance_vs_wigner_tnc", "covariance_implies_positivity", "tnc_implies_positivity", "classical"],
            "properties": {
                "covariance_vs_wigner_tnc": {
                    "type": "object",
                    "required": ["covariant", "wigner_model_noncontextual", "agree"],
                    "properties": {"covariant": _bool, "wigner_model_noncontextual": _bool, "agree": _bool},
                },
                "covariance_implies_positivity": _implication,
                "tnc_implies_positivity": _implication,
                "classical": _bool,
            },
        },
        "tolerances": {"type": "object"},
    },
}


def _command(name: str, required: list[str], extra: dict | None = None) -> dict:
    schema = {
        "type": "object",
        "required": ["command", *required],
        "properties": {"command": {"const": name}, **(extra or {})},
    }
    return schema


COMMAND_SCHEMAS = {
    "frames": _command("frames", ["frames"], {
        "frames": {"type": "array", "items": {
            "type": "object", "required": ["label", "d", "n", "points", "gamma"]}},
    }),
    "subtheories": _command("subtheories", ["subtheories"], {
        "subtheories": {"type": "array", "items": {
            "type": "object", "required": ["label", "d", "n", "states", "transformations", "povms"]}},
    }),
    "wigner": _command("wigner", ["frame", "values", "min", "negativity", "classical"], {
        "frame": _str,
        "values": {"type": "object", "additionalProperties": _num},
        "min": _num,
        "negativity": {"type": "number", "minimum": 0},
        "classical": _bool,
    }),
    "covariance": {"allOf": [
        _command("covariance", ["frame", "channel", "classical"], {"classical": _bool}),
        _certificate,
    ]},
    "positivity": {"allOf": [
        _command("positivity", ["frame", "subtheory", "classical"], {"classical": _bool}),
        _positivity,
    ]},
    "tnc": {"allOf": [
        _command("tnc", ["model", "frame", "pair", "model_exists", "classical"], {
            "model": {"enum": ["8state", "wigner"]},
            "pair": _pair,
            "model_exists": _bool,
            "classical": _bool,
        }),
        {"if": {"properties": {"model_exists": {"const": True}}},
         "then": _tnc_verdict,
         "else": {"required": ["obstruction"], "properties": {"obstruction": _obstruction}}},
    ]},
    "theorems": REPORT_SCHEMA,
}


def schema_for(verb: str) -> dict:
    return {"$schema": "https://json-schema.org/draft/2020-12/schema", **COMMAND_SCHEMAS[verb]}
