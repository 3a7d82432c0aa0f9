"""JSON Schemas for the ``result`` payload of each CLI command."""

_SET = {"type": "array", "items": {"type": "string"}, "uniqueItems": True}
_FAMILY = {"type": "array", "items": _SET}
_SEMANTICS = {"enum": ["grounded", "admissible", "complete", "preferred", "stable"]}
_BLOCKS = {"type": "object", "additionalProperties": {**_SET, "minItems": 1}}

FAITHFULNESS = {
    "type": "object",
    "required": ["semantics", "sound", "faithful", "concrete", "abstract", "image", "spurious", "lost"],
    "additionalProperties": False,
    "properties": {
        "semantics": _SEMANTICS,
        "sound": {"type": "boolean"},
        "faithful": {"type": "boolean"},
        "concrete": _FAMILY,
        "abstract": _FAMILY,
        "image": _FAMILY,
        "spurious": _FAMILY,
        "lost": _FAMILY,
    },
}

_GALOIS_FLAGS = ["adjunction_holds", "alpha_monotone", "gamma_monotone",
                 "extensive_holds", "reductive_holds", "insertion_holds", "sampled"]

GALOIS = {
    "type": "object",
    "required": _GALOIS_FLAGS + ["checked_pairs", "counterexamples"],
    "additionalProperties": False,
    "properties": {
        **{flag: {"type": "boolean"} for flag in _GALOIS_FLAGS},
        "checked_pairs": {"type": "integer", "minimum": 0},
        "counterexamples": {
            "type": "object",
            "additionalProperties": {"type": "array", "minItems": 1, "items": {"type": "array"}},
        },
    },
}

SCHEMAS = {
    "solve": {
        "type": "object",
        "required": ["semantics", "extensions", "count"],
        "additionalProperties": False,
        "properties": {
            "semantics": _SEMANTICS,
            "extensions": _FAMILY,
            "count": {"type": "integer", "minimum": 0},
        },
    },
    "abstract": {
        "type": "object",
        "required": ["blocks", "abstract_af", "apx", "out"],
        "additionalProperties": False,
        "properties": {
            "blocks": _BLOCKS,
            "abstract_af": {
                "type": "object",
                "required": ["args", "attacks"],
                "properties": {
                    "args": _SET,
                    "attacks": {"type": "array", "items": {
                        "type": "array", "items": {"type": "string"}, "minItems": 2, "maxItems": 2}},
                },
            },
            "apx": {"type": "string"},
            "out": {"type": ["string", "null"]},
        },
    },
    "verify": FAITHFULNESS,
    "search": {
        "type": "object",
        "required": ["semantics", "mode", "partition", "block_count", "report"],
        "additionalProperties": False,
        "properties": {
            "semantics": _SEMANTICS,
            "mode": {"enum": ["greedy", "exhaustive"]},
            "partition": _BLOCKS,
            "block_count": {"type": "integer", "minimum": 0},
            "report": FAITHFULNESS,
        },
    },
    "galois": GALOIS,
}

RUN_REPORT = {
    "type": "object",
    "required": ["command", "input_digest", "result", "timing_ms"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": sorted(SCHEMAS)},
        "input_digest": {"type": "string", "pattern": "^sha256:[0-9a-f]{64}$"},
        "result": {"type": "object"},
        "timing_ms": {"type": "number", "minimum": 0},
    },
}
