"""JSON Schema for ``--format structured`` output.

Kept as plain data so it can be shipped with reports; validation itself is
left to whatever JSON Schema tool the consumer has.
"""

_words = {"type": "array", "items": {"type": "string"}}

_tape = {
    "type": "object",
    "required": ["left", "scanned", "right"],
    "properties": {
        "left": {"type": "array", "items": {"type": ["string", "null"]}},
        "scanned": {"type": ["string", "null"]},
        "right": {"type": "array", "items": {"type": ["string", "null"]}},
    },
    "additionalProperties": False,
}

_record = {
    "type": "object",
    "required": ["move", "production", "snapshot", "tapes"],
    "properties": {
        "move": {"type": ["integer", "null"], "minimum": 1, "maximum": 7},
        "production": {"type": "string"},
        "snapshot": {"type": "string"},
        "tapes": {
            "type": "object",
            "required": ["top", "middle", "bottom"],
            "properties": {"top": _tape, "middle": _tape, "bottom": _tape},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

ISOMORPHISM_REPORT = {
    "type": "object",
    "required": ["depth_checked", "layers", "matched_edges", "unmatched_edges",
                 "injective", "complete", "counterexample", "verdict"],
    "properties": {
        "depth_checked": {"type": "integer", "minimum": 0},
        "layers": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "strings", "states", "bijective"],
                "properties": {
                    "index": {"type": "integer", "minimum": 0},
                    "strings": {"type": "integer", "minimum": 0},
                    "states": {"type": "integer", "minimum": 0},
                    "bijective": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
        "matched_edges": {"type": "integer", "minimum": 0},
        "unmatched_edges": {"type": "integer", "minimum": 0},
        "injective": {"type": "boolean"},
        "complete": {"type": "boolean"},
        "counterexample": {"type": ["string", "null"]},
        "verdict": {"enum": ["pass", "fail"]},
    },
    "additionalProperties": False,
}

DETERMINACY_REPORT = {
    "type": "object",
    "required": ["verdict", "settled_states", "raw_states", "guard_overlaps",
                 "complete", "counterexample"],
    "properties": {
        "verdict": {"type": "boolean"},
        "settled_states": {"type": "integer", "minimum": 0},
        "raw_states": {"type": "integer", "minimum": 0},
        "guard_overlaps": {"type": "integer", "minimum": 0},
        "complete": {"type": "boolean"},
        "counterexample": {"type": ["string", "null"]},
    },
    "additionalProperties": False,
}

_languages = {
    name: _words
    for name in ("leftmost", "full", "generated", "extended_generated",
                 "recognized", "extended_recognized", "dual_leftmost")
}

_base = {
    "command": {"type": "string"},
    "complete": {"type": "boolean"},
    "warnings": _words,
}


def _cmd(name, required=(), **props):
    return {
        "if": {"properties": {"command": {"const": name}}},
        "then": {"required": list(required), "properties": props},
    }


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "prodmachine structured output",
    "type": "object",
    "required": ["command", "complete", "warnings"],
    "properties": _base,
    "allOf": [
        _cmd("validate", ["violations"], violations=_words),
        _cmd("transform", ["grammar", "introduced", "replaced"],
             grammar={"type": "string"}, introduced=_words,
             replaced={"type": "array", "items": {
                 "type": "array", "prefixItems": [{"type": ["string", "null"]}, _words],
                 "minItems": 2, "maxItems": 2}}),
        _cmd("oracle", ["relation", "sentences"],
             relation={"enum": ["leftmost", "strict", "full"]}, sentences=_words),
        _cmd("generate", ["sentences", "extended", "markov"],
             sentences=_words, extended={"type": "boolean"}, markov={"type": "boolean"}),
        _cmd("recognize", ["sentence", "recognized", "oracle_recognized",
                           "dual_leftmost_layers", "witness"],
             sentence={"type": "string"}, recognized={"type": "boolean"},
             oracle_recognized={"type": "boolean"},
             dual_leftmost_layers={"type": "array", "items": _words},
             witness={"type": "array", "items": _record}),
        _cmd("compare", list(_languages) + ["language_complete"],
             language_complete={"type": "object",
                                "additionalProperties": {"type": "boolean"}},
             **_languages),
        _cmd("isomorphism", ["report"], report=ISOMORPHISM_REPORT),
        _cmd("determinacy", ["report"], report=DETERMINACY_REPORT),
        _cmd("trace", ["records"], records={"type": "array", "items": _record}),
    ],
}
