"""JSON schema for job files read by the command-line front-end."""

_INT = {"type": "integer"}
_NONNEG = {"type": "integer", "minimum": 0}
_NAME = {"type": "string", "pattern": "^[A-Za-z][A-Za-z0-9_]*$"}

# a term is [monomial, coeff] or the flat form [gen, exp, gen, exp, ..., coeff]
_TERM = {
    "type": "array",
    "minItems": 2,
    "items": {"type": ["string", "integer"]},
}
_PIECE = {"type": "array", "items": {"$ref": "#/$defs/term"}}
_TOTAL = {
    "type": "array",
    "minItems": 1,
    "prefixItems": [{"const": 1}],
    "items": {"$ref": "#/$defs/piece"},
}
_BUNDLE = {
    "oneOf": [
        {"$ref": "#/$defs/total"},
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["chern"],
            "properties": {"rank": _NONNEG, "chern": {"$ref": "#/$defs/total"}},
        },
    ]
}


def _family(kind, required, props):
    props = dict(props, type={"const": kind})
    return {
        "if": {"properties": {"type": {"const": kind}}},
        "then": {
            "additionalProperties": False,
            "required": ["type"] + required,
            "properties": props,
        },
    }


_BASES = [
    _family("point", [], {}),
    _family("projective_space", ["n"], {"n": _NONNEG, "generator": _NAME}),
    _family("truncated_polynomial", ["generators", "truncation_degree"], {
        "generators": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [_NAME, {"type": "integer", "minimum": 2}],
                      "minItems": 2, "maxItems": 2},
        },
        "truncation_degree": _NONNEG,
        "nilpotence": {"type": "array", "items": {"type": ["integer", "null"], "minimum": 1}},
    }),
    _family("surface", ["intersection_matrix"], {
        "intersection_matrix": {"type": "array", "minItems": 1,
                                "items": {"type": "array", "items": _INT}},
        "generators": {"type": "array", "items": _NAME},
    }),
]

_BUNDLE_REF = {"$ref": "#/$defs/bundle"}
_CLASS_REF = {"$ref": "#/$defs/piece"}

_FAMILIES = [
    _family("generic", ["h0", "h1", "h2", "rho_g"], {
        "h0": _NONNEG, "h1": _NONNEG, "h2": _NONNEG, "rho_g": _NONNEG,
        "V0": _BUNDLE_REF, "V1": _BUNDLE_REF, "V2": _BUNDLE_REF, "H20": _BUNDLE_REF,
    }),
    _family("projectivisation", ["V", "k"], {"V": _BUNDLE_REF, "k": _INT, "L": _BUNDLE_REF}),
    _family("fibre_product", ["V1", "V2", "k", "l"], {
        "V1": _BUNDLE_REF, "V2": _BUNDLE_REF, "k": _INT, "l": _INT, "L": _BUNDLE_REF,
    }),
    _family("blowup", ["p0", "p1", "p2", "rho_g", "mode"], {
        "L1": _CLASS_REF, "L2": _BUNDLE_REF,
        "p0": _NONNEG, "p1": _NONNEG, "p2": _NONNEG, "rho_g": _NONNEG,
        "mode": {"enum": ["zero", "minus_e_basepoint_free", "minus_ke_surjective",
                          "plus_e", "plus_ke_surjective"]},
        "k": _INT,
        "cotangent": _BUNDLE_REF,
        "canonical": _CLASS_REF,
    }),
]

ROUTE_NAMES = ("closed", "triple", "pushforward", "family_form")
N_MAX = 64

JOB_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["base", "family", "n_range"],
    "properties": {
        "spec_version": {"const": 1},
        "base": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["point", "projective_space",
                                             "truncated_polynomial", "surface"]}},
            "allOf": _BASES,
        },
        "family": {
            "type": "object",
            "required": ["type"],
            "properties": {"type": {"enum": ["generic", "projectivisation",
                                             "fibre_product", "blowup"]}},
            "allOf": _FAMILIES,
        },
        "n_range": {
            "type": "array",
            "prefixItems": [{"type": "integer", "minimum": 0, "maximum": N_MAX}] * 2,
            "minItems": 2,
            "maxItems": 2,
        },
        "routes": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"enum": list(ROUTE_NAMES)},
        },
        "output": {"enum": ["text", "json"]},
    },
    "$defs": {"term": _TERM, "piece": _PIECE, "total": _TOTAL, "bundle": _BUNDLE},
}
