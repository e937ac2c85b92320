"""Published JSON schemas for the CLI report formats (format_version 1)."""

FORMAT_VERSION = 1

_FRACTION = {
    "type": "array",
    "items": {"type": "integer"},
    "minItems": 2,
    "maxItems": 2,
}

_SECTOR_DISTANCE = {
    "type": "object",
    "properties": {
        "status": {"enum": ["exact", "lower_bound"]},
        "d": {"type": "integer"},
        "gt": {"type": "integer"},
        "le": {"type": "integer"},
        "method": {"type": "string"},
    },
    "required": ["status"],
}

_PARAMS_FIELDS = {
    "N": {"type": "integer"},
    "k": {"type": "integer"},
    "d_X": {"oneOf": [_SECTOR_DISTANCE, {"type": "null"}]},
    "d_Z": {"oneOf": [_SECTOR_DISTANCE, {"type": "null"}]},
    "d": {"oneOf": [_SECTOR_DISTANCE, {"type": "null"}]},
}

PARAMS_SCHEMA = {
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"const": "params"},
        **_PARAMS_FIELDS,
    },
    "required": ["format_version", "kind", "N", "k", "d_X", "d_Z", "d"],
}

BOUND_SCHEMA = {
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"const": "bound"},
        "m": {"type": "integer"},
        "rho": _FRACTION,
        "D": {"type": "integer"},
        "n": {"type": "integer"},
        "hermite": {
            "type": "object",
            "properties": {
                "D": {"type": "integer"},
                "gamma_pow_D": _FRACTION,
                "is_exact": {"type": "boolean"},
            },
            "required": ["D", "gamma_pow_D", "is_exact"],
        },
        "applicable": {"type": "boolean"},
        "bound_value": {"type": "string"},
        "applicability_cmp": {
            "type": "object",
            "properties": {"lhs": {"type": "integer"}, "rhs": {"type": "integer"}},
            "required": ["lhs", "rhs"],
        },
    },
    "required": [
        "format_version",
        "kind",
        "m",
        "rho",
        "D",
        "n",
        "applicable",
        "bound_value",
        "applicability_cmp",
    ],
}

_BOUND_INNER = {k: v for k, v in BOUND_SCHEMA.items() if k != "required"}

_LOCALIZED = {
    "type": "object",
    "properties": {
        "slab": {"type": "integer"},
        "weight": {"type": "integer"},
        "support": {"type": "array", "items": {"type": "integer"}},
        "x_bits": {"type": "string"},
        "z_bits": {"type": "string"},
        "slab_population": {"type": "integer"},
        "bound_value": {"type": "string"},
    },
    "required": ["slab", "weight", "support", "x_bits", "z_bits", "slab_population"],
}

_COMPONENT = {
    "type": "object",
    "properties": {
        "group": {"type": "array", "items": {"type": "integer"}},
        "copies": {"type": "integer"},
        "n": {"type": "integer"},
        "w": {"type": "integer"},
        "D": {"type": "integer"},
        "params": {"type": "object", "properties": _PARAMS_FIELDS},
        "bound": {"type": ["object", "null"]},
        "embedding": {"type": ["object", "null"]},
        "partition": {"type": ["object", "null"]},
        "localized_logical": {"oneOf": [_LOCALIZED, {"type": "null"}]},
        "applicable": {"type": ["boolean", "null"]},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["group", "copies", "n", "w", "params", "notes"],
}

CERTIFICATE_SCHEMA = {
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"const": "certificate"},
        "input": {"type": "object"},
        "params": {"type": "object", "properties": _PARAMS_FIELDS},
        "normalized": {"type": "object"},
        "components": {"type": "array", "items": _COMPONENT},
    },
    "required": ["format_version", "kind", "input", "params", "components"],
}

LATTICE_SCHEMA = {
    "type": "object",
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"const": "lattice"},
        "dim": {"type": "integer"},
        "det": {"type": "integer"},
        "hnf": {"type": "array"},
        "good_basis": {"type": "object"},
        "partition": {"type": ["object", "null"]},
    },
    "required": ["format_version", "kind", "dim", "det", "good_basis"],
}

SCAN_CSV_COLUMNS = [
    "index",
    "group",
    "a",
    "b",
    "n",
    "w",
    "D",
    "N",
    "k",
    "d",
    "d_detail",
    "applicable",
    "bound_value",
    "d_le_bound",
]
