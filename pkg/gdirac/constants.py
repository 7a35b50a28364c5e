SEGMENT = 'segment'
HALFLINE = 'halfline'

# Endpoint roles of an edge. Half-lines only have the 0-end.
END_ZERO = 0
END_LENGTH = 1

# Sign of the psi2 trace in the balance row at an endpoint.
BALANCE_SIGN = {
    END_ZERO: 1,
    END_LENGTH: -1,
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["mass", "c", "vertices", "edges"],
    "properties": {
        "mass": {"type": "number", "exclusiveMinimum": 0},
        "c": {"type": "number", "exclusiveMinimum": 0},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"type": "string"},
        },
        "edges": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {"$ref": "#/$defs/segment"},
                    {"$ref": "#/$defs/halfline"},
                ]
            },
        },
        "clamped": {
            "type": "array",
            "uniqueItems": True,
            "items": {"type": "string"},
        },
    },
    "$defs": {
        "segment": {
            "type": "object",
            "required": ["id", "kind", "length", "from", "to"],
            "additionalProperties": False,
            "properties": {
                "id": {"type": "string"},
                "kind": {"const": SEGMENT},
                "length": {"type": "number"},
                "from": {"type": "string"},
                "to": {"type": "string"},
            },
        },
        "halfline": {
            "type": "object",
            "required": ["id", "kind", "from"],
            "additionalProperties": False,
            "properties": {
                "id": {"type": "string"},
                "kind": {"const": HALFLINE},
                "from": {"type": "string"},
            },
        },
    },
}

GDIRAC_THREADS = 'GDIRAC_THREADS'
GDIRAC_ROOT_TOLERANCE = 'GDIRAC_ROOT_TOLERANCE'
GDIRAC_CANDIDATE_TOLERANCE = 'GDIRAC_CANDIDATE_TOLERANCE'
GDIRAC_GAP_MARGIN = 'GDIRAC_GAP_MARGIN'
GDIRAC_CONTOUR_POINTS = 'GDIRAC_CONTOUR_POINTS'
GDIRAC_KERNEL_TOLERANCE = 'GDIRAC_KERNEL_TOLERANCE'
GDIRAC_DENSE_LIMIT = 'GDIRAC_DENSE_LIMIT'
GDIRAC_TRUNCATION_FACTOR = 'GDIRAC_TRUNCATION_FACTOR'
GDIRAC_SEED = 'GDIRAC_SEED'
GDIRAC_SEGMENT_MODES = 'GDIRAC_SEGMENT_MODES'

DEFAULT_SETTINGS = {
    GDIRAC_THREADS: 1,
    GDIRAC_ROOT_TOLERANCE: 1e-12,
    GDIRAC_CANDIDATE_TOLERANCE: 1e-6,
    GDIRAC_GAP_MARGIN: 1e-4,
    GDIRAC_CONTOUR_POINTS: 256,
    GDIRAC_KERNEL_TOLERANCE: 1e-8,
    GDIRAC_DENSE_LIMIT: 6000,
    GDIRAC_TRUNCATION_FACTOR: 20.0,
    GDIRAC_SEED: 0,
    GDIRAC_SEGMENT_MODES: 3,
}

# Exit statuses of the command line interface.
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3

CSV_FLOAT_FORMAT = '.17g'
