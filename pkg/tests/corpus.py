"""Malformed-input corpus: every case maps to a named error, never a crash."""

from fdnkit.errors import (
    DanglingEdge,
    InferenceError,
    MalformedJson,
    MissingAspect,
    NativeSyntaxError,
    UnknownLabel,
)

# (name, bytes, expected error class) for parse_cx
CX_CASES = [
    ("not json", b"this is not json", MalformedJson),
    ("top level object", b'{"nodes": []}', MalformedJson),
    ("aspect not object", b'[42]', MalformedJson),
    ("aspect value not list", b'[{"nodes": 7}]', MalformedJson),
    ("nodes aspect missing", b'[{"edges": []}]', MissingAspect),
    ("node entry not object", b'[{"nodes": [5]}]', MalformedJson),
    ("node id missing", b'[{"nodes": [{"n": "A"}]}]', MalformedJson),
    ("node id not int", b'[{"nodes": [{"@id": "x", "n": "A"}]}]', MalformedJson),
    ("node id bool", b'[{"nodes": [{"@id": true, "n": "A"}]}]', MalformedJson),
    ("node id negative", b'[{"nodes": [{"@id": -1, "n": "A"}]}]', MalformedJson),
    ("node id duplicated", b'[{"nodes": [{"@id": 0, "n": "A"}, {"@id": 0, "n": "B"}]}]', MalformedJson),
    ("node label missing", b'[{"nodes": [{"@id": 0}]}]', MalformedJson),
    ("edge source missing", b'[{"nodes": [{"@id": 0, "n": "A"}]}, {"edges": [{"t": 0}]}]', MalformedJson),
    (
        "edge source dangling",
        b'[{"nodes": [{"@id": 0, "n": "A"}]}, {"edges": [{"s": 5, "t": 0, "i": "flow"}]}]',
        DanglingEdge,
    ),
    (
        "edge target dangling",
        b'[{"nodes": [{"@id": 0, "n": "A"}]}, {"edges": [{"s": 0, "t": 9, "i": "flow"}]}]',
        DanglingEdge,
    ),
    (
        "edge interaction not a string",
        b'[{"nodes": [{"@id": 0, "n": "A"}, {"@id": 1, "n": "B"}]}, {"edges": [{"s": 0, "t": 1, "i": 3}]}]',
        MalformedJson,
    ),
    (
        "node attribute missing value",
        b'[{"nodes": [{"@id": 0, "n": "A"}]}, {"nodeAttributes": [{"po": 0, "n": "type"}]}]',
        MalformedJson,
    ),
    (
        "style class not an integer",
        b'[{"nodes": [{"@id": 0, "n": "A"}]}, {"nodeAttributes": [{"po": 0, "n": "style_class", "v": "big"}]}]',
        MalformedJson,
    ),
    (
        "untyped flow component",
        b'[{"nodes": [{"@id": 0, "n": "A"}, {"@id": 1, "n": "B"}]}, {"edges": [{"s": 0, "t": 1, "i": "flow"}]}]',
        InferenceError,
    ),
    (
        "flow triangle cannot be two-colored",
        b'[{"nodes": [{"@id": 0, "n": "A"}, {"@id": 1, "n": "B"}, {"@id": 2, "n": "C"}]},'
        b' {"edges": [{"s": 0, "t": 1, "i": "flow"}, {"s": 1, "t": 2, "i": "flow"}, {"s": 2, "t": 0, "i": "flow"}]},'
        b' {"nodeAttributes": [{"po": 0, "n": "type", "v": "attribute"}]}]',
        InferenceError,
    ),
    ("not utf-8", b'[\xff\xfe]', MalformedJson),
]

# (name, text, expected error class) for parse_native
NATIVE_CASES = [
    ("unknown directive", "gizmo A\n", NativeSyntaxError),
    ("attribute without label", "attribute\n", NativeSyntaxError),
    ("duplicate declaration", "attribute A\nattribute A\n", NativeSyntaxError),
    ("flow without arrow", "attribute A\ndevice D\nflow A D\n", NativeSyntaxError),
    ("flow self-loop", "attribute A\nflow A -> A\n", NativeSyntaxError),
    ("flow unknown label", "attribute A\nflow A -> B\n", UnknownLabel),
    ("isa self", "attribute A\nisa A -> A\n", NativeSyntaxError),
    ("isa endpoint is a device", "attribute A\ndevice D\nisa A -> D\n", NativeSyntaxError),
    ("isa unknown label", "attribute A\nisa A -> missing\n", UnknownLabel),
    ("style missing number", "attribute A\nstyle A\n", NativeSyntaxError),
    ("style not a number", "attribute A\nstyle A two\n", NativeSyntaxError),
    ("style unknown label", "attribute A\nstyle B 1\n", UnknownLabel),
]
