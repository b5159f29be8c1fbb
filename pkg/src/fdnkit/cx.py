"""CX JSON interchange: parse workflow documents, serialize networks.

The supported profile is a JSON array of single-key aspect objects:

* ``nodes``: ``{"@id": <int>, "n": <label>}``
* ``edges``: ``{"@id": <int>, "s": <id>, "t": <id>, "i": <interaction>}``;
  an interaction of "is-a" (hyphen/space/case tolerant) marks an is-a
  edge, anything else is a flow edge
* ``nodeAttributes``: ``{"po": <id>, "n": <name>, "v": <value>}``; name
  ``type`` with value ``attribute``/``device`` fixes a node kind, name
  ``style_class`` carries superposition styling
* ``edgeAttributes``: ``{"po": <edge id>, "n": "order", "v": <int>}``

Unknown aspects are kept on the parsed document so a parse/emit cycle
passes them through untouched. Node kinds missing from the document are
inferred from flow edges with the typed nodes as seeds.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .errors import DanglingEdge, MalformedJson, MissingAspect
from .fdn import (
    FdnEdge,
    FdnEdgeKind,
    FdnGraph,
    FdnKind,
    FdnNode,
    WayKind,
    canonicalize,
)
from .workflow import (
    EdgeKind,
    NodeKind,
    WorkflowEdge,
    WorkflowGraph,
    WorkflowNode,
    infer_kinds,
)

__all__ = [
    "CxDocument",
    "parse_cx_document",
    "workflow_from_document",
    "parse_cx",
    "emit_workflow_cx",
    "emit_cx",
    "parse_fdn_cx",
]

KNOWN_ASPECTS = ("nodes", "edges", "nodeAttributes", "edgeAttributes")

_FDN_KIND_TO_CX = {
    (FdnKind.ATTRIBUTE_FUNCTION, None): "attribute_function",
    (FdnKind.WAY_APPLICATION, None): "way_application",
    (FdnKind.WAY, WayKind.DECOMPOSITION): "way_decomposition",
    (FdnKind.WAY, WayKind.SPECIALIZATION): "way_specialization",
}
_CX_TO_FDN_KIND = {v: k for k, v in _FDN_KIND_TO_CX.items()}


@dataclass
class CxDocument:
    """Ordered aspect blocks of one CX file."""

    aspects: list[tuple[str, list]] = field(default_factory=list)

    def collect(self, name: str) -> list:
        out: list = []
        for aspect_name, entries in self.aspects:
            if aspect_name == name:
                out.extend(entries)
        return out

    def has(self, name: str) -> bool:
        return any(aspect_name == name for aspect_name, _ in self.aspects)

    def passthrough(self) -> list[tuple[str, list]]:
        return [(n, e) for n, e in self.aspects if n not in KNOWN_ASPECTS]


def _decode(data: bytes | str) -> Any:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedJson(f"input is not UTF-8: {exc}") from exc
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"invalid JSON: {exc}") from exc


def parse_cx_document(data: bytes | str) -> CxDocument:
    """Parse the aspect structure without interpreting entries."""
    doc = _decode(data)
    if not isinstance(doc, list):
        raise MalformedJson("top level must be a JSON array of aspect objects")
    aspects: list[tuple[str, list]] = []
    for item in doc:
        if not isinstance(item, dict):
            raise MalformedJson("aspect entries must be JSON objects")
        for name, entries in item.items():
            if not isinstance(entries, list):
                raise MalformedJson(f"aspect {name!r} must hold a JSON array")
            aspects.append((name, entries))
    return CxDocument(aspects)


def _entry_int(entry: dict, key: str, context: str) -> int:
    value = entry.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedJson(f"{context}: field {key!r} must be an integer, got {value!r}")
    return value


def _entry_str(entry: dict, key: str, context: str) -> str:
    value = entry.get(key)
    if not isinstance(value, str):
        raise MalformedJson(f"{context}: field {key!r} must be a string, got {value!r}")
    return value


def _entries(doc: CxDocument, name: str) -> list[dict]:
    entries = doc.collect(name)
    for entry in entries:
        if not isinstance(entry, dict):
            raise MalformedJson(f"{name} entries must be JSON objects")
    return entries


_ISA_RE = re.compile(r"[\s\-_]+")


def _is_isa(interaction: str) -> bool:
    return _ISA_RE.sub("", interaction.strip().lower()) == "isa"


def _node_attributes(doc: CxDocument, node_ids: set[int]) -> dict[int, dict[str, Any]]:
    attrs: dict[int, dict[str, Any]] = {}
    for entry in _entries(doc, "nodeAttributes"):
        po = _entry_int(entry, "po", "nodeAttributes")
        name = _entry_str(entry, "n", "nodeAttributes")
        if "v" not in entry:
            raise MalformedJson("nodeAttributes: field 'v' missing")
        if po in node_ids:
            attrs.setdefault(po, {})[name] = entry["v"]
    return attrs


def _style_class(value: Any) -> int:
    try:
        style = int(value)
    except (TypeError, ValueError):
        raise MalformedJson(f"style_class must be an integer, got {value!r}") from None
    if style < 0:
        raise MalformedJson(f"style_class must be non-negative, got {style}")
    return style


def workflow_from_document(doc: CxDocument) -> WorkflowGraph:
    """Interpret a CX document as an object-attribute workflow."""
    if not doc.has("nodes"):
        raise MissingAspect("nodes")

    ids: set[int] = set()
    raw_nodes: list[tuple[int, str]] = []
    for entry in _entries(doc, "nodes"):
        nid = _entry_int(entry, "@id", "nodes")
        if nid < 0:
            raise MalformedJson(f"node '@id' must be non-negative, got {nid}")
        if nid in ids:
            raise MalformedJson(f"duplicate node '@id' {nid}")
        ids.add(nid)
        raw_nodes.append((nid, _entry_str(entry, "n", "nodes")))

    attrs = _node_attributes(doc, ids)
    nodes: list[WorkflowNode] = []
    for nid, label in raw_nodes:
        kind: NodeKind | None = None
        type_value = attrs.get(nid, {}).get("type")
        if isinstance(type_value, str):
            lowered = type_value.strip().lower()
            if lowered == NodeKind.ATTRIBUTE.value:
                kind = NodeKind.ATTRIBUTE
            elif lowered == NodeKind.DEVICE.value:
                kind = NodeKind.DEVICE
        style = _style_class(attrs.get(nid, {}).get("style_class", 0))
        nodes.append(WorkflowNode(nid, label, kind, style))

    edges: list[WorkflowEdge] = []
    for entry in _entries(doc, "edges"):
        src = _entry_int(entry, "s", "edges")
        dst = _entry_int(entry, "t", "edges")
        dangling = [x for x in (src, dst) if x not in ids]
        if dangling:
            raise DanglingEdge(f"edge {src}->{dst} references undeclared nodes {dangling}")
        interaction = entry.get("i", "")
        if interaction and not isinstance(interaction, str):
            raise MalformedJson(f"edges: field 'i' must be a string, got {interaction!r}")
        kind = EdgeKind.ISA if interaction and _is_isa(interaction) else EdgeKind.FLOW
        edges.append(WorkflowEdge(src, dst, kind))

    graph = WorkflowGraph(tuple(nodes), tuple(edges))
    if any(n.kind is None for n in graph.nodes):
        graph = infer_kinds(graph)
    return graph


def parse_cx(data: bytes | str) -> WorkflowGraph:
    """Parse CX bytes straight to a workflow (passthrough aspects dropped)."""
    return workflow_from_document(parse_cx_document(data))


def _dumps(aspects: Iterable[tuple[str, list]]) -> bytes:
    payload = [{name: entries} for name, entries in aspects]
    return (json.dumps(payload, indent=1, ensure_ascii=False) + "\n").encode("utf-8")


def emit_workflow_cx(
    g: WorkflowGraph, passthrough: Sequence[tuple[str, list]] = ()
) -> bytes:
    """Serialize a workflow; ids are reassigned in canonical node order."""
    ordered = sorted(g.nodes, key=lambda n: (n.kind.value if n.kind else "", n.label, n.id))
    new_ids = {n.id: i for i, n in enumerate(ordered)}

    node_entries = [{"@id": new_ids[n.id], "n": n.label} for n in ordered]
    attr_entries: list[dict] = []
    for n in ordered:
        if n.kind is not None:
            attr_entries.append({"po": new_ids[n.id], "n": "type", "v": n.kind.value})
        if n.style_class:
            attr_entries.append({"po": new_ids[n.id], "n": "style_class", "v": n.style_class})

    sorted_edges = sorted(
        g.edges, key=lambda e: (e.kind.value, new_ids[e.src], new_ids[e.dst])
    )
    edge_entries = [
        {"@id": i, "s": new_ids[e.src], "t": new_ids[e.dst], "i": e.kind.value}
        for i, e in enumerate(sorted_edges)
    ]
    aspects = [
        ("nodes", node_entries),
        ("edges", edge_entries),
        ("nodeAttributes", attr_entries),
    ]
    aspects.extend(passthrough)
    return _dumps(aspects)


def emit_cx(f: FdnGraph) -> bytes:
    """Serialize a network in canonical order; own output parses back
    key-equal via parse_fdn_cx."""
    canon = canonicalize(f)
    node_entries = [{"@id": n.id, "n": n.label} for n in canon.nodes]
    attr_entries: list[dict] = []
    for n in canon.nodes:
        attr_entries.append(
            {"po": n.id, "n": "fdn_kind", "v": _FDN_KIND_TO_CX[(n.kind, n.way_kind)]}
        )
        attr_entries.append({"po": n.id, "n": "style_class", "v": n.style_class})

    edge_entries = [
        {"@id": i, "s": e.src, "t": e.dst, "i": e.kind.value}
        for i, e in enumerate(canon.edges)
    ]
    order_entries = [
        {"po": i, "n": "order", "v": e.order} for i, e in enumerate(canon.edges)
    ]
    return _dumps(
        [
            ("nodes", node_entries),
            ("edges", edge_entries),
            ("nodeAttributes", attr_entries),
            ("edgeAttributes", order_entries),
        ]
    )


_EDGE_KIND = {
    "achievedby": FdnEdgeKind.ACHIEVED_BY,
    "requires": FdnEdgeKind.REQUIRES,
}


def parse_fdn_cx(data: bytes | str) -> FdnGraph:
    """Parse a network serialized by emit_cx (or an equivalent document)."""
    doc = parse_cx_document(data)
    if not doc.has("nodes"):
        raise MissingAspect("nodes")

    ids: set[int] = set()
    raw_nodes: list[tuple[int, str]] = []
    for entry in _entries(doc, "nodes"):
        nid = _entry_int(entry, "@id", "nodes")
        if nid < 0:
            raise MalformedJson(f"node '@id' must be non-negative, got {nid}")
        if nid in ids:
            raise MalformedJson(f"duplicate node '@id' {nid}")
        ids.add(nid)
        raw_nodes.append((nid, _entry_str(entry, "n", "nodes")))

    attrs = _node_attributes(doc, ids)
    nodes: list[FdnNode] = []
    for nid, label in raw_nodes:
        kind_value = attrs.get(nid, {}).get("fdn_kind")
        if kind_value not in _CX_TO_FDN_KIND:
            raise MalformedJson(f"node {nid}: missing or unknown fdn_kind {kind_value!r}")
        kind, way_kind = _CX_TO_FDN_KIND[kind_value]
        style = _style_class(attrs.get(nid, {}).get("style_class", 0))
        nodes.append(FdnNode(nid, label, kind, way_kind, style))

    orders: dict[int, int] = {}
    for entry in _entries(doc, "edgeAttributes"):
        po = _entry_int(entry, "po", "edgeAttributes")
        if _entry_str(entry, "n", "edgeAttributes") == "order":
            orders[po] = _entry_int(entry, "v", "edgeAttributes")

    edges: list[FdnEdge] = []
    for entry in _entries(doc, "edges"):
        src = _entry_int(entry, "s", "edges")
        dst = _entry_int(entry, "t", "edges")
        dangling = [x for x in (src, dst) if x not in ids]
        if dangling:
            raise DanglingEdge(f"edge {src}->{dst} references undeclared nodes {dangling}")
        interaction = _entry_str(entry, "i", "edges")
        normalized = _ISA_RE.sub("", interaction.strip().lower())
        if normalized not in _EDGE_KIND:
            raise MalformedJson(f"unknown edge interaction {interaction!r}")
        eid = entry.get("@id")
        order = orders.get(eid, 0) if isinstance(eid, int) else 0
        edges.append(FdnEdge(src, dst, _EDGE_KIND[normalized], order))

    return FdnGraph(tuple(nodes), tuple(edges))
