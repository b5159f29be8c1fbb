"""Object-attribute flowchart model: validation, kind inference, white-boxing.

A workflow is a bipartite directed graph. Attribute nodes hold object
states, device nodes transform them; flow edges alternate between the two
kinds, and is-a edges relate a specialized attribute (src) to its general
form (dst). All values are immutable and all operations are pure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping

from .errors import (
    InferenceError,
    InferenceFailure,
    InvalidWorkflow,
    LabelClash,
    UnboundBoundary,
    UnknownDevice,
)

__all__ = [
    "NodeKind",
    "EdgeKind",
    "WorkflowNode",
    "WorkflowEdge",
    "WorkflowGraph",
    "Violation",
    "ValidationReport",
    "normalize_label",
    "make_workflow",
    "validate",
    "infer_kinds",
    "replace_styles",
    "substitute_device",
]


def normalize_label(label: str) -> str:
    """Trim and collapse internal whitespace runs to single spaces."""
    return " ".join(label.split())


class NodeKind(str, Enum):
    ATTRIBUTE = "attribute"
    DEVICE = "device"


class EdgeKind(str, Enum):
    FLOW = "flow"
    ISA = "is-a"


@dataclass(frozen=True)
class WorkflowNode:
    id: int
    label: str
    kind: NodeKind | None = None  # None = not yet inferred
    style_class: int = 0

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"node id must be non-negative, got {self.id}")
        if self.style_class < 0:
            raise ValueError(f"style_class must be non-negative, got {self.style_class}")
        object.__setattr__(self, "label", normalize_label(self.label))


@dataclass(frozen=True)
class WorkflowEdge:
    src: int
    dst: int
    kind: EdgeKind = EdgeKind.FLOW


@dataclass(frozen=True)
class WorkflowGraph:
    nodes: tuple[WorkflowNode, ...] = ()
    edges: tuple[WorkflowEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))

    def node_map(self) -> dict[int, WorkflowNode]:
        return {n.id: n for n in self.nodes}

    def attributes(self) -> tuple[WorkflowNode, ...]:
        return tuple(n for n in self.nodes if n.kind is NodeKind.ATTRIBUTE)

    def devices(self) -> tuple[WorkflowNode, ...]:
        return tuple(n for n in self.nodes if n.kind is NodeKind.DEVICE)

    def flow_edges(self) -> tuple[WorkflowEdge, ...]:
        return tuple(e for e in self.edges if e.kind is EdgeKind.FLOW)

    def isa_edges(self) -> tuple[WorkflowEdge, ...]:
        return tuple(e for e in self.edges if e.kind is EdgeKind.ISA)


def make_workflow(
    attributes: Iterable[str] = (),
    devices: Iterable[str] = (),
    flows: Iterable[tuple[str, str]] = (),
    isa: Iterable[tuple[str, str]] = (),
    styles: Mapping[str, int] | None = None,
) -> WorkflowGraph:
    """Build a workflow from labels; flow/isa pairs reference declared labels.

    Labels must be unique across both kinds here because edges reference
    nodes purely by label.
    """
    styles = {normalize_label(k): v for k, v in (styles or {}).items()}
    ids: dict[str, int] = {}
    nodes: list[WorkflowNode] = []
    for kind, labels in ((NodeKind.ATTRIBUTE, attributes), (NodeKind.DEVICE, devices)):
        for raw in labels:
            label = normalize_label(raw)
            if label in ids:
                raise ValueError(f"duplicate label {label!r}")
            ids[label] = len(nodes)
            nodes.append(
                WorkflowNode(len(nodes), label, kind, styles.get(label, 0))
            )

    def resolve(raw: str) -> int:
        label = normalize_label(raw)
        if label not in ids:
            raise ValueError(f"unknown label {label!r}")
        return ids[label]

    edges = [WorkflowEdge(resolve(a), resolve(b), EdgeKind.FLOW) for a, b in flows]
    edges += [WorkflowEdge(resolve(a), resolve(b), EdgeKind.ISA) for a, b in isa]
    return WorkflowGraph(tuple(nodes), tuple(edges))


# Violation codes reported by validate().
DUP_ID = "DUP_ID"
EMPTY_LABEL = "EMPTY_LABEL"
DUP_LABEL = "DUP_LABEL"
MISSING_KIND = "MISSING_KIND"
DANGLING_EDGE = "DANGLING_EDGE"
SELF_LOOP = "SELF_LOOP"
DUP_EDGE = "DUP_EDGE"
FLOW_SAME_KIND = "FLOW_SAME_KIND"
ISA_NOT_ATTRIBUTES = "ISA_NOT_ATTRIBUTES"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    ids: tuple[int, ...] = ()


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)


def validate(g: WorkflowGraph) -> ValidationReport:
    """Check every workflow invariant; violations are data, not failures."""
    out: list[Violation] = []

    seen_ids: set[int] = set()
    for n in g.nodes:
        if n.id in seen_ids:
            out.append(Violation(DUP_ID, f"node id {n.id} declared twice", (n.id,)))
        seen_ids.add(n.id)
        if not n.label:
            out.append(Violation(EMPTY_LABEL, f"node {n.id} has an empty label", (n.id,)))
        if n.kind is None:
            out.append(Violation(MISSING_KIND, f"node {n.id} ({n.label!r}) has no kind", (n.id,)))

    by_key: dict[tuple[NodeKind, str], list[int]] = {}
    for n in g.nodes:
        if n.kind is not None and n.label:
            by_key.setdefault((n.kind, n.label), []).append(n.id)
    for (kind, label), ids in by_key.items():
        if len(ids) > 1:
            out.append(
                Violation(
                    DUP_LABEL,
                    f"{kind.value} label {label!r} used by {len(ids)} nodes",
                    tuple(ids),
                )
            )

    node_map = {n.id: n for n in g.nodes}
    seen_edges: set[tuple[int, int, EdgeKind]] = set()
    for e in g.edges:
        missing = [x for x in (e.src, e.dst) if x not in node_map]
        if missing:
            out.append(
                Violation(DANGLING_EDGE, f"edge {e.src}->{e.dst} references missing nodes", tuple(missing))
            )
            continue
        if e.src == e.dst:
            out.append(Violation(SELF_LOOP, f"self-loop on node {e.src}", (e.src,)))
            continue
        triple = (e.src, e.dst, e.kind)
        if triple in seen_edges:
            out.append(
                Violation(DUP_EDGE, f"duplicate {e.kind.value} edge {e.src}->{e.dst}", (e.src, e.dst))
            )
            continue
        seen_edges.add(triple)
        src, dst = node_map[e.src], node_map[e.dst]
        if src.kind is None or dst.kind is None:
            continue  # MISSING_KIND already reported
        if e.kind is EdgeKind.FLOW and src.kind == dst.kind:
            out.append(
                Violation(
                    FLOW_SAME_KIND,
                    f"flow edge {e.src}->{e.dst} connects two {src.kind.value} nodes",
                    (e.src, e.dst),
                )
            )
        if e.kind is EdgeKind.ISA and not (
            src.kind is NodeKind.ATTRIBUTE and dst.kind is NodeKind.ATTRIBUTE
        ):
            out.append(
                Violation(
                    ISA_NOT_ATTRIBUTES,
                    f"is-a edge {e.src}->{e.dst} must connect two attributes",
                    (e.src, e.dst),
                )
            )

    return ValidationReport(tuple(out))


def infer_kinds(
    g: WorkflowGraph, seeds: Mapping[int, NodeKind] | None = None
) -> WorkflowGraph:
    """Assign node kinds by 2-coloring flow edges from seeded/typed nodes.

    Flow endpoints must alternate attribute/device. Is-a endpoints are
    pinned to attribute; nodes untouched by flow edges default to
    attribute. Raises InferenceError on contradictions (odd cycles,
    conflicting constraints) or on unseeded flow components.
    """
    seeds = dict(seeds or {})
    node_map = g.node_map()
    unknown = set(seeds) - set(node_map)
    if unknown:
        raise ValueError(f"seeds reference unknown node ids: {sorted(unknown)}")

    assigned: dict[int, NodeKind] = {}

    def constrain(nid: int, kind: NodeKind, why: str) -> None:
        prev = assigned.get(nid)
        if prev is not None and prev != kind:
            raise InferenceError(
                InferenceFailure.ODD_CYCLE,
                [nid],
                f"node {nid} ({node_map[nid].label!r}) forced to both kinds ({why})",
            )
        assigned[nid] = kind

    for n in g.nodes:
        if n.kind is not None:
            constrain(n.id, n.kind, "declared kind")
    for nid, kind in seeds.items():
        constrain(nid, kind, "seed")
    for e in g.edges:
        if e.kind is EdgeKind.ISA:
            for nid in (e.src, e.dst):
                if nid in node_map:
                    constrain(nid, NodeKind.ATTRIBUTE, "is-a endpoint")

    adjacency: dict[int, list[int]] = {n.id: [] for n in g.nodes}
    for e in g.edges:
        if e.kind is EdgeKind.FLOW and e.src in node_map and e.dst in node_map:
            if e.src == e.dst:
                raise InferenceError(
                    InferenceFailure.ODD_CYCLE,
                    [e.src],
                    f"flow self-loop on node {e.src} cannot alternate kinds",
                )
            adjacency[e.src].append(e.dst)
            adjacency[e.dst].append(e.src)

    def flip(kind: NodeKind) -> NodeKind:
        return NodeKind.DEVICE if kind is NodeKind.ATTRIBUTE else NodeKind.ATTRIBUTE

    # Propagate from every constrained node across its flow component.
    for start in sorted(assigned):
        queue = deque([start])
        while queue:
            nid = queue.popleft()
            for other in adjacency[nid]:
                want = flip(assigned[nid])
                if other in assigned:
                    if assigned[other] != want:
                        raise InferenceError(
                            InferenceFailure.ODD_CYCLE,
                            [nid, other],
                            f"flow edges force node {other} to both kinds",
                        )
                else:
                    assigned[other] = want
                    queue.append(other)

    ambiguous = sorted(
        n.id for n in g.nodes if n.id not in assigned and adjacency[n.id]
    )
    if ambiguous:
        raise InferenceError(
            InferenceFailure.AMBIGUOUS,
            ambiguous,
            f"flow components without seeds: nodes {ambiguous}",
        )

    nodes = tuple(
        replace(n, kind=assigned.get(n.id, NodeKind.ATTRIBUTE)) for n in g.nodes
    )
    return WorkflowGraph(nodes, g.edges)


def replace_styles(g: WorkflowGraph, style_class: int) -> WorkflowGraph:
    """Return a copy with every node assigned the given style class."""
    return WorkflowGraph(
        tuple(replace(n, style_class=style_class) for n in g.nodes), g.edges
    )


def _boundary_labels(g: WorkflowGraph, device: WorkflowNode) -> tuple[set[str], set[str]]:
    node_map = g.node_map()
    inputs = {
        node_map[e.src].label
        for e in g.edges
        if e.kind is EdgeKind.FLOW and e.dst == device.id
    }
    outputs = {
        node_map[e.dst].label
        for e in g.edges
        if e.kind is EdgeKind.FLOW and e.src == device.id
    }
    return inputs, outputs


def substitute_device(
    g: WorkflowGraph,
    device_label: str,
    sub: WorkflowGraph,
    bindings: Mapping[str, str],
) -> WorkflowGraph:
    """White-box a device: splice a finer-grained sub-workflow in its place.

    ``bindings`` maps each input/output attribute label of the device to a
    boundary attribute label of ``sub``; the bound attributes are unified
    (keeping the labels of ``g``) and everything else of ``sub`` is
    inserted fresh.
    """
    report = validate(g)
    if not report.ok:
        raise InvalidWorkflow(report, "substitution target")
    sub_report = validate(sub)
    if not sub_report.ok:
        raise InvalidWorkflow(sub_report, "substitution body")

    device_label = normalize_label(device_label)
    matches = [
        n for n in g.nodes if n.kind is NodeKind.DEVICE and n.label == device_label
    ]
    if not matches:
        raise UnknownDevice(f"no device labeled {device_label!r}")
    device = matches[0]

    inputs, outputs = _boundary_labels(g, device)
    boundary = inputs | outputs
    bindings = {
        normalize_label(k): normalize_label(v) for k, v in bindings.items()
    }
    extra = set(bindings) - boundary
    if extra:
        raise ValueError(f"bindings for non-boundary labels: {sorted(extra)}")
    missing = boundary - set(bindings)
    if missing:
        raise UnboundBoundary(missing)
    if len(set(bindings.values())) != len(bindings):
        raise ValueError("bindings must map boundary labels to distinct sub labels")

    sub_attrs = {n.label: n for n in sub.nodes if n.kind is NodeKind.ATTRIBUTE}
    not_in_sub = [v for v in bindings.values() if v not in sub_attrs]
    if not_in_sub:
        raise UnboundBoundary(
            not_in_sub, f"bound labels missing from sub-workflow: {sorted(not_in_sub)}"
        )

    g_labels = {
        (n.kind, n.label) for n in g.nodes if n.id != device.id
    }
    bound_sub_ids = {sub_attrs[v].id for v in bindings.values()}
    clashes = [
        n.label
        for n in sub.nodes
        if n.id not in bound_sub_ids and (n.kind, n.label) in g_labels
    ]
    if clashes:
        raise LabelClash(clashes)

    kept_nodes = [n for n in g.nodes if n.id != device.id]
    kept_edges = [
        e for e in g.edges if device.id not in (e.src, e.dst)
    ]

    g_attr_ids = {
        n.label: n.id for n in g.nodes if n.kind is NodeKind.ATTRIBUTE
    }
    sub_to_new: dict[int, int] = {}
    for g_label, sub_label in bindings.items():
        sub_to_new[sub_attrs[sub_label].id] = g_attr_ids[g_label]

    next_id = max((n.id for n in g.nodes), default=-1) + 1
    inserted: list[WorkflowNode] = []
    for n in sub.nodes:
        if n.id in sub_to_new:
            continue
        sub_to_new[n.id] = next_id
        inserted.append(replace(n, id=next_id))
        next_id += 1

    new_edges = [
        WorkflowEdge(sub_to_new[e.src], sub_to_new[e.dst], e.kind) for e in sub.edges
    ]
    return WorkflowGraph(
        tuple(kept_nodes) + tuple(inserted), tuple(kept_edges) + tuple(new_edges)
    )
