"""Function decomposition networks: conversion, merge, canonical form, diff.

The network has three node kinds. Attribute-functional nodes state goals
("obtain X"), way nodes are the methods achieving them (one decomposition
way per device, one specialization way per is-a child), and
way-application nodes are the device actions fired last under their way.
Node identity across graphs and files is the key (kind, way kind, label);
numeric ids are serialization plumbing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .errors import InvalidWorkflow, KindConflict
from .workflow import NodeKind, WorkflowGraph, normalize_label, validate

__all__ = [
    "FdnKind",
    "WayKind",
    "FdnEdgeKind",
    "FdnNode",
    "FdnEdge",
    "FdnGraph",
    "DiffReport",
    "NodeKey",
    "EdgeKey",
    "node_key",
    "af_key",
    "way_key",
    "application_key",
    "node_keys",
    "edge_keys",
    "key_equal",
    "fdn_violations",
    "convert",
    "merge",
    "canonicalize",
    "diff",
]


class FdnKind(str, Enum):
    ATTRIBUTE_FUNCTION = "attribute_function"
    WAY = "way"
    WAY_APPLICATION = "way_application"


class WayKind(str, Enum):
    DECOMPOSITION = "decomposition"
    SPECIALIZATION = "specialization"


class FdnEdgeKind(str, Enum):
    ACHIEVED_BY = "achieved-by"
    REQUIRES = "requires"


# (kind value, way-kind value or "", label); sorts into canonical node order.
NodeKey = tuple[str, str, str]
EdgeKey = tuple[NodeKey, NodeKey, str]


@dataclass(frozen=True)
class FdnNode:
    id: int
    label: str
    kind: FdnKind
    way_kind: WayKind | None = None
    style_class: int = 0

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"node id must be non-negative, got {self.id}")
        if self.style_class < 0:
            raise ValueError(f"style_class must be non-negative, got {self.style_class}")
        if (self.way_kind is not None) != (self.kind is FdnKind.WAY):
            raise ValueError("way_kind must be present exactly for way nodes")
        object.__setattr__(self, "label", normalize_label(self.label))

    @property
    def key(self) -> NodeKey:
        return (self.kind.value, self.way_kind.value if self.way_kind else "", self.label)


@dataclass(frozen=True)
class FdnEdge:
    src: int
    dst: int
    kind: FdnEdgeKind
    order: int = 0


@dataclass(frozen=True)
class FdnGraph:
    nodes: tuple[FdnNode, ...] = ()
    edges: tuple[FdnEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", tuple(self.edges))

    def node_map(self) -> dict[int, FdnNode]:
        return {n.id: n for n in self.nodes}

    def nodes_of_kind(self, kind: FdnKind) -> tuple[FdnNode, ...]:
        return tuple(n for n in self.nodes if n.kind is kind)


def node_key(n: FdnNode) -> NodeKey:
    return n.key


def af_key(label: str) -> NodeKey:
    return (FdnKind.ATTRIBUTE_FUNCTION.value, "", normalize_label(label))


def way_key(label: str, way_kind: WayKind = WayKind.DECOMPOSITION) -> NodeKey:
    return (FdnKind.WAY.value, way_kind.value, normalize_label(label))


def application_key(label: str) -> NodeKey:
    return (FdnKind.WAY_APPLICATION.value, "", normalize_label(label))


def node_keys(f: FdnGraph) -> frozenset[NodeKey]:
    return frozenset(n.key for n in f.nodes)


def edge_keys(f: FdnGraph) -> frozenset[EdgeKey]:
    by_id = f.node_map()
    return frozenset(
        (by_id[e.src].key, by_id[e.dst].key, e.kind.value) for e in f.edges
    )


def key_equal(a: FdnGraph, b: FdnGraph) -> bool:
    """Equality on node/edge keys, ignoring ids, orders and styles."""
    return node_keys(a) == node_keys(b) and edge_keys(a) == edge_keys(b)


def fdn_violations(f: FdnGraph) -> list[str]:
    """Check the structural network invariants; empty list means valid."""
    out: list[str] = []
    by_id = f.node_map()
    if len(by_id) != len(f.nodes):
        out.append("duplicate node ids")
        return out
    for e in f.edges:
        if e.src not in by_id or e.dst not in by_id:
            out.append(f"dangling edge {e.src}->{e.dst}")
            continue
        src, dst = by_id[e.src], by_id[e.dst]
        if e.kind is FdnEdgeKind.ACHIEVED_BY:
            if not (src.kind is FdnKind.ATTRIBUTE_FUNCTION and dst.kind is FdnKind.WAY):
                out.append(f"achieved-by edge {src.label!r}->{dst.label!r} violates kinds")
        else:
            if not (
                src.kind is FdnKind.WAY
                and dst.kind in (FdnKind.ATTRIBUTE_FUNCTION, FdnKind.WAY_APPLICATION)
            ):
                out.append(f"requires edge {src.label!r}->{dst.label!r} violates kinds")

    requires: dict[int, list[FdnEdge]] = {}
    incoming_requires: dict[int, int] = {}
    for e in f.edges:
        if e.kind is FdnEdgeKind.REQUIRES and e.src in by_id and e.dst in by_id:
            requires.setdefault(e.src, []).append(e)
            if by_id[e.dst].kind is FdnKind.WAY_APPLICATION:
                incoming_requires[e.dst] = incoming_requires.get(e.dst, 0) + 1

    for n in f.nodes:
        if n.kind is not FdnKind.WAY:
            continue
        children = requires.get(n.id, [])
        apps = [e for e in children if by_id[e.dst].kind is FdnKind.WAY_APPLICATION]
        others = [e for e in children if by_id[e.dst].kind is not FdnKind.WAY_APPLICATION]
        if n.way_kind is WayKind.DECOMPOSITION:
            if len(apps) != 1:
                out.append(f"decomposition way {n.label!r} has {len(apps)} way applications")
            elif others and apps[0].order <= max(e.order for e in others):
                out.append(f"way application under {n.label!r} is not ordered last")
        else:
            if apps:
                out.append(f"specialization way {n.label!r} has a way application")
            if len(others) != 1:
                out.append(f"specialization way {n.label!r} has {len(others)} children")

    for n in f.nodes:
        if n.kind is FdnKind.WAY_APPLICATION and incoming_requires.get(n.id, 0) != 1:
            out.append(
                f"way application {n.label!r} has {incoming_requires.get(n.id, 0)} incoming requires edges"
            )
    return out


def _build_canonical(
    styles: Mapping[NodeKey, int], edge_set: Iterable[EdgeKey]
) -> FdnGraph:
    """Build the canonical graph for a key set: sorted nodes, fresh ids,
    recomputed sibling orders (function children by label, application last)."""
    keys = sorted(styles)
    ids = {k: i for i, k in enumerate(keys)}
    nodes = tuple(
        FdnNode(
            ids[k],
            k[2],
            FdnKind(k[0]),
            WayKind(k[1]) if k[1] else None,
            styles[k],
        )
        for k in keys
    )

    achieved_by: list[tuple[NodeKey, NodeKey]] = []
    requires_children: dict[NodeKey, list[NodeKey]] = {}
    for src, dst, kind in edge_set:
        if kind == FdnEdgeKind.ACHIEVED_BY.value:
            achieved_by.append((src, dst))
        else:
            requires_children.setdefault(src, []).append(dst)

    orders: dict[tuple[NodeKey, NodeKey], int] = {}
    for way, children in requires_children.items():
        funcs = sorted(c for c in children if c[0] != FdnKind.WAY_APPLICATION.value)
        apps = sorted(c for c in children if c[0] == FdnKind.WAY_APPLICATION.value)
        for i, child in enumerate(funcs + apps):
            orders[(way, child)] = i

    edges = []
    for src, dst, kind in edge_set:
        order = orders.get((src, dst), 0) if kind == FdnEdgeKind.REQUIRES.value else 0
        edges.append((src, order, dst, kind))
    edges.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
    return FdnGraph(
        nodes,
        tuple(FdnEdge(ids[s], ids[d], FdnEdgeKind(k), o) for s, o, d, k in edges),
    )


def convert(g: WorkflowGraph) -> FdnGraph:
    """Convert an object-attribute workflow into its decomposition network.

    Attributes become "obtain <label>" goal nodes. Each device becomes a
    decomposition way "<label> way" achieving its output goals, requiring
    its input goals plus the application node "apply <label>" (always
    last). Each is-a edge becomes a specialization way "is-a: <child>"
    with no application node.
    """
    report = validate(g)
    if not report.ok:
        raise InvalidWorkflow(report)

    node_map = g.node_map()
    styles: dict[tuple[str, str, str], int] = {}

    def add(key: NodeKey, style: int) -> None:
        styles[key] = min(style, styles.get(key, style))

    for a in g.attributes():
        add(af_key("obtain " + a.label), a.style_class)
    for d in g.devices():
        add(way_key(d.label + " way"), d.style_class)
        add(application_key("apply " + d.label), d.style_class)

    edge_set: set[EdgeKey] = set()
    for e in g.flow_edges():
        src, dst = node_map[e.src], node_map[e.dst]
        if src.kind is NodeKind.ATTRIBUTE:
            edge_set.add(
                (way_key(dst.label + " way"), af_key("obtain " + src.label), FdnEdgeKind.REQUIRES.value)
            )
        else:
            edge_set.add(
                (af_key("obtain " + dst.label), way_key(src.label + " way"), FdnEdgeKind.ACHIEVED_BY.value)
            )
    for d in g.devices():
        edge_set.add(
            (way_key(d.label + " way"), application_key("apply " + d.label), FdnEdgeKind.REQUIRES.value)
        )
    for e in g.isa_edges():
        child, parent = node_map[e.src], node_map[e.dst]
        skey = way_key("is-a: " + child.label, WayKind.SPECIALIZATION)
        add(skey, child.style_class)
        edge_set.add((af_key("obtain " + parent.label), skey, FdnEdgeKind.ACHIEVED_BY.value))
        edge_set.add((skey, af_key("obtain " + child.label), FdnEdgeKind.REQUIRES.value))

    return _build_canonical(styles, edge_set)


def merge(graphs: Sequence[FdnGraph]) -> FdnGraph:
    """Union networks by node/edge key; shared nodes keep the minimum
    style class, so nodes already present in an earlier file stay solid."""
    label_kinds: dict[str, set[tuple[str, str]]] = {}
    styles: dict[NodeKey, int] = {}
    edge_set: set[EdgeKey] = set()
    for f in graphs:
        for n in f.nodes:
            k = n.key
            label_kinds.setdefault(n.label, set()).add((k[0], k[1]))
            styles[k] = min(n.style_class, styles.get(k, n.style_class))
        edge_set |= edge_keys(f)
    for label, kinds in label_kinds.items():
        if len(kinds) > 1:
            raise KindConflict(label, kinds)
    return _build_canonical(styles, edge_set)


def canonicalize(f: FdnGraph) -> FdnGraph:
    """Deterministic form: ids assigned in sorted key order, edges sorted,
    sibling orders recomputed. Key-isomorphic graphs become equal values."""
    styles: dict[NodeKey, int] = {}
    for n in f.nodes:
        styles[n.key] = min(n.style_class, styles.get(n.key, n.style_class))
    return _build_canonical(styles, edge_keys(f))


@dataclass(frozen=True)
class DiffReport:
    common_nodes: frozenset[NodeKey]
    left_only_nodes: frozenset[NodeKey]
    right_only_nodes: frozenset[NodeKey]
    common_edges: frozenset[EdgeKey]
    left_only_edges: frozenset[EdgeKey]
    right_only_edges: frozenset[EdgeKey]

    @property
    def identical(self) -> bool:
        return not (
            self.left_only_nodes
            or self.right_only_nodes
            or self.left_only_edges
            or self.right_only_edges
        )


def diff(a: FdnGraph, b: FdnGraph) -> DiffReport:
    """Set comparison of two networks over node and edge keys."""
    an, bn = node_keys(a), node_keys(b)
    ae, be = edge_keys(a), edge_keys(b)
    return DiffReport(
        common_nodes=an & bn,
        left_only_nodes=an - bn,
        right_only_nodes=bn - an,
        common_edges=ae & be,
        left_only_edges=ae - be,
        right_only_edges=be - ae,
    )
