"""Native line-oriented workflow format, made for hand-authored fixtures.

Grammar (one statement per line, ``#`` starts a comment):

    attribute <label>
    device <label>
    flow <src label> -> <dst label>
    isa <child label> -> <parent label>
    style <label> <n>

Labels may contain spaces and must be declared before use; because edges
reference nodes by bare label, labels must be unique across both kinds.
A normalized file lists node declarations, then flow lines, then isa
lines, then non-zero style lines; emit produces exactly that shape, so
emit(parse(file)) is byte-identical for normalized files.
"""

from __future__ import annotations

from .errors import NativeSyntaxError, UnknownLabel
from .workflow import (
    EdgeKind,
    NodeKind,
    WorkflowEdge,
    WorkflowGraph,
    WorkflowNode,
    normalize_label,
)

__all__ = ["parse_native", "emit_native"]

_ARROW = " -> "


def parse_native(data: bytes | str) -> WorkflowGraph:
    """Parse the native format; grammar errors carry their line number."""
    if isinstance(data, bytes):
        text = data.decode("utf-8")
    else:
        text = data

    ids: dict[str, int] = {}
    kinds: dict[str, NodeKind] = {}
    styles: dict[str, int] = {}
    order: list[str] = []
    edges: list[WorkflowEdge] = []

    def resolve(label: str, lineno: int) -> int:
        label = normalize_label(label)
        if label not in ids:
            raise UnknownLabel(lineno, label)
        return ids[label]

    def split_arrow(rest: str, lineno: int) -> tuple[str, str]:
        if _ARROW not in rest:
            raise NativeSyntaxError(lineno, f"expected '<src> -> <dst>', got {rest!r}")
        left, right = rest.split(_ARROW, 1)
        left, right = normalize_label(left), normalize_label(right)
        if not left or not right:
            raise NativeSyntaxError(lineno, "edge endpoints must be non-empty labels")
        return left, right

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        directive, _, rest = line.partition(" ")
        rest = rest.strip()

        if directive in ("attribute", "device"):
            label = normalize_label(rest)
            if not label:
                raise NativeSyntaxError(lineno, f"{directive} requires a label")
            if label in ids:
                raise NativeSyntaxError(lineno, f"label {label!r} already declared")
            ids[label] = len(order)
            kinds[label] = NodeKind.ATTRIBUTE if directive == "attribute" else NodeKind.DEVICE
            order.append(label)
        elif directive == "flow":
            src, dst = split_arrow(rest, lineno)
            if src == dst:
                raise NativeSyntaxError(lineno, f"flow from {src!r} to itself")
            edges.append(WorkflowEdge(resolve(src, lineno), resolve(dst, lineno), EdgeKind.FLOW))
        elif directive == "isa":
            child, parent = split_arrow(rest, lineno)
            if child == parent:
                raise NativeSyntaxError(lineno, f"{child!r} cannot specialize itself")
            for endpoint in (child, parent):
                cid = resolve(endpoint, lineno)
                if kinds[order[cid]] is not NodeKind.ATTRIBUTE:
                    raise NativeSyntaxError(
                        lineno, f"isa endpoint {endpoint!r} is a device, not an attribute"
                    )
            edges.append(WorkflowEdge(resolve(child, lineno), resolve(parent, lineno), EdgeKind.ISA))
        elif directive == "style":
            parts = rest.rsplit(" ", 1)
            if len(parts) != 2:
                raise NativeSyntaxError(lineno, "expected 'style <label> <n>'")
            label, number = normalize_label(parts[0]), parts[1]
            if not number.isdigit():
                raise NativeSyntaxError(lineno, f"style class must be a non-negative integer, got {number!r}")
            styles[order[resolve(label, lineno)]] = int(number)
        else:
            raise NativeSyntaxError(lineno, f"unknown directive {directive!r}")

    nodes = tuple(
        WorkflowNode(i, label, kinds[label], styles.get(label, 0))
        for i, label in enumerate(order)
    )
    return WorkflowGraph(nodes, tuple(edges))


def emit_native(g: WorkflowGraph) -> bytes:
    """Serialize a workflow to the normalized native shape."""
    labels = [n.label for n in g.nodes]
    if len(set(labels)) != len(labels):
        raise ValueError("native format requires labels unique across kinds")
    by_id = g.node_map()

    lines: list[str] = []
    for n in g.nodes:
        if n.kind is None:
            raise ValueError(f"node {n.label!r} has no kind; infer kinds before emitting")
        lines.append(f"{n.kind.value} {n.label}")
    for e in g.flow_edges():
        lines.append(f"flow {by_id[e.src].label} -> {by_id[e.dst].label}")
    for e in g.isa_edges():
        lines.append(f"isa {by_id[e.src].label} -> {by_id[e.dst].label}")
    for n in g.nodes:
        if n.style_class:
            lines.append(f"style {n.label} {n.style_class}")
    return ("\n".join(lines) + "\n").encode("utf-8")
