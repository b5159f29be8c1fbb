"""Graphviz DOT rendering for workflows, networks, and network diffs.

Shape conventions: attribute-functional nodes are ellipses, way
applications hexagons, decomposition ways open boxes, specialization ways
gray-filled boxes. Style classes translate to line styles (0 solid,
1 dashed, 2 dotted) so superposed chains stand apart. Output is fully
deterministic: canonical node order, sorted edges, quoted labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping

from .errors import InconsistentInput
from .fdn import DiffReport, FdnGraph, FdnKind, NodeKey, WayKind
from .workflow import EdgeKind, NodeKind, WorkflowGraph

__all__ = ["RankDir", "DotStyleOptions", "emit_dot", "emit_dot_workflow", "emit_dot_diff"]


class RankDir(str, Enum):
    TOP_TO_BOTTOM = "TB"
    LEFT_TO_RIGHT = "LR"


@dataclass(frozen=True)
class DotStyleOptions:
    rankdir: RankDir = RankDir.TOP_TO_BOTTOM
    style_class_styles: Mapping[int, str] = field(
        default_factory=lambda: {0: "solid", 1: "dashed", 2: "dotted"}
    )
    style_class_colors: Mapping[int, str] = field(default_factory=lambda: {1: "blue", 2: "blue"})
    diff_colors: Mapping[str, str] = field(
        default_factory=lambda: {
            "common": "black",
            "left_only": "crimson",
            "right_only": "royalblue",
        }
    )

    def line_style(self, style_class: int) -> str:
        return self.style_class_styles.get(style_class, "solid")

    def line_color(self, style_class: int) -> str | None:
        return self.style_class_colors.get(style_class)


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def _attrs(pairs: list[tuple[str, str]]) -> str:
    rendered = []
    for name, value in pairs:
        if not value.replace("_", "").replace(",", "").isalnum() or "," in value:
            value = _quote(value)
        rendered.append(f"{name}={value}")
    return "[" + ", ".join(rendered) + "]"


_FDN_RANK = {FdnKind.ATTRIBUTE_FUNCTION: 0, FdnKind.WAY: 1, FdnKind.WAY_APPLICATION: 2}
_KIND_TOKEN = {
    (FdnKind.ATTRIBUTE_FUNCTION, None): "function",
    (FdnKind.WAY, WayKind.DECOMPOSITION): "way",
    (FdnKind.WAY, WayKind.SPECIALIZATION): "specialization",
    (FdnKind.WAY_APPLICATION, None): "application",
}


def _fdn_identifiers(f: FdnGraph) -> dict[int, str]:
    """Node labels double as DOT identifiers; when one label is used by
    several kinds, a kind token disambiguates."""
    labels: dict[str, set[tuple]] = {}
    for n in f.nodes:
        labels.setdefault(n.label, set()).add((n.kind, n.way_kind))
    out = {}
    for n in f.nodes:
        if len(labels[n.label]) > 1:
            out[n.id] = f"{_KIND_TOKEN[(n.kind, n.way_kind)]}::{n.label}"
        else:
            out[n.id] = n.label
    return out


def _shape_attrs(n) -> list[tuple[str, str]]:
    if n.kind is FdnKind.ATTRIBUTE_FUNCTION:
        return [("shape", "ellipse")]
    if n.kind is FdnKind.WAY_APPLICATION:
        return [("shape", "hexagon")]
    if n.way_kind is WayKind.SPECIALIZATION:
        return [("shape", "box"), ("style", "filled"), ("fillcolor", "lightgray")]
    return [("shape", "box")]


def _merge_style(attrs: list[tuple[str, str]], style: str) -> list[tuple[str, str]]:
    """Fold a line style into any existing style attribute (filled boxes)."""
    if style == "solid":
        return attrs
    out = []
    merged = False
    for name, value in attrs:
        if name == "style":
            out.append((name, f"{value},{style}"))
            merged = True
        else:
            out.append((name, value))
    if not merged:
        out.append(("style", style))
    return out


def _header(name: str, opts: DotStyleOptions) -> list[str]:
    return [f"digraph {name} {{", f"  rankdir={opts.rankdir.value};"]


def emit_dot(f: FdnGraph, opts: DotStyleOptions | None = None) -> str:
    """Render a network; equal canonical graphs give byte-identical text."""
    opts = opts or DotStyleOptions()
    ident = _fdn_identifiers(f)
    lines = _header("FDN", opts)

    for n in sorted(f.nodes, key=lambda n: (_FDN_RANK[n.kind], n.key)):
        attrs = _shape_attrs(n)
        attrs = _merge_style(attrs, opts.line_style(n.style_class))
        color = opts.line_color(n.style_class) if n.style_class else None
        if color:
            attrs.append(("color", color))
        lines.append(f"  {_quote(ident[n.id])} {_attrs(attrs)};")

    by_id = f.node_map()
    rendered = []
    for e in f.edges:
        src, dst = by_id[e.src], by_id[e.dst]
        style_class = max(src.style_class, dst.style_class)
        attrs = []
        style = opts.line_style(style_class)
        if style != "solid":
            attrs.append(("style", style))
        color = opts.line_color(style_class) if style_class else None
        if color:
            attrs.append(("color", color))
        suffix = f" {_attrs(attrs)}" if attrs else ""
        rendered.append(
            (src.key, e.order, dst.key, f"  {_quote(ident[e.src])} -> {_quote(ident[e.dst])}{suffix};")
        )
    lines.extend(line for *_, line in sorted(rendered))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot_workflow(g: WorkflowGraph, opts: DotStyleOptions | None = None) -> str:
    """Render a workflow: ellipses for attributes, boxes for devices,
    is-a edges labeled."""
    opts = opts or DotStyleOptions()
    labels: dict[str, set] = {}
    for n in g.nodes:
        labels.setdefault(n.label, set()).add(n.kind)
    ident = {
        n.id: f"{n.kind.value if n.kind else 'node'}::{n.label}"
        if len(labels[n.label]) > 1
        else n.label
        for n in g.nodes
    }

    lines = _header("workflow", opts)
    order = {None: 0, NodeKind.ATTRIBUTE: 1, NodeKind.DEVICE: 2}
    for n in sorted(g.nodes, key=lambda n: (order[n.kind], n.label, n.id)):
        attrs = [("shape", "box" if n.kind is NodeKind.DEVICE else "ellipse")]
        attrs = _merge_style(attrs, opts.line_style(n.style_class))
        color = opts.line_color(n.style_class) if n.style_class else None
        if color:
            attrs.append(("color", color))
        lines.append(f"  {_quote(ident[n.id])} {_attrs(attrs)};")

    by_id = g.node_map()
    rendered = []
    for e in g.edges:
        src, dst = by_id[e.src], by_id[e.dst]
        attrs = []
        if e.kind is EdgeKind.ISA:
            attrs.append(("label", "is-a"))
        style_class = max(src.style_class, dst.style_class)
        style = opts.line_style(style_class)
        if style != "solid":
            attrs.append(("style", style))
        color = opts.line_color(style_class) if style_class else None
        if color:
            attrs.append(("color", color))
        suffix = f" {_attrs(attrs)}" if attrs else ""
        rendered.append(
            (e.kind.value, ident[e.src], ident[e.dst], f"  {_quote(ident[e.src])} -> {_quote(ident[e.dst])}{suffix};")
        )
    lines.extend(line for *_, line in sorted(rendered))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_dot_diff(
    report: DiffReport, merged: FdnGraph, opts: DotStyleOptions | None = None
) -> str:
    """Render the merged network with nodes/edges colored by whether they
    appear in both compared networks or only one side."""
    opts = opts or DotStyleOptions()
    node_class: dict[NodeKey, str] = {}
    for name, keys in (
        ("common", report.common_nodes),
        ("left_only", report.left_only_nodes),
        ("right_only", report.right_only_nodes),
    ):
        for key in keys:
            node_class[key] = name
    edge_class = {}
    for name, keys in (
        ("common", report.common_edges),
        ("left_only", report.left_only_edges),
        ("right_only", report.right_only_edges),
    ):
        for key in keys:
            edge_class[key] = name

    merged_keys = {n.key for n in merged.nodes}
    missing = set(node_class) - merged_keys
    if missing:
        raise InconsistentInput(f"diff keys missing from merged graph: {sorted(missing)[:3]}")

    ident = _fdn_identifiers(merged)
    lines = _header("diff", opts)
    for n in sorted(merged.nodes, key=lambda n: (_FDN_RANK[n.kind], n.key)):
        membership = node_class.get(n.key)
        if membership is None:
            raise InconsistentInput(f"merged node missing from diff report: {n.key}")
        attrs = _shape_attrs(n)
        attrs.append(("color", opts.diff_colors[membership]))
        if membership != "common":
            attrs = _merge_style(attrs, "dashed" if membership == "left_only" else "dotted")
        lines.append(f"  {_quote(ident[n.id])} {_attrs(attrs)};")

    by_id = merged.node_map()
    rendered = []
    for e in merged.edges:
        src, dst = by_id[e.src], by_id[e.dst]
        key = (src.key, dst.key, e.kind.value)
        membership = edge_class.get(key)
        if membership is None:
            raise InconsistentInput(f"merged edge missing from diff report: {key}")
        attrs = [("color", opts.diff_colors[membership])]
        if membership != "common":
            attrs.append(("style", "dashed" if membership == "left_only" else "dotted"))
        rendered.append(
            (src.key, e.order, dst.key, f"  {_quote(ident[e.src])} -> {_quote(ident[e.dst])} {_attrs(attrs)};")
        )
    lines.extend(line for *_, line in sorted(rendered))
    lines.append("}")
    return "\n".join(lines) + "\n"
