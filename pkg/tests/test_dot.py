"""DOT emission: shapes, styling, determinism, escaping, diff coloring."""

import random

import pytest

from fdnkit import (
    DotStyleOptions,
    FdnGraph,
    FdnKind,
    FdnNode,
    RankDir,
    WayKind,
    convert,
    diff,
    emit_dot,
    emit_dot_diff,
    emit_dot_workflow,
    make_workflow,
    merge,
    replace_styles,
)
from fdnkit.errors import InconsistentInput

from conftest import heat_exchanger_workflow
from oracles import dot_wellformed
from wfgen import permuted, rand_workflow


class TestEmitDot:
    def test_attribute_function_is_an_ellipse(self):
        f = FdnGraph((FdnNode(0, "obtain A", FdnKind.ATTRIBUTE_FUNCTION),))
        assert '"obtain A" [shape=ellipse];' in emit_dot(f)

    def test_specialization_way_is_a_gray_box(self):
        f = FdnGraph((FdnNode(0, "is-a: A", FdnKind.WAY, WayKind.SPECIALIZATION),))
        assert "shape=box, style=filled, fillcolor=lightgray" in emit_dot(f)

    def test_way_application_is_a_hexagon(self):
        g = make_workflow(attributes=["A", "B"], devices=["D"], flows=[("A", "D"), ("D", "B")])
        assert '"apply D" [shape=hexagon];' in emit_dot(convert(g))

    def test_empty_graph(self):
        assert emit_dot(FdnGraph()) == "digraph FDN {\n  rankdir=TB;\n}\n"

    def test_style_class_1_is_dashed(self):
        f = FdnGraph((FdnNode(0, "obtain A", FdnKind.ATTRIBUTE_FUNCTION, style_class=1),))
        out = emit_dot(f)
        assert "style=dashed" in out and "color=blue" in out

    def test_style_class_2_is_dotted(self):
        f = FdnGraph((FdnNode(0, "obtain A", FdnKind.ATTRIBUTE_FUNCTION, style_class=2),))
        assert "style=dotted" in emit_dot(f)

    def test_filled_and_dashed_combine(self):
        f = FdnGraph((FdnNode(0, "is-a: A", FdnKind.WAY, WayKind.SPECIALIZATION, 1),))
        assert 'style="filled,dashed"' in emit_dot(f)

    def test_rankdir_option(self):
        out = emit_dot(FdnGraph(), DotStyleOptions(rankdir=RankDir.LEFT_TO_RIGHT))
        assert "rankdir=LR;" in out

    def test_determinism_across_input_orders(self):
        rng = random.Random(41)
        for _ in range(30):
            g = rand_workflow(rng, 10, 5, 3, weird=True)
            assert emit_dot(convert(g)) == emit_dot(convert(permuted(g, rng)))

    def test_wellformed_on_random_graphs(self):
        rng = random.Random(43)
        for _ in range(40):
            out = emit_dot(convert(rand_workflow(rng, 10, 5, 3, weird=True)))
            assert dot_wellformed(out)

    def test_quotes_and_backslashes_are_escaped(self):
        f = FdnGraph((FdnNode(0, 'obtain "x" \\ y', FdnKind.ATTRIBUTE_FUNCTION),))
        out = emit_dot(f)
        assert '"obtain \\"x\\" \\\\ y"' in out
        assert dot_wellformed(out)

    def test_same_label_across_kinds_gets_prefixes(self):
        f = FdnGraph(
            (
                FdnNode(0, "x", FdnKind.ATTRIBUTE_FUNCTION),
                FdnNode(1, "x", FdnKind.WAY, WayKind.DECOMPOSITION),
            )
        )
        out = emit_dot(f)
        assert '"function::x"' in out and '"way::x"' in out


class TestEmitDotWorkflow:
    def test_isa_edge_is_labeled(self, fixtures_dir):
        from fdnkit import parse_cx

        g = parse_cx((fixtures_dir / "electronegativity.cx").read_bytes())
        assert 'label="is-a"' in emit_dot_workflow(g)

    def test_empty_graph(self):
        from fdnkit import WorkflowGraph

        assert emit_dot_workflow(WorkflowGraph()) == "digraph workflow {\n  rankdir=TB;\n}\n"

    def test_node_statement_count(self):
        g = make_workflow(attributes=["A"], devices=["D"])
        out = emit_dot_workflow(g)
        assert out.count("[shape=") == 2
        assert '"A" [shape=ellipse];' in out
        assert '"D" [shape=box];' in out

    def test_wellformed_on_fixture(self):
        assert dot_wellformed(emit_dot_workflow(heat_exchanger_workflow()))


class TestEmitDotDiff:
    def test_self_diff_all_common(self):
        f = convert(heat_exchanger_workflow())
        out = emit_dot_diff(diff(f, f), merge([f, f]))
        assert "crimson" not in out and "royalblue" not in out
        assert out.count("color=black") == len(f.nodes) + len(f.edges)
        assert dot_wellformed(out)

    def test_empty_vs_network_all_right_only(self):
        f = convert(heat_exchanger_workflow())
        out = emit_dot_diff(diff(FdnGraph(), f), merge([FdnGraph(), f]))
        assert out.count("color=royalblue") == len(f.nodes) + len(f.edges)

    def test_inconsistent_input(self):
        f = convert(heat_exchanger_workflow())
        g = convert(make_workflow(attributes=["Z"]))
        with pytest.raises(InconsistentInput):
            emit_dot_diff(diff(f, g), f)  # merged graph lacks the g-only keys

    def test_custom_colors(self):
        f = convert(heat_exchanger_workflow())
        opts = DotStyleOptions(diff_colors={"common": "gray", "left_only": "red", "right_only": "green"})
        out = emit_dot_diff(diff(f, f), f, opts)
        assert "color=gray" in out


def test_byte_identical_for_equal_canonical_graphs():
    g = heat_exchanger_workflow()
    s = replace_styles(g, 1)
    assert emit_dot(convert(g)) == emit_dot(convert(g))
    assert emit_dot(convert(s)) != emit_dot(convert(g))
