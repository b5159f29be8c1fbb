"""Workflow model: validation, kind inference, device substitution."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdnkit import (
    EdgeKind,
    NodeKind,
    WorkflowEdge,
    WorkflowGraph,
    WorkflowNode,
    infer_kinds,
    make_workflow,
    substitute_device,
    validate,
)
from fdnkit.errors import (
    InferenceError,
    InferenceFailure,
    InvalidWorkflow,
    LabelClash,
    UnboundBoundary,
    UnknownDevice,
)

from conftest import heat_exchanger_workflow
from wfgen import rand_workflow

A = NodeKind.ATTRIBUTE
D = NodeKind.DEVICE


class TestValidate:
    def test_empty_graph_is_ok(self):
        report = validate(WorkflowGraph())
        assert report.ok
        assert report.violations == ()

    def test_flow_between_attributes_is_flagged(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "A", A), WorkflowNode(1, "B", A)),
            (WorkflowEdge(0, 1, EdgeKind.FLOW),),
        )
        report = validate(g)
        assert report.codes() == ("FLOW_SAME_KIND",)

    def test_heat_exchanger_fixture_is_ok(self):
        g = heat_exchanger_workflow()
        assert len(g.attributes()) == 6
        assert len(g.devices()) == 3
        assert len(g.flow_edges()) == 8
        assert validate(g).ok

    def test_duplicate_attribute_label_yields_one_violation(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "X", A), WorkflowNode(1, "X", A), WorkflowNode(2, "Y", A))
        )
        report = validate(g)
        assert report.codes() == ("DUP_LABEL",)
        assert report.violations[0].ids == (0, 1)

    def test_same_label_on_different_kinds_is_fine(self):
        g = WorkflowGraph((WorkflowNode(0, "X", A), WorkflowNode(1, "X", D)))
        assert validate(g).ok

    def test_whitespace_only_label_differences_are_identified(self):
        n = WorkflowNode(0, "  warm   substance\t1 ", A)
        assert n.label == "warm substance 1"

    def test_dangling_self_loop_duplicate_and_empty(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "A", A), WorkflowNode(1, "d", D), WorkflowNode(2, " ", A)),
            (
                WorkflowEdge(0, 9, EdgeKind.FLOW),
                WorkflowEdge(0, 0, EdgeKind.FLOW),
                WorkflowEdge(0, 1, EdgeKind.FLOW),
                WorkflowEdge(0, 1, EdgeKind.FLOW),
            ),
        )
        codes = validate(g).codes()
        assert set(codes) == {"DANGLING_EDGE", "SELF_LOOP", "DUP_EDGE", "EMPTY_LABEL"}

    def test_isa_must_connect_attributes(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "A", A), WorkflowNode(1, "d", D)),
            (WorkflowEdge(0, 1, EdgeKind.ISA),),
        )
        assert validate(g).codes() == ("ISA_NOT_ATTRIBUTES",)

    def test_missing_kind_is_reported(self):
        g = WorkflowGraph((WorkflowNode(0, "A"),))
        assert validate(g).codes() == ("MISSING_KIND",)

    def test_validate_is_pure(self):
        g = heat_exchanger_workflow()
        assert validate(g) == validate(g)
        before = (g.nodes, g.edges)
        validate(g)
        assert (g.nodes, g.edges) == before


class TestInferKinds:
    def test_path_two_coloring(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "A"), WorkflowNode(1, "D"), WorkflowNode(2, "B")),
            (WorkflowEdge(0, 1, EdgeKind.FLOW), WorkflowEdge(1, 2, EdgeKind.FLOW)),
        )
        out = infer_kinds(g, {0: A})
        kinds = {n.label: n.kind for n in out.nodes}
        assert kinds == {"A": A, "D": D, "B": A}
        assert validate(out).ok

    def test_flow_triangle_is_an_odd_cycle(self):
        g = WorkflowGraph(
            tuple(WorkflowNode(i, f"n{i}") for i in range(3)),
            (
                WorkflowEdge(0, 1, EdgeKind.FLOW),
                WorkflowEdge(1, 2, EdgeKind.FLOW),
                WorkflowEdge(2, 0, EdgeKind.FLOW),
            ),
        )
        with pytest.raises(InferenceError) as exc:
            infer_kinds(g, {0: A})
        assert exc.value.failure is InferenceFailure.ODD_CYCLE

    def test_isa_only_nodes_default_to_attribute(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "child"), WorkflowNode(1, "parent")),
            (WorkflowEdge(0, 1, EdgeKind.ISA),),
        )
        out = infer_kinds(g)
        assert all(n.kind is A for n in out.nodes)

    def test_unseeded_flow_component_is_ambiguous(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "x"), WorkflowNode(1, "y")),
            (WorkflowEdge(0, 1, EdgeKind.FLOW),),
        )
        with pytest.raises(InferenceError) as exc:
            infer_kinds(g)
        assert exc.value.failure is InferenceFailure.AMBIGUOUS
        assert exc.value.node_ids == (0, 1)

    def test_seed_for_unknown_node_is_rejected(self):
        with pytest.raises(ValueError):
            infer_kinds(WorkflowGraph(), {7: A})

    def test_isa_endpoint_seeded_as_device_conflicts(self):
        g = WorkflowGraph(
            (WorkflowNode(0, "child"), WorkflowNode(1, "parent")),
            (WorkflowEdge(0, 1, EdgeKind.ISA),),
        )
        with pytest.raises(InferenceError):
            infer_kinds(g, {0: D})

    def test_inference_recovers_stripped_kinds(self):
        # Strip every kind, seed one node per flow component, infer back.
        rng = random.Random(7)
        for _ in range(50):
            g = rand_workflow(rng, max_attrs=12, max_devices=6, max_isa=3)
            parent = {n.id: n.id for n in g.nodes}

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for e in g.flow_edges():
                parent[find(e.src)] = find(e.dst)
            seeds = {}
            kinds = {n.id: n.kind for n in g.nodes}
            for e in g.flow_edges():
                root = find(e.src)
                if root not in seeds:
                    seeds[root] = kinds[root]
            stripped = tuple(
                WorkflowNode(n.id, n.label, None, n.style_class) for n in g.nodes
            )
            out = infer_kinds(WorkflowGraph(stripped, g.edges), seeds)
            expected = {
                n.id: n.kind if find(n.id) in seeds or n.kind is A else A
                for n in g.nodes
            }
            assert {n.id: n.kind for n in out.nodes} == expected
            assert validate(out).ok


class TestSubstituteDevice:
    def _sub(self):
        return make_workflow(
            attributes=["contacted substances", "wall-heated substances", "heat exchanged substances"],
            devices=["conduct through wall", "equilibrate"],
            flows=[
                ("contacted substances", "conduct through wall"),
                ("conduct through wall", "wall-heated substances"),
                ("wall-heated substances", "equilibrate"),
                ("equilibrate", "heat exchanged substances"),
            ],
        )

    def test_white_boxing_count_bookkeeping(self):
        g = heat_exchanger_workflow()
        out = substitute_device(
            g,
            "transfer heat",
            self._sub(),
            {
                "contacted substances": "contacted substances",
                "heat exchanged substances": "heat exchanged substances",
            },
        )
        assert validate(out).ok
        assert len(out.devices()) == 3 - 1 + 2 == 4
        assert len(out.attributes()) == 6 + 1 == 7
        assert "transfer heat" not in {n.label for n in out.devices()}

    def test_identity_substitution_is_isomorphic(self):
        g = heat_exchanger_workflow()
        sub = make_workflow(
            attributes=["in", "out"],
            devices=["transfer heat"],
            flows=[("in", "transfer heat"), ("transfer heat", "out")],
        )
        out = substitute_device(
            g, "transfer heat", sub, {"contacted substances": "in", "heat exchanged substances": "out"}
        )
        def keys(w):
            by_id = w.node_map()
            nodes = {(n.kind, n.label) for n in w.nodes}
            edges = {
                ((by_id[e.src].kind, by_id[e.src].label), (by_id[e.dst].kind, by_id[e.dst].label), e.kind)
                for e in w.edges
            }
            return nodes, edges
        assert keys(out) == keys(g)

    def test_unknown_device(self):
        with pytest.raises(UnknownDevice):
            substitute_device(heat_exchanger_workflow(), "no such device", self._sub(), {})

    def test_unbound_boundary(self):
        with pytest.raises(UnboundBoundary):
            substitute_device(
                heat_exchanger_workflow(),
                "transfer heat",
                self._sub(),
                {"contacted substances": "contacted substances"},
            )

    def test_label_clash(self):
        sub = make_workflow(
            attributes=["in", "warm substance 1", "out"],
            devices=["inner"],
            flows=[("in", "inner"), ("inner", "out"), ("warm substance 1", "inner")],
        )
        with pytest.raises(LabelClash):
            substitute_device(
                heat_exchanger_workflow(),
                "transfer heat",
                sub,
                {"contacted substances": "in", "heat exchanged substances": "out"},
            )

    def test_invalid_sub_is_rejected(self):
        bad = WorkflowGraph(
            (WorkflowNode(0, "in", A), WorkflowNode(1, "in", A)),
        )
        with pytest.raises(InvalidWorkflow):
            substitute_device(heat_exchanger_workflow(), "transfer heat", bad, {})

    def test_labels_of_g_preserved_except_device(self):
        rng = random.Random(3)
        g = heat_exchanger_workflow()
        out = substitute_device(
            g,
            "contact",
            make_workflow(
                attributes=["warm substance 1", "cold substance 2", "contacted substances"],
                devices=["press together"],
                flows=[
                    ("warm substance 1", "press together"),
                    ("cold substance 2", "press together"),
                    ("press together", "contacted substances"),
                ],
            ),
            {label: label for label in ["warm substance 1", "cold substance 2", "contacted substances"]},
        )
        before = {(n.kind, n.label) for n in g.nodes} - {(D, "contact")}
        after = {(n.kind, n.label) for n in out.nodes}
        assert before <= after


@given(st.integers(min_value=0, max_value=2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_generated_workflows_always_validate(seed):
    g = rand_workflow(random.Random(seed), max_attrs=16, max_devices=8, max_isa=4)
    assert validate(g).ok
