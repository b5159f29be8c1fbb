"""Network execution: cycle checks, achievability, schedules, round trips.

A function is achieved when it is an axiom or at least one of its ways is
satisfied; a way is satisfied when all of its required attribute-functional
children are achieved. Way applications fire only after that trigger
holds, which is what turns a network back into a runnable sequence.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import AmbiguousChoice, CyclicNetwork, InvalidWorkflow, NotLinear, Unachievable
from .fdn import (
    FdnEdgeKind,
    FdnGraph,
    FdnKind,
    NodeKey,
    WayKind,
    af_key,
    convert,
)
from .workflow import WorkflowGraph, validate

__all__ = [
    "CycleWitness",
    "AchievementReport",
    "Chooser",
    "Schedule",
    "Mismatch",
    "check_acyclic",
    "default_axioms",
    "achievable",
    "schedule",
    "roundtrip_check",
]


@dataclass(frozen=True)
class CycleWitness:
    """A directed cycle, listed once around without repeating the start."""

    nodes: tuple[NodeKey, ...]

    def __len__(self) -> int:
        return len(self.nodes)


def check_acyclic(f: FdnGraph) -> CycleWitness | None:
    """Return a shortest-found directed cycle, or None for a DAG."""
    succ: dict[int, list[int]] = {n.id: [] for n in f.nodes}
    for e in f.edges:
        succ[e.src].append(e.dst)

    by_id = f.node_map()
    best: list[int] | None = None
    for start in succ:
        # BFS back to start; parent links reconstruct the cycle.
        parent: dict[int, int] = {}
        queue = deque([start])
        seen = {start}
        found = False
        while queue and not found:
            nid = queue.popleft()
            for nxt in succ[nid]:
                if nxt == start:
                    path = [nid]
                    while path[-1] != start:
                        path.append(parent[path[-1]])
                    path.reverse()
                    if best is None or len(path) < len(best):
                        best = path
                    found = True
                    break
                if nxt not in seen:
                    seen.add(nxt)
                    parent[nxt] = nid
                    queue.append(nxt)
    if best is None:
        return None
    return CycleWitness(tuple(by_id[i].key for i in best))


@dataclass(frozen=True)
class AchievementReport:
    achievable: frozenset[NodeKey]
    unachievable: frozenset[NodeKey]
    axioms: frozenset[NodeKey]


class _Ways:
    """Edge indexes used by achievability and scheduling."""

    def __init__(self, f: FdnGraph):
        by_id = f.node_map()
        self.functions = sorted(
            n.key for n in f.nodes if n.kind is FdnKind.ATTRIBUTE_FUNCTION
        )
        self.way_kind: dict[NodeKey, WayKind] = {
            n.key: n.way_kind for n in f.nodes if n.kind is FdnKind.WAY
        }
        self.children: dict[NodeKey, list[NodeKey]] = {k: [] for k in self.way_kind}
        self.application: dict[NodeKey, NodeKey] = {}
        self.achieves: dict[NodeKey, list[NodeKey]] = {k: [] for k in self.way_kind}
        self.ways_of: dict[NodeKey, list[NodeKey]] = {k: [] for k in self.functions}
        for e in f.edges:
            src, dst = by_id[e.src], by_id[e.dst]
            if e.kind is FdnEdgeKind.ACHIEVED_BY:
                self.ways_of[src.key].append(dst.key)
                self.achieves[dst.key].append(src.key)
            elif dst.kind is FdnKind.ATTRIBUTE_FUNCTION:
                self.children[src.key].append(dst.key)
            else:
                self.application[src.key] = dst.key
        for lst in self.ways_of.values():
            lst.sort()
        for lst in self.children.values():
            lst.sort()


def _as_af_key(value: NodeKey | str) -> NodeKey:
    if isinstance(value, str):
        return af_key(value)
    return value


def default_axioms(f: FdnGraph) -> frozenset[NodeKey]:
    """Attribute functions with no achieving way: the workflow sources."""
    ways = _Ways(f)
    return frozenset(k for k in ways.functions if not ways.ways_of[k])


def achievable(
    f: FdnGraph, axioms: Iterable[NodeKey | str] | None = None
) -> AchievementReport:
    """Least fixed point of the at-least-one-way achievement rule."""
    witness = check_acyclic(f)
    if witness is not None:
        raise CyclicNetwork(witness)

    ways = _Ways(f)
    if axioms is None:
        axiom_keys = frozenset(k for k in ways.functions if not ways.ways_of[k])
    else:
        axiom_keys = frozenset(_as_af_key(a) for a in axioms)
        unknown = axiom_keys - set(ways.functions)
        if unknown:
            raise ValueError(f"axioms are not attribute functions of the network: {sorted(unknown)}")

    missing: dict[NodeKey, int] = {
        w: len(ways.children[w]) for w in ways.way_kind
    }
    achieved: set[NodeKey] = set(axiom_keys)
    queue = deque(achieved)
    # Ways with no functional children are satisfiable immediately.
    for w, count in missing.items():
        if count == 0:
            for fn in ways.achieves[w]:
                if fn not in achieved:
                    achieved.add(fn)
                    queue.append(fn)

    needs: dict[NodeKey, list[NodeKey]] = {}
    for w, children in ways.children.items():
        for c in children:
            needs.setdefault(c, []).append(w)

    while queue:
        fn = queue.popleft()
        for w in needs.get(fn, ()):
            missing[w] -= 1
            if missing[w] == 0:
                for parent in ways.achieves[w]:
                    if parent not in achieved:
                        achieved.add(parent)
                        queue.append(parent)

    all_functions = frozenset(ways.functions)
    return AchievementReport(
        achievable=frozenset(achieved),
        unachievable=all_functions - achieved,
        axioms=axiom_keys,
    )


class Chooser(str, Enum):
    FIRST_BY_LABEL = "first-by-label"
    ERROR_IF_AMBIGUOUS = "error-if-ambiguous"


@dataclass(frozen=True)
class Schedule:
    firings: tuple[NodeKey, ...]
    choices: Mapping[NodeKey, NodeKey] = field(default_factory=dict)


def schedule(
    f: FdnGraph,
    goal: NodeKey | str,
    axioms: Iterable[NodeKey | str] | None = None,
    chooser: Chooser = Chooser.FIRST_BY_LABEL,
) -> Schedule:
    """Extract a firing order of way applications that realizes the goal.

    Sub-goals of a way are satisfied in label order and its application
    fires last; shared sub-goals fire once. FIRST_BY_LABEL resolves
    competing achievable ways by smallest way label, ERROR_IF_AMBIGUOUS
    refuses to pick.
    """
    goal_key = _as_af_key(goal)
    report = achievable(f, axioms)
    ways = _Ways(f)
    if goal_key not in set(ways.functions):
        raise Unachievable(goal_key)
    if goal_key not in report.achievable:
        raise Unachievable(goal_key)

    satisfied = {
        w
        for w, children in ways.children.items()
        if all(c in report.achievable for c in children)
    }

    choices: dict[NodeKey, NodeKey] = {}
    firings: list[NodeKey] = []
    done: set[NodeKey] = set(report.axioms)
    fired_ways: set[NodeKey] = set()

    def visit(fn: NodeKey) -> None:
        if fn in done:
            return
        done.add(fn)
        candidates = sorted(w for w in ways.ways_of[fn] if w in satisfied)
        if chooser is Chooser.ERROR_IF_AMBIGUOUS and len(candidates) > 1:
            raise AmbiguousChoice(fn, candidates)
        way = candidates[0]
        choices[fn] = way
        for child in ways.children[way]:
            visit(child)
        if way not in fired_ways:
            fired_ways.add(way)
            if ways.way_kind[way] is WayKind.DECOMPOSITION:
                firings.append(ways.application[way])

    visit(goal_key)
    return Schedule(tuple(firings), choices)


@dataclass(frozen=True)
class Mismatch:
    expected: tuple[NodeKey, ...]
    actual: tuple[NodeKey, ...]


def roundtrip_check(g: WorkflowGraph) -> Mismatch | None:
    """Execute the converted network of a linear workflow and compare the
    firing order against the source device order; None means they agree."""
    report = validate(g)
    if not report.ok:
        raise InvalidWorkflow(report)
    if g.isa_edges():
        raise NotLinear("workflow has is-a edges")

    node_map = g.node_map()
    out_flows: dict[int, list[int]] = {n.id: [] for n in g.nodes}
    for e in g.flow_edges():
        out_flows[e.src].append(e.dst)

    devices = g.devices()
    if not devices:
        return None
    for d in devices:
        if len(out_flows[d.id]) != 1:
            raise NotLinear(f"device {d.label!r} has {len(out_flows[d.id])} outputs")
    for a in g.attributes():
        if len(out_flows[a.id]) > 1:
            raise NotLinear(f"attribute {a.label!r} feeds {len(out_flows[a.id])} devices")

    # Successor device via the single output attribute.
    indegree = {d.id: 0 for d in devices}
    succ: dict[int, list[int]] = {d.id: [] for d in devices}
    for d in devices:
        out_attr = out_flows[d.id][0]
        for consumer in out_flows[out_attr]:
            succ[d.id].append(consumer)
            indegree[consumer] += 1

    order: list[int] = []
    remaining = dict(indegree)
    while remaining:
        ready = [i for i, deg in remaining.items() if deg == 0]
        if len(ready) != 1:
            raise NotLinear(f"device order is not unique ({len(ready)} candidates)")
        nid = ready.pop()
        order.append(nid)
        del remaining[nid]
        for nxt in succ[nid]:
            remaining[nxt] -= 1

    last_out = node_map[out_flows[order[-1]][0]]
    network = convert(g)
    plan = schedule(network, af_key("obtain " + last_out.label))
    expected = tuple(
        (FdnKind.WAY_APPLICATION.value, "", "apply " + node_map[i].label) for i in order
    )
    if plan.firings == expected:
        return None
    return Mismatch(expected, plan.firings)
