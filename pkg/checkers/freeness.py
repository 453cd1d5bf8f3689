import logging

import networkx as nx

from checkers.budget import CheckBudget
from checkers.circuits import circuits_without_entry
from checkers.prepared import PreparedTriple
from checkers.state_graph import StateGraph
from checkers.verdicts import Verdict, conjunction, proven, refuted, unknown

logger = logging.getLogger(__name__)


def _moved_vertex(prepared: PreparedTriple, property_name: str, g: int, x: str) -> Verdict:
    name = prepared.name(g)
    return refuted(
        property_name,
        {"kind": "moved-vertex", "g": name, "x": x},
        f"{name} moves {x}",
    )


def _moved_edge(property_name: str, states: StateGraph, g_name: str, x: str) -> Verdict:
    node, a = states.unfixed[0]
    route = states.route(node)
    return refuted(
        property_name,
        {
            "kind": "moved-edge",
            "g": g_name,
            "x": x,
            "path": states.labels(route),
            "twist": states.triple.group.name_of(node[1]),
            "edge": str(a),
        },
        f"{states.describe(node)} moves {a}",
    )


def fixes_cylinder_pointwise(
    prepared: PreparedTriple, g: int, x: str, budget: CheckBudget
) -> Verdict:
    """
    g fixes every infinite path of Z(x) iff every node reachable from
    (x, g) before the twist becomes 1 fixes all of its incoming edges.
    """
    triple = prepared.triple
    if triple.act_vertex(g, x) != x:
        return _moved_vertex(prepared, "pointwise", g, x)
    if g == triple.identity:
        return proven("pointwise", {"kind": "identity", "g": prepared.name(g), "x": x})
    states = StateGraph(prepared, x, g, budget)
    if states.unfixed:
        return _moved_edge("pointwise", states, prepared.name(g), x)
    if states.truncated:
        reason = f"state graph from {states.describe(states.start)} truncated"
        return unknown("pointwise", reason, budget)
    return proven(
        "pointwise",
        {
            "kind": "pointwise-fixed",
            "g": prepared.name(g),
            "x": x,
            "nodes": [states.node_as_dict(node) for node in states.nodes()],
        },
    )


def is_slack(prepared: PreparedTriple, g: int, x: str, budget: CheckBudget) -> Verdict:
    """
    Every infinite path of Z(x) has a strongly fixed prefix for g: no edge
    is moved before the twist reaches 1 and no cycle avoids twist 1.
    """
    triple = prepared.triple
    if triple.act_vertex(g, x) != x:
        return _moved_vertex(prepared, "slack", g, x)
    if g == triple.identity:
        return proven("slack", {"kind": "identity", "g": prepared.name(g), "x": x})
    states = StateGraph(prepared, x, g, budget)
    if states.unfixed:
        return _moved_edge("slack", states, prepared.name(g), x)
    pending = states.nonterminal()
    if not nx.is_directed_acyclic_graph(pending):
        cycle_edges = nx.find_cycle(pending)
        entry = cycle_edges[0][0]
        return refuted(
            "slack",
            {
                "kind": "twist-cycle",
                "g": prepared.name(g),
                "x": x,
                "prefix": states.labels(states.route(entry)),
                "cycle": [key for _, _, key in cycle_edges],
            },
            f"a cycle through {states.describe(entry)} never reaches twist 1",
        )
    if states.truncated:
        reason = f"state graph from {states.describe(states.start)} truncated"
        return unknown("slack", reason, budget)
    order = list(nx.lexicographical_topological_sort(pending, key=str))
    return proven(
        "slack",
        {
            "kind": "slack",
            "g": prepared.name(g),
            "x": x,
            "order": [states.node_as_dict(node) for node in order],
        },
    )


def pointwise_implies_slack(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    """
    For every g ≠ 1 and every x with g·x = x: if g fixes Z(x) pointwise then
    g is slack at x.
    """
    triple = prepared.triple
    group = triple.group
    undecided = []
    checked = []
    for g in group.elements_within(budget.word):
        if g == triple.identity:
            continue
        for x in prepared.vertices():
            if triple.act_vertex(g, x) != x:
                continue
            pointwise = fixes_cylinder_pointwise(prepared, g, x, budget)
            pair = {"g": prepared.name(g), "x": x, "pointwise": pointwise.certificate}
            if pointwise.is_refuted:
                checked.append(pair)
                continue
            slack = is_slack(prepared, g, x, budget)
            if pointwise.is_proven and slack.is_refuted:
                logger.info(f"{prepared.name(g)} fixes Z({x}) pointwise but is not slack")
                return refuted(
                    "pointwise-slack",
                    {"kind": "not-slack", "g": prepared.name(g), "x": x},
                    f"{prepared.name(g)} fixes Z({x}) pointwise but is not slack at {x}",
                    children=(pointwise, slack),
                )
            if not slack.is_proven:
                undecided.append((prepared.name(g), x))
                continue
            checked.append({**pair, "slack": slack.certificate})
    if not group.is_finite:
        return unknown(
            "pointwise-slack",
            f"no counterexample within {budget.word} word(s) of the integers",
            budget,
        )
    if undecided:
        return unknown("pointwise-slack", f"undecided at {undecided[0]}", budget)
    return proven("pointwise-slack", {"kind": "pointwise-slack", "pairs": checked})


def topologically_free(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    """
    Every G-circuit has an entry, and pointwise fixing implies slackness.
    """
    circuits = circuits_without_entry(prepared, budget)
    slackness = pointwise_implies_slack(prepared, budget)
    return conjunction("topfree", [circuits, slackness], budget)
