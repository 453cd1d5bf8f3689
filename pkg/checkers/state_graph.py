import logging
from collections import deque
from typing import Optional

import networkx as nx

from checkers.budget import CheckBudget
from checkers.prepared import PreparedTriple
from graphs.paths import EdgeRef

logger = logging.getLogger(__name__)

Node = tuple[str, int]


class StateGraph:
    """
    Pairs (v, h) reachable from (x, g) by the arrows

        (v, h) --a--> (s(a), φ(h, a))    for a in r^-1(v) with h·a = a

    A boundary vertex is replaced by its fold image. Nodes with twist 1 are
    terminal and not expanded. With ``fixed_only`` off every edge is
    followed and the fixing constraint is only recorded.

    For the integers, nodes whose twist exceeds the word budget are left
    unexpanded and the graph is marked ``truncated``.
    """

    def __init__(
        self,
        prepared: PreparedTriple,
        x: str,
        g: int,
        budget: CheckBudget,
        *,
        fixed_only: bool = True,
    ):
        self.prepared = prepared
        self.triple = prepared.triple
        self.identity = self.triple.identity
        self.start: Node = (x, g)
        self.budget = budget
        self.fixed_only = fixed_only
        self.graph = nx.MultiDiGraph()
        self.unfixed: list[tuple[Node, EdgeRef]] = []
        self.truncated = False
        self._explore()

    def is_terminal(self, node: Node) -> bool:
        return node[1] == self.identity

    def _out_of_budget(self, h: int) -> bool:
        return not self.triple.group.is_finite and abs(h) > self.budget.word

    def _explore(self):
        triple = self.triple
        graph = triple.graph
        self.graph.add_node(self.start)
        queue = deque([self.start])
        while queue:
            node = queue.popleft()
            v, h = node
            if self.is_terminal(node):
                continue
            if self._out_of_budget(h):
                self.truncated = True
                continue
            for a in graph.incoming_finite(v):
                if triple.act_edge(h, a) != a:
                    self.unfixed.append((node, a))
                    if self.fixed_only:
                        continue
                target = (self.prepared.successor(graph.source_of(a)), triple.cocycle_edge(h, a))
                if target not in self.graph:
                    if self.graph.number_of_nodes() >= self.budget.states:
                        self.truncated = True
                        continue
                    self.graph.add_node(target)
                    queue.append(target)
                self.graph.add_edge(node, target, key=str(a))
        logger.debug(
            f"State graph from {self.describe(self.start)}: {self.graph.number_of_nodes()} "
            f"node(s), {len(self.unfixed)} unfixed edge(s), truncated={self.truncated}"
        )

    # Queries

    def nodes(self) -> list[Node]:
        return sorted(self.graph.nodes, key=self.sort_key)

    def terminals(self) -> list[Node]:
        return [node for node in self.nodes() if self.is_terminal(node)]

    def nonterminal(self) -> nx.MultiDiGraph:
        keep = [node for node in self.graph.nodes if not self.is_terminal(node)]
        return self.graph.subgraph(keep)

    def successors(self, node: Node) -> list[tuple[Node, str]]:
        """
        Outgoing arrows of ``node`` as (target, edge id), in edge id order.
        """
        arrows = [(target, key) for _, target, key in self.graph.out_edges(node, keys=True)]
        return sorted(arrows, key=lambda arrow: arrow[1])

    def labels(self, nodes: list[Node]) -> list[str]:
        """
        Edge ids along a node sequence, choosing the least edge at each step.
        """
        return [min(self.graph[u][w]) for u, w in zip(nodes, nodes[1:])]

    def route(self, target: Node, through=None) -> Optional[list[Node]]:
        graph = self.graph if through is None else self.graph.subgraph(through)
        try:
            return nx.shortest_path(graph, self.start, target)
        except (nx.NetworkXNoPath, nx.NodeNotFound):
            return None

    def describe(self, node: Node) -> str:
        return f"({node[0]}, {self.triple.group.name_of(node[1])})"

    def node_as_dict(self, node: Node) -> dict:
        return {"vertex": node[0], "twist": self.triple.group.name_of(node[1])}

    def sort_key(self, node: Node):
        return (node[0], node[1])
