"""
Independent re-checking of certificates.

The verifier replays every certificate with graph and semigroup operations
only: walks are followed edge by edge, fixed points of circuit iterators
are tested with the partial map of the iterator, strongly fixed paths with
the unitary at their range. None of the checker search code is reused.
"""

import logging
from collections import Counter, deque
from typing import Optional

from checkers.exceptions import CertificateError
from checkers.hausdorff import MAX_LISTED_PATHS
from checkers.prepared import PreparedTriple
from checkers.verdicts import Verdict
from desingularization.tails import tail_vertex
from graphs.exceptions import PathMismatch, UnknownEdge
from graphs.paths import EdgeRef, LassoPath, Path
from semigroup.elements import InverseSemigroup, SElement
from symmetry.exceptions import UnknownGroupElement

logger = logging.getLogger(__name__)

State = tuple[str, int]


class CertificateVerifier:
    def __init__(self, prepared: Optional[PreparedTriple]):
        self.prepared = prepared
        self.property_name = None
        if prepared is not None:
            self.triple = prepared.triple
            self.graph = prepared.graph
            self.group = prepared.group
            self.semigroup = InverseSemigroup(self.triple)

    def fail(self, detail: str):
        logger.error(f"Certificate for {self.property_name} rejected: {detail}")
        raise CertificateError(detail, property_name=self.property_name)

    def require(self, condition: bool, detail: str):
        if not condition:
            self.fail(detail)

    # Entry point

    def verify(self, verdict: Verdict):
        for child in verdict.children:
            self.verify(child)
        if verdict.is_unknown:
            return
        self.property_name = verdict.property
        kind = verdict.kind
        if kind in ("relations", "relation-failures"):
            self.check_relations(verdict, verdict.certificate)
            return
        if self.prepared is None:
            self.fail(f"no triple to replay a {kind} certificate on")
        if kind == "conjunction":
            self.check_conjunction(verdict)
            return
        if kind == "not-slack":
            try:
                self.check_not_slack(verdict)
            except (UnknownGroupElement, KeyError) as e:
                self.fail(f"malformed not-slack certificate: {e}")
            return
        handler = getattr(self, "check_" + str(kind).replace("-", "_"), None)
        if handler is None:
            self.fail(f"unknown certificate kind {kind!r}")
        try:
            handler(verdict.certificate)
        except (PathMismatch, UnknownEdge, UnknownGroupElement, KeyError, ValueError) as e:
            self.fail(f"malformed {kind} certificate: {e}")

    # Helpers

    def element(self, name: str) -> int:
        return self.group.parse(name)

    def is_identity(self, h: int) -> bool:
        return h == self.group.identity

    def parse_path(self, x: str, text: str) -> Path:
        if text.startswith("@"):
            self.require(text[1:] == x, f"{text} is not rooted at {x}")
            return Path.empty(x)
        return self.graph.path(x, [EdgeRef.parse(token) for token in text.split(".")])

    def lasso(self, data: dict) -> LassoPath:
        return self.prepared.lasso(data)

    def elements(self) -> list[int]:
        if not self.group.is_finite:
            self.fail("an exhaustive certificate needs a finite group")
        return self.group.elements()

    def arrow(self, state: State, ref: EdgeRef) -> State:
        v, h = state
        self.require(self.triple.act_edge(h, ref) == ref, f"{ref} is moved at ({v}, {h})")
        return self.prepared.successor(self.graph.source_of(ref)), self.triple.cocycle_edge(h, ref)

    def step(self, state: State, label: str) -> State:
        ref = EdgeRef.parse(label)
        self.require(self.graph.range_of(ref) == state[0], f"{ref} does not end at {state[0]}")
        return self.arrow(state, ref)

    def replay(self, state: State, labels: list[str]) -> list[State]:
        """
        States visited along fixed edges; every state before the last one
        must have twist different from 1.
        """
        states = [state]
        for label in labels:
            self.require(
                not self.is_identity(states[-1][1]),
                f"walk continues past twist 1 at {states[-1][0]}",
            )
            states.append(self.step(states[-1], label))
        return states

    def fixed_arrows(self, state: State) -> list[State]:
        return [self.arrow(state, ref) for ref in self.graph.incoming_finite(state[0])]

    def state(self, data: dict) -> State:
        return data["vertex"], self.element(data["twist"])

    def strongly_fixed(self, g: int, path: Path) -> bool:
        isometry = self.semigroup.path_isometry(path)
        unitary = self.semigroup.unitary(g, path.range)
        return self.semigroup.multiply(unitary, isometry) == isometry

    def walk_end(self, start: str, labels: list[str]) -> str:
        return self.prepared.follow(start, labels)

    def descendants(self, v: str) -> set[str]:
        seen = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            following = [self.graph.source_of(ref) for ref in self.graph.incoming_finite(u)]
            if u in self.prepared.fold:
                following.append(self.prepared.fold[u])
            for w in following:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def forced_cycle_closes(self, v: str) -> bool:
        current, seen = v, set()
        while current not in seen:
            seen.add(current)
            incoming = self.graph.incoming_finite(current)
            if self.graph.is_boundary(current) or len(incoming) != 1:
                return False
            current = self.graph.source_of(incoming[0])
        return True

    def returns_to_orbit(self, w: str) -> bool:
        orbit = set(self.triple.orbit(w))
        frontier = [self.graph.source_of(ref) for ref in self.graph.incoming_finite(w)]
        seen = set()
        while frontier:
            u = frontier.pop()
            if u in orbit:
                return True
            if u in seen:
                continue
            seen.add(u)
            frontier.extend(self.graph.source_of(ref) for ref in self.graph.incoming_finite(u))
        return False

    def circuit_fixed_point(self, circuit: dict, omega: LassoPath) -> tuple[Path, int]:
        g = self.element(circuit["g"])
        gamma = self.graph.path(circuit["root"], [EdgeRef.parse(t) for t in circuit["gamma"]])
        self.require(len(gamma) >= 1, "empty circuit")
        self.require(
            self.triple.act_vertex(g, gamma.source) == gamma.range,
            f"r({gamma}) != {circuit['g']}·s({gamma})",
        )
        iterator = SElement(gamma, self.group.inverse(g), Path.empty(gamma.range), self.triple)
        self.require(
            self.semigroup.apply(iterator, omega) == omega,
            f"{omega} is not fixed by the iterator of ({circuit['g']}, {gamma})",
        )
        return gamma, g

    def entry_free(self, omega: LassoPath) -> bool:
        return all(
            len(self.graph.incoming_finite(omega.vertex_at(k))) == 1
            for k in range(omega.description_size)
        )

    # Conjunctions and relations

    def check_conjunction(self, verdict: Verdict):
        parts = verdict.certificate["parts"]
        self.require(
            parts == [child.property for child in verdict.children],
            "conjunction parts do not match its children",
        )
        if verdict.is_proven:
            self.require(
                all(child.is_proven for child in verdict.children), "a part is not proven"
            )
        else:
            self.require(any(child.is_refuted for child in verdict.children), "no refuted part")

    def check_relations(self, verdict: Verdict, certificate: dict):
        if verdict.is_proven:
            self.require(certificate.get("checked", 0) > 0, "no relation instance was checked")
        else:
            failures = certificate.get("failures", [])
            self.require(
                bool(failures) and not any(f["passed"] for f in failures),
                "a refutation needs failing instances",
            )

    # Trivial cases

    def check_identity(self, certificate: dict):
        self.require(self.is_identity(self.element(certificate["g"])), "g is not the identity")

    def check_moved_vertex(self, certificate: dict):
        g = self.element(certificate["g"])
        x = certificate["x"]
        self.require(self.triple.act_vertex(g, x) != x, f"{certificate['g']} fixes {x}")

    # Pointwise fixing and slackness

    def check_moved_edge(self, certificate: dict):
        start = (certificate["x"], self.element(certificate["g"]))
        states = self.replay(start, certificate["path"])
        v, h = states[-1]
        self.require(not self.is_identity(h), "the moved edge is reached at twist 1")
        self.require(h == self.element(certificate["twist"]), "twist does not match")
        ref = EdgeRef.parse(certificate["edge"])
        self.require(self.graph.range_of(ref) == v, f"{ref} does not end at {v}")
        self.require(self.triple.act_edge(h, ref) != ref, f"{ref} is fixed at ({v}, {h})")

    def check_twist_cycle(self, certificate: dict):
        start = (certificate["x"], self.element(certificate["g"]))
        entry = self.replay(start, certificate["prefix"])[-1]
        loop = self.replay(entry, certificate["cycle"])
        self.require(len(loop) > 1 and loop[-1] == entry, "the cycle does not close")
        self.require(
            not any(self.is_identity(h) for _, h in loop), "the cycle reaches twist 1"
        )

    def check_pointwise_fixed(self, certificate: dict):
        nodes = {self.state(data) for data in certificate["nodes"]}
        start = (certificate["x"], self.element(certificate["g"]))
        self.require(start in nodes, "the start state is not listed")
        for node in nodes:
            if self.is_identity(node[1]):
                continue
            for target in self.fixed_arrows(node):
                self.require(target in nodes, f"{target} is reachable but not listed")

    def check_slack(self, certificate: dict):
        order = [self.state(data) for data in certificate["order"]]
        position = {node: i for i, node in enumerate(order)}
        start = (certificate["x"], self.element(certificate["g"]))
        self.require(start in position, "the start state is not ordered")
        for node in order:
            for target in self.fixed_arrows(node):
                if self.is_identity(target[1]):
                    continue
                self.require(
                    position.get(target, -1) > position[node],
                    f"{target} does not come after {node}",
                )

    def check_pointwise_slack(self, certificate: dict):
        pairs = {(pair["g"], pair["x"]): pair for pair in certificate["pairs"]}
        for g in self.elements():
            if self.is_identity(g):
                continue
            for x in self.prepared.vertices():
                if self.triple.act_vertex(g, x) != x:
                    continue
                pair = pairs.get((self.group.name_of(g), x))
                self.require(pair is not None, f"pair ({self.group.name_of(g)}, {x}) missing")
                if "slack" in pair:
                    self.check_slack(pair["slack"])
                else:
                    self.require(pair["pointwise"]["kind"] == "moved-edge", "no slackness proof")
                    self.check_moved_edge(pair["pointwise"])

    def check_not_slack(self, verdict: Verdict):
        """
        A pair (g, x) with g ≠ 1 and g·x = x whose pointwise proof and
        slackness refutation are the two children, both about (g, x).
        """
        certificate = verdict.certificate
        self.require(verdict.is_refuted, "a not-slack certificate must refute")
        g = self.element(certificate["g"])
        x = certificate["x"]
        self.require(x in self.graph.vertices, f"{x} is not a vertex")
        self.require(not self.is_identity(g), "g is the identity")
        self.require(self.triple.act_vertex(g, x) == x, f"{certificate['g']} moves {x}")
        self.require(
            [child.property for child in verdict.children] == ["pointwise", "slack"],
            "children must be the pointwise proof and the slackness refutation",
        )
        pointwise, slack = verdict.children
        self.require(
            pointwise.is_proven and pointwise.kind == "pointwise-fixed",
            "pointwise fixing is not proven",
        )
        self.require(slack.is_refuted and slack.kind == "twist-cycle", "slackness is not refuted")
        for child in verdict.children:
            self.require(
                self.element(child.certificate["g"]) == g and child.certificate["x"] == x,
                f"the {child.property} child is about another pair",
            )

    # Strongly fixed paths

    def arrivals(self, g: int, x: str, steps: int) -> list[int]:
        """
        Number of minimal strongly fixed paths of each length up to ``steps``.
        """
        counts = Counter({(x, g): 1})
        result = [0]
        for _ in range(steps):
            following = Counter()
            for (v, h), n in counts.items():
                for ref in self.graph.incoming_finite(v):
                    if self.triple.act_edge(h, ref) != ref:
                        continue
                    target = (
                        self.prepared.successor(self.graph.source_of(ref)),
                        self.triple.cocycle_edge(h, ref),
                    )
                    following[target] += n
            result.append(sum(n for (_, h), n in following.items() if self.is_identity(h)))
            counts = Counter({s: n for s, n in following.items() if not self.is_identity(s[1])})
        return result

    def check_finite_strongly_fixed(self, certificate: dict):
        pairs = {(pair["g"], pair["x"]): pair for pair in certificate["pairs"]}
        states = len(self.graph.vertices) * len(self.elements())
        for g in self.elements():
            if self.is_identity(g):
                continue
            for x in self.prepared.vertices():
                pair = pairs.get((self.group.name_of(g), x))
                self.require(pair is not None, f"pair ({self.group.name_of(g)}, {x}) missing")
                if self.triple.act_vertex(g, x) != x:
                    self.require(pair["count"] == 0, f"{x} is moved but paths are listed")
                    continue
                for text in pair["paths"]:
                    path = self.parse_path(x, text)
                    self.require(self.strongly_fixed(g, path), f"{text} is not strongly fixed")
                    for n in range(len(path)):
                        self.require(
                            not self.strongly_fixed(g, path.prefix(n)),
                            f"{text} is not minimal",
                        )
                arrivals = self.arrivals(g, x, 2 * states + 1)
                self.require(
                    not any(arrivals[states + 1 :]), f"paths of unbounded length at {x}"
                )
                self.require(sum(arrivals) == pair["count"], f"wrong count at {x}")
                self.require(
                    len(pair["paths"]) == min(pair["count"], MAX_LISTED_PATHS),
                    f"listing at {x} is incomplete",
                )

    def check_infinite_strongly_fixed(self, certificate: dict):
        start = self.state(certificate["start"])
        entry = self.replay(start, certificate["prefix"])[-1]
        loop = self.replay(entry, certificate["cycle"])
        self.require(len(loop) > 1 and loop[-1] == entry, "the cycle does not close")
        self.require(not self.is_identity(entry[1]), "the cycle sits at twist 1")
        end = self.replay(entry, certificate["exit"])[-1]
        self.require(self.is_identity(end[1]), "the exit does not reach twist 1")

    # Weak transitivity

    def visit_class(self, data: dict) -> set:
        vertices = set(data["vertices"])
        if data["cycle"]:
            start = min(vertices)
            cycle = self.graph.path(start, [EdgeRef.parse(t) for t in data["cycle"]])
            self.require(
                cycle.source == cycle.range and set(cycle.vertices) == vertices,
                f"{data['label']} is not a cycle on its vertices",
            )
        else:
            copies = {copy.vertex for _, copy in self.prepared.desingularized.copies()}
            self.require(
                any(
                    vertices == {tail_vertex(y, i) for i in range(1, self.prepared.depth)}
                    for y in copies
                ),
                f"{data['label']} is not a tail",
            )
        return vertices

    def check_transitivity_witnesses(self, certificate: dict):
        classes = {data["label"]: self.visit_class(data) for data in certificate["classes"]}
        for cycle in self.graph.simple_cycles():
            self.require(
                any(vertices <= set(cycle.vertices) for vertices in classes.values()),
                f"no class inside the cycle {cycle}",
            )
        for _, copy in self.prepared.desingularized.copies():
            label = f"tail of {copy.vertex}"
            self.require(label in classes, f"no class for the {label}")
        found = {(w["vertex"], w["class"]): w for w in certificate["witnesses"]}
        for y in self.prepared.vertices():
            for label, vertices in classes.items():
                witness = found.get((y, label))
                self.require(witness is not None, f"no witness for {y} and {label}")
                self.require(self.walk_end(y, witness["path"]) == witness["via"], "bad walk")
                image = self.triple.act_vertex(self.element(witness["g"]), witness["via"])
                self.require(image in vertices, f"{image} is not in {label}")

    def check_disjoint_orbit(self, certificate: dict):
        vertices = self.visit_class(certificate["class"])
        for w in self.descendants(certificate["vertex"]):
            self.require(
                not set(self.triple.orbit(w)) & vertices,
                f"the orbit of {w} meets {certificate['class']['label']}",
            )

    # Circuits

    def check_forced_lassos(self, certificate: dict):
        listed = {item["vertex"]: self.lasso(item["lasso"]) for item in certificate["checked"]}
        for v in self.prepared.vertices():
            if self.forced_cycle_closes(v):
                self.require(v in listed, f"the forced lasso at {v} is not listed")
        for v, omega in listed.items():
            self.require(omega.range == v and self.entry_free(omega), f"{omega} is not forced")
            for n in range(1, omega.description_size + 1):
                gamma = omega.prefix_path(n)
                for g in self.elements():
                    if self.triple.act_vertex(g, gamma.source) != v:
                        continue
                    iterator = SElement(gamma, self.group.inverse(g), Path.empty(v), self.triple)
                    self.require(
                        self.semigroup.apply(iterator, omega) != omega,
                        f"({self.group.name_of(g)}, {gamma}) is a circuit without entry",
                    )

    def check_circuit_without_entry(self, certificate: dict):
        omega = self.lasso(certificate["lasso"])
        gamma, _ = self.circuit_fixed_point(certificate["circuit"], omega)
        self.require(omega.has_prefix(gamma), f"{omega} does not start with {gamma}")
        self.require(self.entry_free(omega), f"{omega} has an entry")

    check_no_entry = check_circuit_without_entry

    def check_entry(self, certificate: dict):
        omega = self.lasso(certificate["lasso"])
        self.circuit_fixed_point(certificate["circuit"], omega)
        k = certificate["position"]
        tau = EdgeRef.parse(certificate["edge"])
        self.require(
            self.graph.range_of(tau) == omega.vertex_at(k) and tau != omega.edge_at(k),
            f"{tau} is not an entry at position {k}",
        )

    # Local contractivity

    def check_contracting_anchors(self, certificate: dict):
        found = {w["vertex"]: w for w in certificate["witnesses"]}
        for x in self.prepared.vertices():
            witness = found.get(x)
            self.require(witness is not None, f"no anchor for {x}")
            anchor = self.walk_end(x, witness["path"])
            self.require(anchor == witness["anchor"], f"the walk from {x} misses its anchor")
            entry = witness["entry"]
            self.require(entry["circuit"]["root"] == anchor, "the circuit is not at the anchor")
            self.check_entry(entry)

    def check_no_contracting_descendant(self, certificate: dict):
        for w in self.descendants(certificate["vertex"]):
            if self.graph.is_boundary(w):
                continue
            self.require(
                self.forced_cycle_closes(w) or not self.returns_to_orbit(w),
                f"{w} carries a G-circuit with an entry",
            )


def verify_certificate(prepared: Optional[PreparedTriple], verdict: Verdict) -> bool:
    CertificateVerifier(prepared).verify(verdict)
    logger.info(f"Certificate for {verdict.property} verified")
    return True


def verify_report(report) -> bool:
    return verify_certificate(report.prepared, report.verdict)
