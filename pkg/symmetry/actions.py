import logging
from abc import ABC, abstractmethod
from collections import deque
from dataclasses import dataclass, field
from math import lcm

from graphs.graph import Graph
from symmetry.exceptions import InvalidAction
from symmetry.groups import FiniteTableGroup, GroupBackend, IntegerGroup
from utils.sequences import EventuallyPeriodic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorSpec:
    """
    Action and cocycle data of one generator, as entered. Missing vertex,
    edge and family entries are fixed by the generator; missing cocycle
    entries default to the generator itself.
    """

    vertices: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    edge_cocycle: dict = field(default_factory=dict)
    family_cocycle: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: dict
    message: str

    def __str__(self):
        params = ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return f"[{self.axiom}] {self.message} ({params})"


@dataclass(frozen=True)
class ElementMaps:
    """
    Everything one group element does: the three permutations and the
    cocycle values on plain edges and families.
    """

    vertices: dict
    edges: dict
    families: dict
    edge_cocycle: dict
    family_cocycle: dict


def complete_spec(graph: Graph, g: int, spec: GeneratorSpec) -> ElementMaps:
    for label, mapping, domain in (
        ("vertex", spec.vertices, set(graph.vertices)),
        ("edge", spec.edges, set(graph.edges)),
        ("family", spec.families, set(graph.families)),
    ):
        unknown = (set(mapping) | set(mapping.values())) - domain
        if unknown:
            raise InvalidAction(f"Action names unknown {label}(s): {sorted(unknown)}")
    unknown = (set(spec.edge_cocycle) - set(graph.edges)) | (
        set(spec.family_cocycle) - set(graph.families)
    )
    if unknown:
        raise InvalidAction(f"Cocycle names unknown edge(s): {sorted(unknown)}")
    return ElementMaps(
        vertices={v: spec.vertices.get(v, v) for v in graph.vertices},
        edges={a: spec.edges.get(a, a) for a in graph.edges},
        families={f: spec.families.get(f, f) for f in graph.families},
        edge_cocycle={a: spec.edge_cocycle.get(a, g) for a in graph.edges},
        family_cocycle={
            f: spec.family_cocycle.get(f, EventuallyPeriodic.constant(g))
            for f in graph.families
        },
    )


def _check_permutations(graph: Graph, g: int, maps: ElementMaps, name: str) -> list[Violation]:
    violations = []
    for label, mapping, domain in (
        ("vertex", maps.vertices, set(graph.vertices)),
        ("edge", maps.edges, set(graph.edges)),
        ("family", maps.families, set(graph.families)),
    ):
        image = set(mapping.values())
        if image != domain:
            violations.append(
                Violation(
                    "automorphism",
                    {"g": name},
                    f"{label} map of the generator is not a permutation",
                )
            )
    return violations


class Symmetry(ABC):
    """
    The group action on the graph together with the cocycle, extended from
    generators to every group element.
    """

    def __init__(self, graph: Graph, group: GroupBackend, generators: dict):
        self.graph = graph
        self.group = group
        self.generators = {
            g: complete_spec(graph, g, spec) for g, spec in sorted(generators.items())
        }
        self.violations: list[Violation] = []
        for g, maps in self.generators.items():
            self.violations.extend(
                _check_permutations(graph, g, maps, group.name_of(g))
            )

    @abstractmethod
    def maps(self, g: int) -> ElementMaps: ...

    def vertex(self, g: int, v: str) -> str:
        return self.maps(g).vertices[v]

    def edge(self, g: int, name: str) -> str:
        return self.maps(g).edges[name]

    def family(self, g: int, name: str) -> str:
        return self.maps(g).families[name]

    def edge_cocycle(self, g: int, name: str) -> int:
        return self.maps(g).edge_cocycle[name]

    def family_cocycle(self, g: int, name: str) -> EventuallyPeriodic:
        return self.maps(g).family_cocycle[name]


class TableSymmetry(Symmetry):
    """
    Finite groups: the data of every element is computed once, by breadth
    first search from the identity over the generators, using
    φ(s·h, a) = φ(s, h·a)·φ(h, a). Two routes to one element that disagree
    are recorded as violations.
    """

    def __init__(self, graph: Graph, group: FiniteTableGroup, generators: dict):
        super().__init__(graph, group, generators)
        self._maps: dict[int, ElementMaps] = {}
        identity = group.identity
        self._maps[identity] = complete_spec(graph, identity, GeneratorSpec())
        self.generators.pop(identity, None)
        self._extend()

    def _compose(self, s: ElementMaps, h: ElementMaps) -> ElementMaps:
        mult = self.group.multiply
        return ElementMaps(
            vertices={v: s.vertices[w] for v, w in h.vertices.items()},
            edges={a: s.edges[b] for a, b in h.edges.items()},
            families={f: s.families[k] for f, k in h.families.items()},
            edge_cocycle={
                a: mult(s.edge_cocycle[h.edges[a]], h.edge_cocycle[a]) for a in h.edges
            },
            family_cocycle={
                f: s.family_cocycle[h.families[f]].zip_with(h.family_cocycle[f], mult)
                for f in h.families
            },
        )

    def _extend(self):
        group = self.group
        queue = deque([group.identity])
        while True:
            while queue:
                h = queue.popleft()
                for s, s_maps in self.generators.items():
                    k = group.multiply(s, h)
                    candidate = self._compose(s_maps, self._maps[h])
                    if k not in self._maps:
                        self._maps[k] = candidate
                        queue.append(k)
                    elif self._maps[k] != candidate:
                        self.violations.append(
                            Violation(
                                "generator-extension",
                                {
                                    "g": group.name_of(s),
                                    "h": group.name_of(h),
                                },
                                f"generators do not extend consistently to "
                                f"{group.name_of(k)}",
                            )
                        )
            missing = [g for g in group.elements() if g not in self._maps]
            if not missing:
                break
            # Elements outside the generated subgroup get the default data.
            g = missing[0]
            logger.debug(f"Element {group.name_of(g)} not generated, using defaults")
            self.generators[g] = complete_spec(self.graph, g, GeneratorSpec())
            self._maps[g] = self.generators[g]
            queue.append(g)

    def maps(self, g: int) -> ElementMaps:
        return self._maps[g]


class IntegerSymmetry(Symmetry):
    """
    The integers acting through the data of the generator ``1``:
    n·v = σ^n(v) and φ(n, a) = Σ_{0 <= k < n} φ(1, σ^k a), extended to
    negative n through the period of σ.
    """

    def __init__(self, graph: Graph, group: IntegerGroup, generators: dict):
        unexpected = set(generators) - {1}
        if unexpected:
            raise InvalidAction(
                f"The integers are generated by 1 only, got data for {sorted(unexpected)}"
            )
        super().__init__(graph, group, generators or {1: GeneratorSpec()})
        one = self.generators[1]
        self.period = lcm(
            _order(one.vertices), _order(one.edges), _order(one.families), 1
        )
        self._powers = [complete_spec(graph, 0, GeneratorSpec())]
        for _ in range(self.period - 1):
            previous = self._powers[-1]
            self._powers.append(
                ElementMaps(
                    vertices={v: one.vertices[w] for v, w in previous.vertices.items()},
                    edges={a: one.edges[b] for a, b in previous.edges.items()},
                    families={f: one.families[k] for f, k in previous.families.items()},
                    edge_cocycle={},
                    family_cocycle={},
                )
            )
        self._edge_sums = {a: self._partial_sums(a) for a in graph.edges}
        self._family_sums = {f: self._family_partial_sums(f) for f in graph.families}
        self._cache: dict[int, ElementMaps] = {}

    def _partial_sums(self, edge: str) -> list[int]:
        one = self.generators[1]
        sums = [0]
        for k in range(self.period):
            sums.append(sums[-1] + one.edge_cocycle[self._powers[k].edges[edge]])
        return sums

    def _family_partial_sums(self, family: str) -> list[EventuallyPeriodic]:
        one = self.generators[1]
        sums = [EventuallyPeriodic.constant(0)]
        for k in range(self.period):
            image = self._powers[k].families[family]
            sums.append(sums[-1].zip_with(one.family_cocycle[image], lambda a, b: a + b))
        return sums

    def maps(self, g: int) -> ElementMaps:
        if g in self._cache:
            return self._cache[g]
        q, r = divmod(g, self.period)
        power = self._powers[r]
        maps = ElementMaps(
            vertices=power.vertices,
            edges=power.edges,
            families=power.families,
            edge_cocycle={
                a: q * sums[self.period] + sums[r] for a, sums in self._edge_sums.items()
            },
            family_cocycle={
                f: sums[self.period]
                .map(lambda v, q=q: q * v)
                .zip_with(sums[r], lambda a, b: a + b)
                for f, sums in self._family_sums.items()
            },
        )
        if len(self._cache) < 4096:
            self._cache[g] = maps
        return maps


def _order(permutation: dict) -> int:
    """
    Order of a permutation given as a dict; 1 for maps that are not
    bijections (reported separately).
    """
    if set(permutation.values()) != set(permutation):
        return 1
    seen = set()
    result = 1
    for start in permutation:
        if start in seen:
            continue
        length = 0
        current = start
        while current not in seen:
            seen.add(current)
            current = permutation[current]
            length += 1
        result = lcm(result, length)
    return result


def build_symmetry(graph: Graph, group: GroupBackend, generators: dict) -> Symmetry:
    if isinstance(group, IntegerGroup):
        return IntegerSymmetry(graph, group, generators)
    return TableSymmetry(graph, group, generators)
