import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from graphs.paths import EdgeRef, LassoPath, Path, lasso_normalize
from semigroup.exceptions import (
    IllTypedElement,
    MismatchedTriples,
    NotIdempotent,
    TwistBudgetExceeded,
)
from symmetry.triple import Triple

logger = logging.getLogger(__name__)

DEFAULT_STATE_BUDGET = 4096


class _Zero:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "0"

    __str__ = __repr__


ZERO = _Zero()


@dataclass(frozen=True)
class SElement:
    """
    A nonzero element (α, g, β) of S(G,E): s(α) = g·x with witness x = s(β).
    """

    alpha: Path
    g: int
    beta: Path
    triple: Triple = field(compare=False, repr=False, hash=False)

    @property
    def x(self) -> str:
        return self.beta.source

    def is_idempotent(self) -> bool:
        return self.alpha == self.beta and self.g == self.triple.identity

    def __str__(self):
        return f"({self.alpha}|{self.triple.group.name_of(self.g)}|{self.beta})"


Element = Union[SElement, _Zero]


def twist_lasso(
    triple: Triple, g: int, omega: LassoPath, state_budget: int = DEFAULT_STATE_BUDGET
) -> LassoPath:
    """
    g·ω for a lasso ω = μν^∞.

    The head is acted on directly. Each cycle block is then acted on by the
    twist left by the previous block until a twist value repeats, which
    exhibits the image as a lasso.
    """
    head, twist = triple.act_and_cocycle(g, omega.head)
    seen = {twist: 0}
    blocks = []
    while True:
        block, twist = triple.act_and_cocycle(twist, omega.cycle)
        blocks.append(block)
        if twist in seen:
            break
        if len(blocks) >= state_budget:
            raise TwistBudgetExceeded(
                f"No repeated twist after {state_budget} blocks of {omega.cycle}"
            )
        seen[twist] = len(blocks)
    start = seen[twist]
    for block in blocks[:start]:
        head = head.concat(block)
    cycle = blocks[start]
    for block in blocks[start + 1 :]:
        cycle = cycle.concat(block)
    return lasso_normalize(LassoPath(head, cycle))


@dataclass(frozen=True)
class PartialPathMap:
    """
    The partial bijection βη ↦ α(g·η) of the infinite path space.
    """

    codomain_root: Path
    twist: int
    domain_root: Path
    triple: Triple = field(compare=False, repr=False)
    state_budget: int = field(default=DEFAULT_STATE_BUDGET, compare=False, repr=False)

    def defined_at(self, omega: LassoPath) -> bool:
        return omega.has_prefix(self.domain_root)

    def apply(self, omega: LassoPath) -> Optional[LassoPath]:
        if not self.defined_at(omega):
            return None
        rest = omega.drop(len(self.domain_root))
        twisted = twist_lasso(self.triple, self.twist, rest, self.state_budget)
        return twisted.prepend(self.codomain_root)


class EmptyMap:
    """
    The partial map of zero: defined nowhere.
    """

    def defined_at(self, omega: LassoPath) -> bool:
        return False

    def apply(self, omega: LassoPath) -> None:
        return None


class InverseSemigroup:
    """
    Exact arithmetic in S(G,E) over one triple.
    """

    def __init__(self, triple: Triple, state_budget: int = DEFAULT_STATE_BUDGET):
        self.triple = triple
        self.graph = triple.graph
        self.group = triple.group
        self.state_budget = state_budget

    # Constructors

    def element(self, alpha: Path, g: int, beta: Path) -> SElement:
        if self.triple.act_vertex(g, beta.source) != alpha.source:
            raise IllTypedElement(
                f"s({alpha}) = {alpha.source} but "
                f"{self.group.name_of(g)}·s({beta}) = {self.triple.act_vertex(g, beta.source)}"
            )
        return SElement(alpha, g, beta, self.triple)

    def idempotent(self, path: Path) -> SElement:
        return SElement(path, self.triple.identity, path, self.triple)

    def vertex_projection(self, v: str) -> SElement:
        return self.idempotent(Path.empty(v))

    def edge_isometry(self, ref: EdgeRef) -> SElement:
        """
        s_a = (a, 1, ∅_{s(a)}).
        """
        edge = self.graph.edge_path(ref)
        return SElement(edge, self.triple.identity, Path.empty(edge.source), self.triple)

    def unitary(self, g: int, x: str) -> SElement:
        """
        u_{g,x} = (∅_{g·x}, g, ∅_x).
        """
        return SElement(Path.empty(self.triple.act_vertex(g, x)), g, Path.empty(x), self.triple)

    def path_isometry(self, path: Path) -> SElement:
        return SElement(path, self.triple.identity, Path.empty(path.source), self.triple)

    def _own(self, *elements: Element):
        for s in elements:
            if isinstance(s, SElement) and s.triple is not self.triple:
                raise MismatchedTriples()

    # Operations

    def multiply(self, s: Element, t: Element) -> Element:
        self._own(s, t)
        if s is ZERO or t is ZERO:
            return ZERO
        alpha, g, beta = s.alpha, s.g, s.beta
        gamma, h, delta = t.alpha, t.g, t.beta
        epsilon = gamma.strip_prefix(beta)
        if epsilon is not None:
            moved, twist = self.triple.act_and_cocycle(g, epsilon)
            return SElement(
                alpha.concat(moved), self.group.multiply(twist, h), delta, self.triple
            )
        epsilon = beta.strip_prefix(gamma)
        if epsilon is not None:
            h_inv = self.group.inverse(h)
            pulled, _ = self.triple.act_and_cocycle(h_inv, epsilon)
            twist = self.triple.cocycle_path(h, pulled)
            return SElement(
                alpha, self.group.multiply(g, twist), delta.concat(pulled), self.triple
            )
        return ZERO

    def product(self, *elements: Element) -> Element:
        result = elements[0]
        for s in elements[1:]:
            result = self.multiply(result, s)
        return result

    def star(self, s: Element) -> Element:
        self._own(s)
        if s is ZERO:
            return ZERO
        return SElement(s.beta, self.group.inverse(s.g), s.alpha, self.triple)

    def is_idempotent(self, s: Element) -> bool:
        return s is ZERO or s.is_idempotent()

    def leq(self, s: Element, t: Element) -> bool:
        """
        Natural partial order: s <= t iff s = t·s*s.
        """
        if s is ZERO:
            return True
        if t is ZERO:
            return False
        return self.multiply(t, self.multiply(self.star(s), s)) == s

    def intersects(self, e: Element, f: Element) -> bool:
        for s in (e, f):
            if not self.is_idempotent(s):
                raise NotIdempotent(f"{s} is not idempotent")
        if e is ZERO or f is ZERO:
            return False
        return e.alpha.comparable(f.alpha)

    def partial_map(self, s: Element):
        self._own(s)
        if s is ZERO:
            return EmptyMap()
        return PartialPathMap(s.alpha, s.g, s.beta, self.triple, self.state_budget)

    def apply(self, s: Element, omega: LassoPath) -> Optional[LassoPath]:
        return self.partial_map(s).apply(omega)

    def format(self, s: Element) -> str:
        return str(s)
