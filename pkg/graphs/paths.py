import logging
import re
from dataclasses import dataclass
from typing import Optional

from graphs.exceptions import PathMismatch

logger = logging.getLogger(__name__)

INDEXED_EDGE_PATTERN = re.compile(r"^(?P<family>[A-Za-z0-9_~]+)\[(?P<index>\d+)\]$")


@dataclass(frozen=True)
class EdgeRef:
    """
    Either a plain edge (``index`` is None) or member ``index`` (>= 1) of an
    infinite edge family.
    """

    name: str
    index: Optional[int] = None

    @property
    def is_indexed(self) -> bool:
        return self.index is not None

    @classmethod
    def parse(cls, token: str) -> "EdgeRef":
        match = INDEXED_EDGE_PATTERN.match(token)
        if match:
            return cls(match.group("family"), int(match.group("index")))
        return cls(token)

    def sort_key(self) -> tuple:
        return (self.name, self.index or 0)

    def __str__(self):
        if self.index is None:
            return self.name
        return f"{self.name}[{self.index}]"


@dataclass(frozen=True)
class Path:
    """
    A finite path stored range first.

    ``vertices`` has one more entry than ``edges``: ``vertices[0]`` is the
    range of the path and ``vertices[i]`` is the source of ``edges[i - 1]``,
    so consecutive edges satisfy s(previous) = r(next).
    """

    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise PathMismatch(
                f"Path needs {len(self.edges) + 1} vertices, got {len(self.vertices)}"
            )

    @classmethod
    def empty(cls, vertex: str) -> "Path":
        return cls((vertex,), ())

    @property
    def range(self) -> str:
        return self.vertices[0]

    @property
    def source(self) -> str:
        return self.vertices[-1]

    def __len__(self):
        return len(self.edges)

    def is_empty(self) -> bool:
        return not self.edges

    def concat(self, other: "Path") -> "Path":
        if self.source != other.range:
            raise PathMismatch(
                f"Cannot concatenate {self} (source {self.source}) with "
                f"{other} (range {other.range})"
            )
        return Path(self.vertices + other.vertices[1:], self.edges + other.edges)

    def prefix(self, length: int) -> "Path":
        return Path(self.vertices[: length + 1], self.edges[:length])

    def drop(self, length: int) -> "Path":
        return Path(self.vertices[length:], self.edges[length:])

    def is_prefix_of(self, other: "Path") -> bool:
        return (
            self.range == other.range
            and len(self) <= len(other)
            and other.edges[: len(self)] == self.edges
        )

    def strip_prefix(self, prefix: "Path") -> Optional["Path"]:
        """
        Return ``rest`` with ``prefix.concat(rest) == self``, or None when
        ``prefix`` is not a prefix of this path.
        """
        if not prefix.is_prefix_of(self):
            return None
        return self.drop(len(prefix))

    def comparable(self, other: "Path") -> bool:
        return self.is_prefix_of(other) or other.is_prefix_of(self)

    def __str__(self):
        if not self.edges:
            return f"@{self.range}"
        return ".".join(str(edge) for edge in self.edges)


@dataclass(frozen=True)
class LassoPath:
    """
    The eventually periodic infinite path ``head cycle cycle cycle ...``.
    """

    head: Path
    cycle: Path

    def __post_init__(self):
        if self.cycle.is_empty():
            raise PathMismatch("The cycle of a lasso needs at least one edge")
        if self.cycle.range != self.cycle.source:
            raise PathMismatch(f"The cycle {self.cycle} of a lasso must be closed")
        if self.head.source != self.cycle.range:
            raise PathMismatch(
                f"Head {self.head} ends at {self.head.source} but cycle "
                f"{self.cycle} starts at {self.cycle.range}"
            )

    @property
    def range(self) -> str:
        return self.head.range

    @property
    def description_size(self) -> int:
        return len(self.head) + len(self.cycle)

    def edge_at(self, position: int):
        if position < len(self.head):
            return self.head.edges[position]
        offset = (position - len(self.head)) % len(self.cycle)
        return self.cycle.edges[offset]

    def vertex_at(self, position: int) -> str:
        """
        Range of the edge at ``position``.
        """
        if position < len(self.head):
            return self.head.vertices[position]
        offset = (position - len(self.head)) % len(self.cycle)
        return self.cycle.vertices[offset]

    def unroll(self, length: int) -> tuple:
        return tuple(self.edge_at(i) for i in range(length))

    def prefix_path(self, length: int) -> Path:
        vertices = tuple(self.vertex_at(i) for i in range(length + 1))
        return Path(vertices, self.unroll(length))

    def has_prefix(self, path: Path) -> bool:
        return path.range == self.range and self.unroll(len(path)) == path.edges

    def drop(self, length: int) -> "LassoPath":
        if length <= len(self.head):
            return lasso_normalize(LassoPath(self.head.drop(length), self.cycle))
        offset = (length - len(self.head)) % len(self.cycle)
        rotated = self.cycle.drop(offset).concat(self.cycle.prefix(offset))
        return lasso_normalize(LassoPath(Path.empty(rotated.range), rotated))

    def prepend(self, path: Path) -> "LassoPath":
        return lasso_normalize(LassoPath(path.concat(self.head), self.cycle))

    def normalized(self) -> "LassoPath":
        return lasso_normalize(self)

    def __str__(self):
        head = "" if self.head.is_empty() else ".".join(str(e) for e in self.head.edges)
        cycle = ".".join(str(e) for e in self.cycle.edges)
        return f"{head}({cycle})^inf"


def _primitive_cycle(cycle: Path) -> Path:
    length = len(cycle)
    for size in range(1, length + 1):
        if length % size == 0 and cycle.edges[:size] * (length // size) == cycle.edges:
            return cycle.prefix(size)
    return cycle


def lasso_normalize(omega: LassoPath) -> LassoPath:
    """
    Canonical form: the cycle is not a proper power and the head does not end
    with the last edge of the cycle. Two lassos denote the same infinite path
    iff their canonical forms are equal.
    """
    head = omega.head
    cycle = _primitive_cycle(omega.cycle)
    while not head.is_empty() and head.edges[-1] == cycle.edges[-1]:
        head = head.prefix(len(head) - 1)
        cycle = Path(
            (cycle.vertices[-2],) + cycle.vertices[:-1],
            (cycle.edges[-1],) + cycle.edges[:-1],
        )
    return LassoPath(head, cycle)
