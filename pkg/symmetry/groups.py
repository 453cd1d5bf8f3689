import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence

import numpy as np

from symmetry.exceptions import InvalidGroup, UnknownGroupElement
from utils.security import validate_identifier

logger = logging.getLogger(__name__)


class GroupBackend(ABC):
    """
    A group with decidable equality. Elements are plain ints: table indices
    for finite tables, the integers themselves for the integers.
    """

    kind: str = ""
    is_finite: bool = True

    def __init__(self, amenable: bool = True):
        self.amenable = amenable

    @property
    @abstractmethod
    def identity(self) -> int: ...

    @abstractmethod
    def multiply(self, a: int, b: int) -> int: ...

    @abstractmethod
    def inverse(self, a: int) -> int: ...

    @abstractmethod
    def name_of(self, g: int) -> str: ...

    @abstractmethod
    def parse(self, token: str) -> int: ...

    @abstractmethod
    def elements_within(self, budget: int) -> list[int]:
        """
        Every element for finite groups, a finite window otherwise.
        """

    def is_identity(self, g: int) -> bool:
        return g == self.identity

    def power(self, g: int, n: int) -> int:
        base = g if n >= 0 else self.inverse(g)
        result = self.identity
        for _ in range(abs(n)):
            result = self.multiply(result, base)
        return result

    def describe(self) -> dict:
        return {"kind": self.kind, "amenable": self.amenable}


class FiniteTableGroup(GroupBackend):
    kind = "finite"
    is_finite = True

    def __init__(self, names: Sequence[str], table, amenable: bool = True):
        super().__init__(amenable=amenable)
        self.names = tuple(validate_identifier(n, "group element") for n in names)
        if len(set(self.names)) != len(self.names):
            raise InvalidGroup("Group element names must be unique")
        self.table = np.asarray(table, dtype=np.int64)
        self._index = {name: i for i, name in enumerate(self.names)}
        self._check_axioms()

    @classmethod
    def from_names(cls, names: Sequence[str], rows: Sequence[Sequence[str]], amenable=True):
        index = {name: i for i, name in enumerate(names)}
        try:
            table = [[index[entry] for entry in row] for row in rows]
        except KeyError as e:
            raise InvalidGroup(f"Multiplication table names unknown element {e}")
        return cls(names, table, amenable=amenable)

    @classmethod
    def trivial(cls) -> "FiniteTableGroup":
        return cls(["1"], [[0]])

    @classmethod
    def cyclic(cls, order: int, names: Sequence[str] | None = None) -> "FiniteTableGroup":
        names = names or ["1"] + [f"s{k}" for k in range(1, order)]
        table = (np.arange(order)[:, None] + np.arange(order)[None, :]) % order
        return cls(names, table)

    def _check_axioms(self):
        n = len(self.names)
        T = self.table
        if n == 0 or T.shape != (n, n):
            raise InvalidGroup(f"Table must be {n}x{n}, got shape {T.shape}")
        if T.min() < 0 or T.max() >= n:
            raise InvalidGroup("Table entries must name group elements")
        elements = np.arange(n)
        identities = [
            e for e in range(n) if (T[e] == elements).all() and (T[:, e] == elements).all()
        ]
        if not identities:
            raise InvalidGroup("No identity element")
        self._identity = identities[0]
        inverses = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            candidates = np.nonzero(T[a] == self._identity)[0]
            if len(candidates) != 1 or T[candidates[0], a] != self._identity:
                raise InvalidGroup(f"Element {self.names[a]} has no two-sided inverse")
            inverses[a] = candidates[0]
        self._inverses = inverses
        left = T[T]
        right = T[elements[:, None, None], T[None, :, :]]
        if not np.array_equal(left, right):
            a, b, c = np.argwhere(left != right)[0]
            raise InvalidGroup(
                f"Not associative at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
            )

    @property
    def identity(self) -> int:
        return int(self._identity)

    @property
    def order(self) -> int:
        return len(self.names)

    def multiply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inverse(self, a: int) -> int:
        return int(self._inverses[a])

    def name_of(self, g: int) -> str:
        return self.names[g]

    def parse(self, token: str) -> int:
        if token in self._index:
            return self._index[token]
        if token == "1":
            return self.identity
        raise UnknownGroupElement(f"Unknown group element: {token}")

    def elements(self) -> list[int]:
        return list(range(len(self.names)))

    def elements_within(self, budget: int) -> list[int]:
        return self.elements()

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "amenable": self.amenable,
            "elements": list(self.names),
            "table": [[self.names[int(v)] for v in row] for row in self.table],
        }


class IntegerGroup(GroupBackend):
    """
    The integers under addition, generated by ``1``.
    """

    kind = "integers"
    is_finite = False

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return a + b

    def inverse(self, a: int) -> int:
        return -a

    def power(self, g: int, n: int) -> int:
        return g * n

    def name_of(self, g: int) -> str:
        return str(g)

    def parse(self, token: str) -> int:
        try:
            return int(token)
        except (TypeError, ValueError):
            raise UnknownGroupElement(f"Not an integer: {token!r}")

    def elements_within(self, budget: int) -> list[int]:
        window = [0]
        for k in range(1, budget + 1):
            window.extend([k, -k])
        return window
