"""
Text syntax for semigroup elements.

    element   (alpha|g|beta)     paths are dot separated edge ids, F[3] for
                                 family members and @v for the empty path
    zero      0
    product   s * t
    star      s'
    apply     s @ lasso          lasso literals are head(cycle)^inf, the
                                 head may be empty; cycle^inf is short for
                                 (cycle)^inf

The binary ``@`` must be followed by whitespace so it is not read as an
empty path.
"""

import logging
import re
from dataclasses import dataclass
from typing import Optional, Union

from graphs.exceptions import PathMismatch, UnknownEdge, UnknownVertex
from graphs.paths import EdgeRef, LassoPath, Path, lasso_normalize
from semigroup.elements import ZERO, Element, InverseSemigroup
from semigroup.exceptions import (
    ExpressionSyntaxError,
    ExpressionTypeError,
    IllTypedElement,
    MismatchedTriples,
    TwistBudgetExceeded,
)
from symmetry.exceptions import UnknownGroupElement

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<inf>\^inf)"
    r"|(?P<empty>@[A-Za-z0-9_~]+)"
    r"|(?P<name>-?[A-Za-z0-9_~]+(?:\[\d+\])?)"
    r"|(?P<punct>[()|*'.@])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    column: int


@dataclass(frozen=True)
class Undefined:
    """
    Result of applying an element outside its domain.
    """

    def __str__(self):
        return "undefined"


Result = Union[Element, LassoPath, Undefined]


def tokenize(text: str) -> list[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if not match:
            raise ExpressionSyntaxError(f"unexpected character {text[position]!r}", position + 1)
        kind = match.lastgroup
        if kind != "ws":
            value = match.group(kind)
            tokens.append(Token(value if kind == "punct" else kind, value, position + 1))
        position = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class ExpressionParser:
    def __init__(self, semigroup: InverseSemigroup, text: str):
        self.semigroup = semigroup
        self.graph = semigroup.graph
        self.tokens = tokenize(text)
        self.position = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def peek(self, offset: int = 1) -> Token:
        index = min(self.position + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise ExpressionSyntaxError(
                f"expected {kind!r}, found {self.current.text or 'end of input'!r}",
                self.current.column,
            )
        return self.advance()

    # Grammar

    def parse(self) -> Result:
        value = self.expression()
        if self.current.kind == "@":
            column = self.advance().column
            omega = self.lasso()
            self.expect("end")
            try:
                image = self.semigroup.apply(value, omega)
            except PathMismatch as e:
                raise ExpressionTypeError(str(e), column)
            return Undefined() if image is None else image
        self.expect("end")
        return value

    def expression(self) -> Element:
        value = self.term()
        while self.current.kind == "*":
            column = self.advance().column
            right = self.term()
            try:
                value = self.semigroup.multiply(value, right)
            except (PathMismatch, MismatchedTriples) as e:
                raise ExpressionTypeError(str(e), column)
        return value

    def term(self) -> Element:
        value = self.primary()
        while self.current.kind == "'":
            self.advance()
            value = self.semigroup.star(value)
        return value

    def primary(self) -> Element:
        token = self.current
        if token.kind == "name" and token.text == "0":
            self.advance()
            return ZERO
        if token.kind != "(":
            found = token.text or "end of input"
            raise ExpressionSyntaxError(f"unexpected {found!r}", token.column)
        following = self.peek()
        if following.kind == "empty" or (
            following.kind == "name" and self.peek(2).kind in ("|", ".")
        ):
            return self.element()
        self.advance()
        value = self.expression()
        self.expect(")")
        return value

    def element(self) -> Element:
        opening = self.expect("(")
        alpha = self.path()
        self.expect("|")
        group_token = self.expect("name")
        try:
            g = self.semigroup.group.parse(group_token.text)
        except UnknownGroupElement as e:
            raise ExpressionTypeError(str(e.detail), group_token.column)
        self.expect("|")
        beta = self.path()
        self.expect(")")
        try:
            return self.semigroup.element(alpha, g, beta)
        except IllTypedElement as e:
            raise ExpressionTypeError(str(e.detail), opening.column)

    def path(self) -> Path:
        token = self.current
        if token.kind == "empty":
            self.advance()
            vertex = token.text[1:]
            if vertex not in self.graph.vertices:
                raise ExpressionTypeError(f"unknown vertex {vertex}", token.column)
            return Path.empty(vertex)
        refs = [EdgeRef.parse(self.expect("name").text)]
        while self.current.kind == ".":
            self.advance()
            refs.append(EdgeRef.parse(self.expect("name").text))
        return self._build_path(refs, token.column)

    def _build_path(self, refs: list[EdgeRef], column: int) -> Path:
        try:
            return self.graph.path(self.graph.range_of(refs[0]), refs)
        except (PathMismatch, UnknownEdge, UnknownVertex) as e:
            raise ExpressionTypeError(str(e.detail), column)

    def lasso(self) -> LassoPath:
        start = self.current.column
        head_refs = []
        if self.current.kind == "name":
            head_refs.append(EdgeRef.parse(self.advance().text))
            while self.current.kind == ".":
                self.advance()
                head_refs.append(EdgeRef.parse(self.expect("name").text))
            if self.current.kind == "inf":
                self.advance()
                cycle = self._build_path(head_refs, start)
                return self._make_lasso(Path.empty(cycle.range), cycle, start)
        self.expect("(")
        cycle_column = self.current.column
        cycle_refs = [EdgeRef.parse(self.expect("name").text)]
        while self.current.kind == ".":
            self.advance()
            cycle_refs.append(EdgeRef.parse(self.expect("name").text))
        self.expect(")")
        self.expect("inf")
        cycle = self._build_path(cycle_refs, cycle_column)
        head = self._build_path(head_refs, start) if head_refs else Path.empty(cycle.range)
        return self._make_lasso(head, cycle, start)

    def _make_lasso(self, head: Path, cycle: Path, column: int) -> LassoPath:
        try:
            return lasso_normalize(LassoPath(head, cycle))
        except PathMismatch as e:
            raise ExpressionTypeError(str(e.detail), column)


def evaluate(semigroup: InverseSemigroup, text: str) -> Result:
    return ExpressionParser(semigroup, text).parse()


def parse_lasso(semigroup: InverseSemigroup, text: str) -> LassoPath:
    parser = ExpressionParser(semigroup, text)
    omega = parser.lasso()
    parser.expect("end")
    return omega


def format_result(result: Result) -> str:
    return str(result)


def evaluate_lines(semigroup: InverseSemigroup, text: str) -> list[dict]:
    """
    Evaluate one expression per line; blank lines and lines starting with
    ``#`` are skipped. Errors are reported per line and do not stop the run.
    """
    results = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        expression = line.strip()
        if not expression or expression.startswith("#"):
            continue
        record: dict[str, Optional[str]] = {
            "line": str(line_number),
            "expression": expression,
            "result": None,
            "error": None,
        }
        try:
            record["result"] = format_result(evaluate(semigroup, expression))
        except (ExpressionSyntaxError, TwistBudgetExceeded) as e:
            logger.info(f"Line {line_number}: {e.detail}")
            record["error"] = f"line {line_number}, {e.detail}"
        results.append(record)
    return results
