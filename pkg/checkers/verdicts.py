from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from utils.exceptions import ExitCode


class Status(str, Enum):
    PROVEN = "proven"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


EXIT_CODES = {
    Status.PROVEN: ExitCode.OK,
    Status.REFUTED: ExitCode.REFUTED,
    Status.UNKNOWN: ExitCode.UNKNOWN,
}


@dataclass(frozen=True)
class Verdict:
    """
    Three-valued outcome of a property check.

    ``certificate`` is a JSON-able dict whose ``kind`` tells the verifier how
    to re-check it. Unknown verdicts carry the exhausted budget instead.
    """

    property: str
    status: Status
    certificate: dict = field(default_factory=dict)
    reason: str = ""
    budget: dict = field(default_factory=dict)
    children: tuple = ()

    @property
    def is_proven(self) -> bool:
        return self.status == Status.PROVEN

    @property
    def is_refuted(self) -> bool:
        return self.status == Status.REFUTED

    @property
    def is_unknown(self) -> bool:
        return self.status == Status.UNKNOWN

    @property
    def kind(self) -> Optional[str]:
        return self.certificate.get("kind")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def child(self, property_name: str) -> Optional["Verdict"]:
        for child in self.children:
            if child.property == property_name:
                return child
        return None

    def to_dict(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.status.value,
            "reason": self.reason,
            "certificate": self.certificate,
            "budget": self.budget,
            "children": [child.to_dict() for child in self.children],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Verdict":
        return cls(
            data["property"],
            Status(data["verdict"]),
            dict(data.get("certificate") or {}),
            data.get("reason", ""),
            dict(data.get("budget") or {}),
            tuple(cls.from_dict(child) for child in data.get("children", [])),
        )

    def lines(self, indent: int = 0) -> list[str]:
        pad = "  " * indent
        text = f"{pad}{self.property}: {self.status.value.upper()}"
        if self.reason:
            text += f" ({self.reason})"
        result = [text]
        for child in self.children:
            result.extend(child.lines(indent + 1))
        return result


def proven(property_name: str, certificate: dict, reason: str = "", children=()) -> Verdict:
    return Verdict(property_name, Status.PROVEN, certificate, reason, children=tuple(children))


def refuted(property_name: str, certificate: dict, reason: str = "", children=()) -> Verdict:
    return Verdict(property_name, Status.REFUTED, certificate, reason, children=tuple(children))


def unknown(property_name: str, reason: str, budget=None, children=()) -> Verdict:
    return Verdict(
        property_name,
        Status.UNKNOWN,
        {"kind": "unknown"},
        reason,
        budget.as_dict() if budget is not None else {},
        tuple(children),
    )


def conjunction(property_name: str, children: list[Verdict], budget=None) -> Verdict:
    """
    Refuted as soon as one part is refuted, Unknown if some part is unknown,
    Proven otherwise.
    """
    certificate = {"kind": "conjunction", "parts": [child.property for child in children]}
    for child in children:
        if child.is_refuted:
            reason = child.reason or f"{child.property} refuted"
            return refuted(property_name, certificate, reason, children)
    for child in children:
        if child.is_unknown:
            reason = child.reason or f"{child.property} unknown"
            return unknown(property_name, reason, budget, children)
    return proven(property_name, certificate, children=children)
