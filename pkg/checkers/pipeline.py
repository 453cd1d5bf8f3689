import logging
from dataclasses import dataclass, field
from typing import Optional

from checkers.budget import CheckBudget
from checkers.contraction import locally_contracting
from checkers.freeness import topologically_free
from checkers.hausdorff import is_hausdorff
from checkers.prepared import PreparedTriple, prepare
from checkers.transitivity import weakly_G_transitive
from checkers.verdicts import Verdict, conjunction, proven, refuted, unknown
from groupoid.relations import RelationReport, verify_relations, verify_tightness
from symmetry.triple import Triple
from triples.exceptions import UnknownProperty

logger = logging.getLogger(__name__)

PROPERTIES = ("hausdorff", "minimal", "topfree", "simple", "pureinf", "tightness", "relations")

HYPOTHESIS_NOT_ESTABLISHED = "hypothesis not established"


@dataclass
class PropertyReport:
    verdict: Verdict
    prepared: Optional[PreparedTriple]
    notes: list = field(default_factory=list)
    records: Optional[RelationReport] = None

    @property
    def exit_code(self) -> int:
        return self.verdict.exit_code

    def as_dict(self) -> dict:
        data = {
            **self.verdict.to_dict(),
            "notes": list(self.notes),
            "truncation_depth": None if self.prepared is None else self.prepared.depth,
        }
        if self.records is not None:
            data["records"] = self.records.as_dict()
        return data

    def lines(self) -> list[str]:
        result = self.verdict.lines()
        result.extend(f"note: {note}" for note in self.notes)
        if self.records is not None:
            result.extend(self.records.lines())
        return result


def _simplicity(prepared: PreparedTriple, budget: CheckBudget) -> Verdict:
    if not prepared.group.amenable:
        return unknown(
            "simple", f"{HYPOTHESIS_NOT_ESTABLISHED}: the group is not declared amenable", budget
        )
    hausdorff = is_hausdorff(prepared, budget)
    if not hausdorff.is_proven:
        logger.info(f"Hausdorff hypothesis {hausdorff.status.value}, simplicity left open")
        return unknown("simple", HYPOTHESIS_NOT_ESTABLISHED, budget, children=(hausdorff,))
    minimal = weakly_G_transitive(prepared, budget)
    topfree = topologically_free(prepared, budget)
    return conjunction("simple", [hausdorff, minimal, topfree], budget)


def _sink_notes(prepared: PreparedTriple) -> list[str]:
    sinks = prepared.graph.sinks()
    if not sinks:
        return []
    logger.warning(f"Pure infiniteness asked for a graph with sinks: {sinks}")
    return [f"the graph has sinks {sinks}; the contraction criterion assumes none"]


def check_simplicity(triple: Triple, budget: CheckBudget) -> PropertyReport:
    """
    Desingularize, then decide simplicity from minimality and topological
    freeness once the Hausdorff hypothesis is established.
    """
    prepared = prepare(triple, budget)
    return PropertyReport(_simplicity(prepared, budget), prepared)


def check_pure_infiniteness(triple: Triple, budget: CheckBudget) -> PropertyReport:
    prepared = prepare(triple, budget)
    notes = _sink_notes(prepared)
    simple = _simplicity(prepared, budget)
    contracting = locally_contracting(prepared, budget)
    return PropertyReport(conjunction("pureinf", [simple, contracting], budget), prepared, notes)


def _relations_verdict(property_name: str, report: RelationReport) -> Verdict:
    if report.ok:
        return proven(
            property_name,
            {"kind": "relations", "relations": report.kind, "checked": len(report.records)},
        )
    failures = report.failures
    return refuted(
        property_name,
        {
            "kind": "relation-failures",
            "relations": report.kind,
            "failures": [record.as_dict() for record in failures],
        },
        f"{len(failures)} failing instance(s), first: {failures[0].relation}",
    )


def check_property(triple: Triple, property_name: str, budget: CheckBudget) -> PropertyReport:
    if property_name not in PROPERTIES:
        logger.error(f"Unknown property requested: {property_name}")
        raise UnknownProperty(
            f"Unknown property {property_name!r}; expected one of {', '.join(PROPERTIES)}"
        )
    logger.info(f"Checking {property_name}")
    if property_name == "simple":
        return check_simplicity(triple, budget)
    if property_name == "pureinf":
        return check_pure_infiniteness(triple, budget)
    if property_name == "relations":
        records = verify_relations(
            triple,
            budget.depth,
            lasso_size=budget.lasso,
            family_bound=budget.family,
            state_budget=budget.states,
        )
        return PropertyReport(_relations_verdict(property_name, records), None, records=records)
    prepared = prepare(triple, budget)
    if property_name == "hausdorff":
        return PropertyReport(is_hausdorff(prepared, budget), prepared)
    if property_name == "minimal":
        return PropertyReport(weakly_G_transitive(prepared, budget), prepared)
    if property_name == "topfree":
        return PropertyReport(topologically_free(prepared, budget), prepared)
    # tightness
    records = verify_tightness(prepared.triple, budget.lasso, budget.lasso)
    return PropertyReport(_relations_verdict(property_name, records), prepared, records=records)
