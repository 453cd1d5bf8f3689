import logging

from celery import shared_task  # type: ignore

from checkers.budget import CheckBudget
from checkers.certificates import verify_report
from checkers.pipeline import PROPERTIES, check_property
from symmetry.triple import Triple
from triples.documents import triple_from_payload, triple_to_dict
from triples.exceptions import UnknownProperty
from utils.exceptions import ExitCode, TripleToolkitError
from utils.utils import get_cached_verdict, set_cached_verdict

logger = logging.getLogger(__name__)


def _error_result(e: TripleToolkitError, **fields) -> dict:
    return {**fields, "error": e.as_dict(), "exit_code": e.exit_code}


def _load(payload: dict, budget: CheckBudget, strict: bool = True) -> Triple:
    """
    Builds the triple of a document, validating it with the word budget.
    """
    return triple_from_payload(payload, strict=strict, word_budget=budget.word)


def _singular_orbits(triple: Triple) -> list[dict]:
    return [
        {
            "representative": orbit.representative,
            "kind": orbit.kind.value,
            "vertices": list(orbit.vertices),
        }
        for orbit in triple.singular_orbits()
    ]


@shared_task
def run_validation(payload: dict, budget: dict) -> dict:
    """
    Validates one document and returns the validation report.
    """
    try:
        triple = _load(payload, CheckBudget(**budget), strict=False)
        report = triple.report.as_dict()
        result = {"ok": triple.sealed, "report": report}
        if triple.sealed:
            result["singular_orbits"] = _singular_orbits(triple)
        result["exit_code"] = ExitCode.OK if triple.sealed else ExitCode.INVALID_TRIPLE
        logger.info(f"Validation finished with exit code {result['exit_code']}")
        return result
    except TripleToolkitError as e:
        logger.error(f"Error while validating document: {e}", exc_info=True)
        return _error_result(e, ok=False)
    except Exception as e:
        logger.error(f"Unexpected error while validating document: {e}", exc_info=True)
        raise e


@shared_task
def run_property_check(
    payload: dict, property_name: str, budget: dict, verify: bool = False
) -> dict:
    """
    Decides one property of one document.

    The verdict is memoised under the canonical document, the property and
    the budgets; with ``verify`` the certificate is re-checked before the
    result is cached.
    """
    try:
        if property_name not in PROPERTIES:
            logger.error(f"Unknown property requested: {property_name}")
            raise UnknownProperty(
                f"Unknown property {property_name!r}; expected one of {', '.join(PROPERTIES)}"
            )
        check_budget = CheckBudget(**budget)
        strict = property_name != "relations"
        triple = _load(payload, check_budget, strict=strict)
        document = triple_to_dict(triple)

        cached = get_cached_verdict(document, property_name, budget, verify)
        if cached:
            logger.info(f"Verdict for {property_name} found in cache, skipping the check")
            return cached

        report = check_property(triple, property_name, check_budget)
        result = {
            "property": property_name,
            "report": report.as_dict(),
            "exit_code": report.exit_code,
        }
        if verify:
            verify_report(report)
            result["certificate_verified"] = True

        set_cached_verdict(document, property_name, budget, verify, result)
        return result
    except TripleToolkitError as e:
        logger.error(f"Error while checking {property_name}: {e}", exc_info=True)
        return _error_result(e, property=property_name)
    except Exception as e:
        logger.error(f"Unexpected error while checking {property_name}: {e}", exc_info=True)
        raise e
