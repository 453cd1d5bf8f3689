import logging
import re

from utils.exceptions import TripleToolkitError

logger = logging.getLogger(__name__)

IDENTIFIER_PATTERN = re.compile(r"^[A-Za-z0-9_~]+$")


class InvalidIdentifier(TripleToolkitError):
    default_detail = "Identifiers may only use letters, digits, '_' and '~'."
    default_code = "invalid_identifier"


def validate_identifier(value, kind="identifier") -> str:
    """
    Check that ``value`` is usable as a vertex, edge, family or group element
    name and return it.

    Names end up in the element syntax, in tail names and in DOT output, so
    anything outside the identifier alphabet is rejected.
    """
    if not isinstance(value, str) or not IDENTIFIER_PATTERN.match(value):
        logger.error(f"Rejected {kind} name: {value!r}")
        raise InvalidIdentifier(f"Invalid {kind} name: {value!r}")
    return value


def _remove_control_characters(content):
    if not isinstance(content, str):
        return content
    return re.sub(r"[\x00-\x08\x0b\x0c\x0e-\x1f\x7f]", "", content)


def sanitize_meta(meta):
    """
    Strip control characters from the free form ``meta`` section of a
    document, recursively.
    """
    if isinstance(meta, dict):
        return {
            _remove_control_characters(str(k)): sanitize_meta(v) for k, v in meta.items()
        }
    if isinstance(meta, list):
        return [sanitize_meta(v) for v in meta]
    return _remove_control_characters(meta)


def escape_dot_label(text: str) -> str:
    return str(text).replace("\\", "\\\\").replace('"', '\\"')
