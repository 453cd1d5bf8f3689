import hashlib
import json
import logging
from typing import Optional

from django.core.cache import cache

logger = logging.getLogger(__name__)

VERDICT_CACHE_PREFIX = "verdict"


def fingerprint(*parts) -> Optional[str]:
    """
    SHA-256 over the canonical JSON of ``parts``, or None when they are not
    serializable.
    """
    try:
        data = json.dumps(parts, sort_keys=True, ensure_ascii=False)
    except TypeError as e:
        logger.error(f"Error serializing fingerprint parts: {e}")
        return None
    key = hashlib.sha256(data.encode("utf-8")).hexdigest()
    logger.debug(f"Generated fingerprint: {key}")
    return key


def verdict_cache_key(document: dict, property_name: str, budget: dict, verify: bool):
    """
    Cache key for a property check: the canonical document, the property,
    the budgets and whether the certificate was re-checked.
    """
    key = fingerprint(document, property_name, budget, bool(verify))
    return f"{VERDICT_CACHE_PREFIX}:{key}" if key else None


def get_cached_verdict(
    document: dict, property_name: str, budget: dict, verify: bool = False
) -> Optional[dict]:
    cache_key = verdict_cache_key(document, property_name, budget, verify)
    if not cache_key:
        logger.error(f"Cache key generation failed for property: {property_name}")
        return None
    result = cache.get(cache_key)
    if result:
        logger.debug(f"Verdict for {property_name} found in cache for key {cache_key}")
        return result
    logger.debug(f"No verdict found in cache for key {cache_key}")
    return None


def set_cached_verdict(
    document: dict, property_name: str, budget: dict, verify: bool, result: dict
):
    cache_key = verdict_cache_key(document, property_name, budget, verify)
    if not cache_key:
        logger.error(
            f"Cache key generation failed for property: {property_name}, budget: {budget}"
        )
        return
    try:
        cache.set(cache_key, result)
        logger.info(f"Verdict for {property_name} set in cache for key {cache_key}")
    except Exception as e:
        logger.error(f"Error setting verdict to cache: {e}")
