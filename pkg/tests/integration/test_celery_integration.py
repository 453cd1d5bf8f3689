"""
Integration tests for the Celery tasks behind the management commands.

Tasks run eagerly; results must survive the JSON round trip a real broker
would impose, and verdicts are memoised in the Django cache.
"""

import json
import logging
from unittest.mock import patch

from celery import group  # type: ignore
from django.core.cache import cache
from django.test import SimpleTestCase, override_settings

from checkers.pipeline import check_property
from checkers.tasks import run_property_check, run_validation
from tests.utils import corpus_payload, small_budget
from utils.exceptions import ExitCode

logging.disable(logging.CRITICAL)

CELERY_TEST_SETTINGS = {
    "CELERY_TASK_ALWAYS_EAGER": True,
    "CELERY_TASK_EAGER_PROPAGATES": False,
    "CELERY_BROKER_URL": "memory://",
    "CELERY_RESULT_BACKEND": "cache+memory://",
    "CACHES": {
        "default": {
            "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
        }
    },
}


@override_settings(**CELERY_TEST_SETTINGS)
class CeleryTaskIntegrationTests(SimpleTestCase):
    def setUp(self):
        cache.clear()
        self.budget = small_budget().as_dict()

    def test_validation_task(self):
        """Test that the validation task reports singular orbits of a sealed triple"""
        result = run_validation.delay(corpus_payload("source_example"), self.budget)
        self.assertTrue(result.successful())
        data = result.get()
        self.assertTrue(data["ok"])
        self.assertEqual(data["exit_code"], ExitCode.OK)
        self.assertEqual(
            data["singular_orbits"],
            [{"representative": "y", "kind": "source", "vertices": ["y"]}],
        )
        self.assertEqual(json.loads(json.dumps(data)), data)

    def test_validation_task_reports_violations(self):
        """Test that an invalid triple comes back with its violations"""
        payload = corpus_payload("z2_swapped_components")
        payload["cocycle"] = {"s": {"edges": {"a": "1", "b": "1"}}}
        data = run_validation.delay(payload, self.budget).get()
        self.assertFalse(data["ok"])
        self.assertEqual(data["exit_code"], ExitCode.INVALID_TRIPLE)
        self.assertTrue(data["report"]["violations"])

    def test_property_task(self):
        """Test that the property task returns a serializable verdict report"""
        data = run_property_check.delay(
            corpus_payload("two_loops"), "pureinf", self.budget, True
        ).get()
        self.assertEqual(data["exit_code"], ExitCode.OK)
        self.assertEqual(data["report"]["verdict"], "proven")
        self.assertTrue(data["certificate_verified"])
        self.assertEqual(json.loads(json.dumps(data)), data)

    def test_property_task_uses_cache(self):
        """Test that a second check of the same triple skips the checker"""
        payload = corpus_payload("one_loop")
        with patch("checkers.tasks.check_property", wraps=check_property) as checker:
            first = run_property_check.delay(payload, "simple", self.budget).get()
            second = run_property_check.delay(
                corpus_payload("one_loop"), "simple", self.budget
            ).get()
        self.assertEqual(checker.call_count, 1)
        self.assertEqual(first, second)
        self.assertEqual(first["exit_code"], ExitCode.REFUTED)

    def test_cache_distinguishes_budgets(self):
        """Test that a different budget is not served from the cache"""
        payload = corpus_payload("one_loop")
        doubled = small_budget().doubled().as_dict()
        with patch("checkers.tasks.check_property", wraps=check_property) as checker:
            run_property_check.delay(payload, "simple", self.budget).get()
            run_property_check.delay(payload, "simple", doubled).get()
        self.assertEqual(checker.call_count, 2)

    def test_unknown_property(self):
        """Test that an unknown property is reported as a usage error"""
        data = run_property_check.delay(corpus_payload("one_loop"), "amenable", self.budget).get()
        self.assertEqual(data["exit_code"], ExitCode.USAGE)
        self.assertEqual(data["error"]["code"], "unknown_property")

    def test_invalid_triple_is_an_error_result(self):
        """Test that an axiom violation is reported instead of raised"""
        payload = corpus_payload("z2_swapped_components")
        payload["cocycle"] = {"s": {"edges": {"a": "1", "b": "1"}}}
        data = run_property_check.delay(payload, "simple", self.budget).get()
        self.assertEqual(data["exit_code"], ExitCode.INVALID_TRIPLE)
        self.assertEqual(data["error"]["code"], "invalid_triple")

    def test_relations_accept_unsealed_triples(self):
        """Test that relations are checked on a triple that fails validation"""
        payload = corpus_payload("z2_swapped_components")
        payload["cocycle"] = {"s": {"edges": {"a": "1", "b": "1"}}}
        budget = {**self.budget, "depth": 3}
        data = run_property_check.delay(payload, "relations", budget).get()
        self.assertEqual(data["exit_code"], ExitCode.REFUTED)
        self.assertGreater(data["report"]["records"]["failed"], 0)

    def test_group_of_tasks(self):
        """Test that several checks can run as one Celery group"""
        names = ["two_loops", "one_loop", "source_example"]
        job = group(
            run_property_check.s(corpus_payload(name), "simple", self.budget) for name in names
        )
        results = job.apply_async().get()
        self.assertEqual(
            [result["exit_code"] for result in results],
            [ExitCode.OK, ExitCode.REFUTED, ExitCode.OK],
        )
