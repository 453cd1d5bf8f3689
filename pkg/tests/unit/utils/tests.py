import logging

from django.core.cache import cache
from django.test import SimpleTestCase

from utils.exceptions import ExitCode, TripleToolkitError
from utils.security import InvalidIdentifier, sanitize_meta, validate_identifier
from utils.sequences import EventuallyPeriodic, InvalidSequence
from utils.utils import fingerprint, get_cached_verdict, set_cached_verdict, verdict_cache_key

logging.disable(logging.CRITICAL)


class TestEventuallyPeriodic(SimpleTestCase):
    def test_indexing_starts_at_one(self):
        """Test that the prefix is read first and the period repeats after it"""
        seq = EventuallyPeriodic.of(["a"], ["b", "c"])
        self.assertEqual(list(seq.take(6)), ["a", "b", "c", "b", "c", "b"])
        with self.assertRaises(IndexError):
            seq.at(0)

    def test_canonical_form_makes_equal_sequences_equal(self):
        """Test that redundant prefixes and repeated periods are normalized away"""
        self.assertEqual(
            EventuallyPeriodic.of(["a"], ["b", "a"]), EventuallyPeriodic.of([], ["a", "b"])
        )
        self.assertEqual(
            EventuallyPeriodic.of([], ["x", "x", "x"]), EventuallyPeriodic.constant("x")
        )

    def test_empty_period_is_rejected(self):
        """Test that a sequence without a period cannot be built"""
        with self.assertRaises(InvalidSequence):
            EventuallyPeriodic.of(["a"], [])

    def test_zip_with_combines_pointwise(self):
        """Test that zipping sequences with different periods uses the common period"""
        left = EventuallyPeriodic.of([], [1, 2])
        right = EventuallyPeriodic.of([10], [0, 0, 100])
        combined = left.zip_with(right, lambda a, b: a + b)
        for i in range(1, 13):
            self.assertEqual(combined.at(i), left.at(i) + right.at(i))

    def test_as_dict_renders_values(self):
        """Test that the JSON form keeps prefix and period apart"""
        seq = EventuallyPeriodic.of([1], [2])
        self.assertEqual(seq.as_dict(), {"prefix": ["1"], "period": ["2"]})


class TestSecurity(SimpleTestCase):
    def test_identifiers_allow_tail_names(self):
        """Test that the tilde used by tail names is accepted"""
        self.assertEqual(validate_identifier("y~v3"), "y~v3")

    def test_identifiers_reject_syntax_characters(self):
        """Test that characters of the element syntax are rejected in names"""
        for bad in ("a|b", "e[1]", "x y", "", None, 'q"'):
            with self.assertRaises(InvalidIdentifier):
                validate_identifier(bad)

    def test_sanitize_meta_strips_control_characters(self):
        """Test that control characters are removed at every nesting level"""
        meta = {"name\x00": "loop\x07", "tags": ["a\x1b", 3]}
        self.assertEqual(sanitize_meta(meta), {"name": "loop", "tags": ["a", 3]})


class TestExceptions(SimpleTestCase):
    def test_defaults_and_overrides(self):
        """Test that errors fall back to their default detail and code"""
        error = TripleToolkitError()
        self.assertEqual(error.exit_code, ExitCode.DATA_ERROR)
        self.assertEqual(error.as_dict(), {"code": "error", "detail": error.default_detail})
        custom = TripleToolkitError("broken", code="custom")
        self.assertEqual(custom.as_dict(), {"code": "custom", "detail": "broken"})

    def test_invalid_triple_outranks_unknown(self):
        """Test that input errors dominate every verdict when codes are combined"""
        self.assertEqual(
            ExitCode.most_severe([ExitCode.UNKNOWN, ExitCode.INVALID_TRIPLE]),
            ExitCode.INVALID_TRIPLE,
        )
        self.assertEqual(
            ExitCode.most_severe([ExitCode.REFUTED, ExitCode.UNKNOWN]), ExitCode.UNKNOWN
        )
        self.assertEqual(
            ExitCode.most_severe([ExitCode.INVALID_TRIPLE, ExitCode.UNSUPPORTED]),
            ExitCode.UNSUPPORTED,
        )
        self.assertEqual(ExitCode.most_severe([]), ExitCode.OK)


class TestVerdictCache(SimpleTestCase):
    def setUp(self):
        cache.clear()
        self.document = {"group": {"kind": "trivial"}, "graph": {"vertices": ["v"]}}
        self.budget = {"word": 6, "lasso": 4}

    def test_fingerprint_ignores_key_order(self):
        """Test that dict key order does not change the fingerprint"""
        self.assertEqual(fingerprint({"a": 1, "b": 2}), fingerprint({"b": 2, "a": 1}))

    def test_fingerprint_of_unserializable_parts_is_none(self):
        """Test that objects JSON cannot encode yield no fingerprint"""
        self.assertIsNone(fingerprint(object()))

    def test_cache_key_depends_on_every_part(self):
        """Test that property, budget and verification all change the key"""
        key = verdict_cache_key(self.document, "simple", self.budget, False)
        self.assertTrue(key.startswith("verdict:"))
        self.assertNotEqual(key, verdict_cache_key(self.document, "pureinf", self.budget, False))
        self.assertNotEqual(key, verdict_cache_key(self.document, "simple", {"word": 7}, False))
        self.assertNotEqual(key, verdict_cache_key(self.document, "simple", self.budget, True))

    def test_cached_verdict_round_trip(self):
        """Test that a stored verdict is returned for the same request only"""
        result = {"property": "simple", "exit_code": 0}
        self.assertIsNone(get_cached_verdict(self.document, "simple", self.budget))
        set_cached_verdict(self.document, "simple", self.budget, False, result)
        self.assertEqual(get_cached_verdict(self.document, "simple", self.budget), result)
        self.assertIsNone(get_cached_verdict(self.document, "simple", self.budget, True))
