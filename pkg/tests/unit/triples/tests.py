import json
import logging

from django.test import SimpleTestCase, override_settings

from graphs.exceptions import UnsupportedVertexSet
from symmetry.exceptions import InvalidTriple
from symmetry.groups import IntegerGroup
from tests.utils import corpus_path, corpus_payload
from triples.config import RunConfig, run_config_from_options
from triples.documents import (
    canonical_payload,
    load_triple,
    parse_document,
    serialize_triple,
    triple_from_payload,
)
from triples.exceptions import (
    DocumentParseError,
    DocumentSchemaError,
    InvalidRunConfig,
    UnreadableInput,
)
from triples.reports import check_lines, eval_lines, render, validation_lines
from utils.exceptions import ExitCode

logging.disable(logging.CRITICAL)


class TestDocuments(SimpleTestCase):
    def test_load_corpus_triple(self):
        """Test that a corpus document loads into a sealed triple"""
        triple = load_triple(corpus_path("integers_odometer"))
        self.assertTrue(triple.sealed)
        self.assertIsInstance(triple.group, IntegerGroup)
        self.assertEqual(triple.meta, {"name": "adding machine"})

    def test_malformed_json_reports_position(self):
        """Test that a JSON syntax error carries its line and column"""
        with self.assertRaises(DocumentParseError) as ctx:
            parse_document('{\n  "group": }')
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.exit_code, ExitCode.DATA_ERROR)
        self.assertIn("line 2", str(ctx.exception.detail))

    def test_missing_and_unknown_keys(self):
        """Test that the top level keys are checked"""
        payload = corpus_payload("two_loops")
        del payload["cocycle"]
        with self.assertRaises(DocumentSchemaError):
            triple_from_payload(payload)
        payload = corpus_payload("two_loops")
        payload["extras"] = {}
        with self.assertRaises(DocumentSchemaError) as ctx:
            triple_from_payload(payload)
        self.assertEqual(ctx.exception.field, "$")

    def test_schema_error_names_the_field(self):
        """Test that a malformed edge is reported with its position"""
        payload = corpus_payload("two_loops")
        del payload["graph"]["edges"][1]["source"]
        with self.assertRaises(DocumentSchemaError) as ctx:
            triple_from_payload(payload)
        self.assertEqual(ctx.exception.field, "graph.edges[1]")

    def test_unknown_group_element_is_a_schema_error(self):
        """Test that a cocycle value outside the group is rejected"""
        payload = corpus_payload("z2_swap_two_loops")
        payload["cocycle"]["s"]["edges"]["e0"] = "t"
        with self.assertRaises(DocumentSchemaError) as ctx:
            triple_from_payload(payload)
        self.assertEqual(ctx.exception.field, "cocycle.s.edges.e0")

    def test_symbolic_vertex_set_is_unsupported(self):
        """Test that an infinite vertex set is told apart from a schema error"""
        payload = corpus_payload("one_loop")
        payload["graph"]["vertices"] = {"prefix": [], "period": ["v"]}
        with self.assertRaises(UnsupportedVertexSet) as ctx:
            triple_from_payload(payload)
        self.assertEqual(ctx.exception.exit_code, ExitCode.UNSUPPORTED)

    def test_empty_period_is_rejected(self):
        """Test that a family source sequence needs a period"""
        payload = corpus_payload("receiver_loop_family")
        payload["graph"]["families"][0]["sources"]["period"] = []
        with self.assertRaises(DocumentSchemaError):
            triple_from_payload(payload)

    def test_invalid_triple_strict_and_lenient(self):
        """Test that axiom violations raise unless the triple is loaded leniently"""
        payload = corpus_payload("z2_swapped_components")
        payload["cocycle"] = {"s": {"edges": {"a": "1", "b": "1"}}}
        with self.assertRaises(InvalidTriple) as ctx:
            triple_from_payload(payload)
        self.assertEqual(ctx.exception.exit_code, ExitCode.INVALID_TRIPLE)
        triple = triple_from_payload(payload, strict=False)
        self.assertFalse(triple.sealed)
        self.assertTrue(triple.report.violations)

    def test_missing_file(self):
        """Test that an unreadable path maps to the no input exit code"""
        with self.assertRaises(UnreadableInput) as ctx:
            load_triple("/nonexistent/triple.json")
        self.assertEqual(ctx.exception.exit_code, ExitCode.NO_INPUT)

    def test_serialized_triple_reads_back(self):
        """Test that a written document denotes the same triple"""
        payload = corpus_payload("receiver_loop_family")
        text = serialize_triple(triple_from_payload(payload))
        self.assertEqual(canonical_payload(json.loads(text)), canonical_payload(payload))

    def test_canonical_payload_ignores_layout(self):
        """Test that key order and default entries do not change the canonical form"""
        payload = corpus_payload("z2_swap_two_loops")
        shuffled = {key: payload[key] for key in reversed(list(payload))}
        self.assertEqual(canonical_payload(shuffled), canonical_payload(payload))
        canonical = canonical_payload(payload)
        self.assertEqual(canonical_payload(canonical), canonical)

    def test_meta_is_sanitized(self):
        """Test that control characters are stripped from meta"""
        payload = corpus_payload("one_loop")
        payload["meta"] = {"name": "loop\x07"}
        self.assertEqual(triple_from_payload(payload).meta, {"name": "loop"})


class TestRunConfig(SimpleTestCase):
    def test_defaults_come_from_settings(self):
        """Test that the defaults are read from the toolkit settings"""
        with override_settings(SELFSIMILAR_GRAPHS={"WORD_BUDGET": 3, "OUTPUT_FORMAT": "json"}):
            config = RunConfig.from_settings()
        self.assertEqual(config.word_budget, 3)
        self.assertEqual(config.output_format, "json")
        self.assertEqual(config.lasso_budget, 4)

    def test_options_override_settings(self):
        """Test that parsed flags win and missing flags fall back"""
        with override_settings(SELFSIMILAR_GRAPHS={"TRUNCATION_DEPTH": 9}):
            config = run_config_from_options({"budget_word": 2, "depth": None, "seed": 7})
        self.assertEqual(config.word_budget, 2)
        self.assertEqual(config.depth, 9)
        self.assertEqual(config.seed, 7)

    def test_rejects_nonpositive_budgets(self):
        """Test that budgets below one are a usage error"""
        for field in ("word_budget", "state_budget", "depth", "parallelism"):
            with self.subTest(field=field):
                with self.assertRaises(InvalidRunConfig) as ctx:
                    RunConfig(**{field: 0})
                self.assertEqual(ctx.exception.exit_code, ExitCode.USAGE)
        with self.assertRaises(InvalidRunConfig):
            RunConfig(output_format="yaml")
        with self.assertRaises(InvalidRunConfig):
            RunConfig.from_settings(colour=True)

    def test_doubling_keeps_options(self):
        """Test that doubling scales budgets but not the seed or the format"""
        config = RunConfig(word_budget=3, seed=5, output_format="json").doubled()
        self.assertEqual(config.word_budget, 6)
        self.assertEqual(config.depth, 12)
        self.assertEqual(config.seed, 5)
        self.assertEqual(config.output_format, "json")
        self.assertEqual(config.budget().states, 2 * 4096)


class TestReports(SimpleTestCase):
    def test_validation_lines(self):
        """Test the text rendering of a validation result"""
        ok = {
            "ok": True,
            "report": {"violations": [], "notes": []},
            "singular_orbits": [
                {"representative": "y", "kind": "source", "vertices": ["y"]},
            ],
        }
        self.assertEqual(
            validation_lines("t.json", ok), ["t.json: ok", "  singular orbit of y (source): y"]
        )
        failed = {
            "ok": False,
            "report": {
                "violations": [
                    {"axiom": "compatibility", "message": "mismatch", "witness": {"g": "s"}}
                ]
            },
        }
        self.assertEqual(
            validation_lines("t.json", failed),
            ["t.json: 1 violation(s)", "  [compatibility] mismatch (g=s)"],
        )

    def test_error_results_render_one_line(self):
        """Test that task errors render as a single line"""
        result = {"property": "simple", "error": {"code": "invalid_triple", "detail": "bad"}}
        self.assertEqual(
            check_lines("t.json", result), ["t.json: simple: error [invalid_triple]: bad"]
        )

    def test_check_lines_show_failures(self):
        """Test that failing relation instances are listed"""
        result = {
            "property": "relations",
            "certificate_verified": True,
            "report": {
                "property": "relations",
                "verdict": "refuted",
                "reason": "1 failing instance(s), first: (d)",
                "certificate": {},
                "children": [],
                "notes": [],
                "truncation_depth": None,
                "records": {
                    "checked": 2,
                    "failed": 1,
                    "records": [
                        {"relation": "(a)", "instance": {"e": "a"}, "passed": True},
                        {"relation": "(d)", "instance": {"g": "s"}, "passed": False},
                    ],
                },
            },
        }
        lines = check_lines("t.json", result)
        self.assertEqual(lines[1], "  relations: REFUTED (1 failing instance(s), first: (d))")
        self.assertIn("  2 instance(s) checked, 1 failed", lines)
        self.assertTrue(any(line.strip().startswith("(d)") for line in lines))
        self.assertEqual(lines[-1], "  certificate: verified")

    def test_eval_lines_and_render(self):
        """Test expression records and both output formats"""
        records = [
            {"expression": "e0", "result": "e0", "error": None},
            {"expression": "e9", "result": None, "error": "unknown edge e9"},
        ]
        lines = eval_lines(records)
        self.assertEqual(lines, ["e0  =  e0", "e9  !  unknown edge e9"])
        self.assertEqual(render({}, lines, "text"), "e0  =  e0\ne9  !  unknown edge e9\n")
        rendered = render({"records": records}, lines, "json")
        self.assertEqual(json.loads(rendered), {"records": records})
