"""
Shared plumbing of the management commands: budget flags, document
loading, task dispatch and exit codes.
"""

import logging
from typing import Optional

from celery import group  # type: ignore
from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from symmetry.triple import Triple
from triples.config import OUTPUT_FORMATS, run_config_from_options
from triples.documents import parse_document, read_text, triple_from_payload
from triples.reports import render
from utils.exceptions import ExitCode, TripleToolkitError

logger = logging.getLogger(__name__)


class TripleCommand(BaseCommand):
    """
    Base class of the toolkit commands. Subclasses implement ``run`` and
    return an exit code; a nonzero code leaves through CommandError so the
    process exits with it.
    """

    def add_arguments(self, parser):
        parser.add_argument("--budget-word", type=int, help="Word length bound for the integers")
        parser.add_argument("--budget-lasso", type=int, help="Description size of lassos")
        parser.add_argument("--budget-circuit", type=int, help="Circuit iteration bound")
        parser.add_argument("--budget-family", type=int, help="Family truncation index")
        parser.add_argument("--budget-states", type=int, help="State graph size bound")
        parser.add_argument("--depth", type=int, help="Truncation depth N of tails")
        parser.add_argument("--format", choices=OUTPUT_FORMATS, help="Report format")
        parser.add_argument("--seed", type=int, help="Random seed, echoed in JSON reports")
        parser.add_argument(
            "--parallelism", type=int, help="Dispatch files to Celery workers when above 1"
        )

    def handle(self, *args, **options):
        try:
            self.config = run_config_from_options(options)
        except TripleToolkitError as e:
            raise CommandError(str(e.detail), returncode=e.exit_code)
        code = self.run(**options)
        if code != ExitCode.OK:
            raise CommandError(f"exit code {code}", returncode=code)

    def run(self, **options) -> int:
        raise NotImplementedError

    # Input

    def load_payload(self, path: str) -> dict:
        try:
            return parse_document(read_text(path))
        except TripleToolkitError as e:
            raise CommandError(f"{path}: {e.detail}", returncode=e.exit_code)

    def load_triple(self, path: str, strict: bool = True) -> Triple:
        payload = self.load_payload(path)
        try:
            return triple_from_payload(
                payload, strict=strict, word_budget=self.config.word_budget
            )
        except TripleToolkitError as e:
            raise CommandError(f"{path}: {e.detail}", returncode=e.exit_code)

    # Dispatch

    def dispatch_tasks(self, task, arguments: list[tuple]) -> list[dict]:
        """
        Run ``task`` once per argument tuple and return the results in input
        order. Tasks run in process unless parallelism is above 1 and Celery
        is not eager.
        """
        if self.config.parallelism > 1 and not settings.CELERY_TASK_ALWAYS_EAGER:
            logger.info(f"Dispatching {len(arguments)} task(s) to Celery workers")
            return group(task.s(*args) for args in arguments).apply_async().get()
        return [task.apply(args=args).get() for args in arguments]

    # Output

    def emit(self, data, lines: list[str], output: Optional[str] = None):
        text = render(data, lines, self.config.output_format)
        if output:
            with open(output, "w", encoding="utf-8") as handle:
                handle.write(text)
            logger.info(f"Report written to {output}")
        else:
            self.stdout.write(text, ending="")


def combined_exit_code(results: list[dict]) -> int:
    """
    The most severe exit code over all files: input errors, an invalid
    triple included, dominate Unknown, which dominates Refuted.
    """
    return ExitCode.most_severe(result["exit_code"] for result in results)
