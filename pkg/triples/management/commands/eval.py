from django.core.management.base import CommandError

from semigroup.elements import InverseSemigroup
from semigroup.expressions import evaluate_lines
from triples.commands import TripleCommand
from triples.documents import read_text
from triples.reports import eval_lines
from utils.exceptions import ExitCode, TripleToolkitError


class Command(TripleCommand):
    help = (
        "Evaluate semigroup expressions against a triple, one per line: "
        "(alpha|g|beta), 0, s * t, s' and s @ lasso."
    )

    def add_arguments(self, parser):
        parser.add_argument("file", help="Triple document (JSON)")
        parser.add_argument("expressions", nargs="?", help="File with one expression per line")
        parser.add_argument(
            "-e", "--expression", action="append", default=[], help="Expression to evaluate"
        )
        super().add_arguments(parser)

    def run(self, **options) -> int:
        triple = self.load_triple(options["file"])
        text = "\n".join(options["expression"])
        if options["expressions"]:
            try:
                text = read_text(options["expressions"]) + "\n" + text
            except TripleToolkitError as e:
                raise CommandError(str(e.detail), returncode=e.exit_code)
        if not text.strip():
            raise CommandError("No expression given", returncode=ExitCode.USAGE)

        semigroup = InverseSemigroup(triple, self.config.state_budget)
        records = evaluate_lines(semigroup, text)
        self.emit(records, eval_lines(records))
        if any(record["error"] for record in records):
            return ExitCode.DATA_ERROR
        return ExitCode.OK
