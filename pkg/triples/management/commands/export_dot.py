from django.core.management.base import CommandError

from desingularization.tails import desingularize
from graphs.dot import to_dot
from triples.commands import TripleCommand
from utils.exceptions import ExitCode, TripleToolkitError


class Command(TripleCommand):
    help = "Render the graph of a triple, or of its desingularization, in Graphviz DOT."

    def add_arguments(self, parser):
        parser.add_argument("file", help="Triple document (JSON)")
        parser.add_argument(
            "--tails",
            action="store_true",
            help="Render the desingularization with tails up to --depth",
        )
        parser.add_argument("--output", help="Write the DOT text to this file")
        super().add_arguments(parser)

    def run(self, **options) -> int:
        triple = self.load_triple(options["file"])
        graph = triple.graph
        if options["tails"]:
            try:
                graph = desingularize(triple, self.config.word_budget).truncate(
                    self.config.depth
                ).graph
            except TripleToolkitError as e:
                raise CommandError(f"{options['file']}: {e.detail}", returncode=e.exit_code)
        dot = to_dot(graph, name=options["file"])
        if options["output"]:
            with open(options["output"], "w", encoding="utf-8") as handle:
                handle.write(dot)
        else:
            self.stdout.write(dot, ending="")
        return ExitCode.OK
