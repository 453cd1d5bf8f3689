from checkers.tasks import run_validation
from triples.commands import TripleCommand, combined_exit_code
from triples.reports import validation_lines


class Command(TripleCommand):
    help = "Validate triple documents; exit 0 iff every document is a sealed triple."

    def add_arguments(self, parser):
        parser.add_argument("files", nargs="+", help="Triple documents (JSON)")
        super().add_arguments(parser)

    def run(self, **options) -> int:
        files = options["files"]
        payloads = [self.load_payload(path) for path in files]
        budget = self.config.budget().as_dict()
        results = self.dispatch_tasks(run_validation, [(p, budget) for p in payloads])

        lines = []
        for path, result in zip(files, results):
            lines.extend(validation_lines(path, result))
        data = [{"file": path, **result} for path, result in zip(files, results)]
        self.emit(data, lines)
        return combined_exit_code(results)
