from checkers.pipeline import PROPERTIES
from checkers.tasks import run_property_check
from triples.commands import TripleCommand, combined_exit_code
from triples.reports import check_lines
from utils.exceptions import ExitCode


class Command(TripleCommand):
    help = (
        "Decide a property of triple documents. Exit 0 Proven, 1 Refuted, "
        "3 Unknown; with several files the most severe code wins."
    )

    def add_arguments(self, parser):
        parser.add_argument("property", help=f"One of: {', '.join(PROPERTIES)}")
        parser.add_argument("files", nargs="+", help="Triple documents (JSON)")
        parser.add_argument(
            "--verify-certificate",
            action="store_true",
            help="Re-check every certificate with the independent verifier",
        )
        super().add_arguments(parser)

    def run(self, **options) -> int:
        property_name = options["property"]
        if property_name not in PROPERTIES:
            self.stderr.write(
                f"Unknown property {property_name!r}; expected one of {', '.join(PROPERTIES)}"
            )
            return ExitCode.USAGE
        files = options["files"]
        verify = options["verify_certificate"]
        payloads = [self.load_payload(path) for path in files]
        budget = self.config.budget().as_dict()
        results = self.dispatch_tasks(
            run_property_check, [(p, property_name, budget, verify) for p in payloads]
        )

        lines = []
        for path, result in zip(files, results):
            lines.extend(check_lines(path, result))
        data = {
            "property": property_name,
            "config": self.config.as_dict(),
            "results": [{"file": path, **result} for path, result in zip(files, results)],
        }
        self.emit(data, lines)
        return combined_exit_code(results)
