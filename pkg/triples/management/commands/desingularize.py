import logging

from django.core.management.base import CommandError

from desingularization.corner import CornerMap, verify_corner
from desingularization.tails import desingularize
from graphs.dot import to_dot
from triples.commands import TripleCommand
from triples.documents import dumps, triple_to_dict
from triples.reports import DESINGULARIZATION_HEADER
from utils.exceptions import ExitCode, TripleToolkitError

logger = logging.getLogger(__name__)


class Command(TripleCommand):
    help = (
        "Attach tails to the singular orbits of a triple and print the truncation "
        "at depth N with its symbolic tails, the alpha table and DOT."
    )

    def add_arguments(self, parser):
        parser.add_argument("file", help="Triple document (JSON)")
        parser.add_argument("--output", help="Write the desingularized document to this file")
        parser.add_argument("--dot", help="Write the DOT rendering to this file")
        parser.add_argument(
            "--verify-corner",
            action="store_true",
            help="Check the corner relations of the truncation against the input",
        )
        super().add_arguments(parser)

    def run(self, **options) -> int:
        triple = self.load_triple(options["file"])
        depth = self.config.depth
        try:
            desingularized = desingularize(triple, self.config.word_budget)
            truncated = desingularized.truncate(depth)
            extra = {}
            if not desingularized.is_trivial:
                extra = {
                    "tails": desingularized.tails_as_dict(),
                    "alpha_table": desingularized.alpha_table(depth),
                }
            document = triple_to_dict(truncated, extra)
            corner = None
            if options["verify_corner"]:
                corner = verify_corner(
                    desingularized,
                    CornerMap(desingularized, depth),
                    depth,
                    lasso_size=self.config.lasso_budget,
                )
        except TripleToolkitError as e:
            raise CommandError(f"{options['file']}: {e.detail}", returncode=e.exit_code)

        dot = to_dot(truncated.graph, name=f"{options['file']} at depth {depth}")
        if options["dot"]:
            with open(options["dot"], "w", encoding="utf-8") as handle:
                handle.write(dot)
        if options["output"]:
            with open(options["output"], "w", encoding="utf-8") as handle:
                handle.write(dumps(document))
            logger.info(f"Desingularized document written to {options['output']}")

        data = {"header": DESINGULARIZATION_HEADER, "document": document, "dot": dot}
        lines = [DESINGULARIZATION_HEADER, dumps(document).rstrip("\n")]
        for row in document.get("alpha_table", []):
            lines.append(
                f"# alpha {row['vertex']} j={row['j']}: {row['removed']} -> {row['alpha']}"
            )
        if not options["dot"]:
            lines.append(dot.rstrip("\n"))
        if corner is not None:
            data["corner"] = corner.as_dict()
            lines.append(
                f"# corner: {len(corner.records)} instance(s), {len(corner.failures)} failed"
            )
            lines.extend(f"#   {record}" for record in corner.failures)
        self.emit(data, lines)
        if corner is not None and not corner.ok:
            return ExitCode.REFUTED
        return ExitCode.OK
