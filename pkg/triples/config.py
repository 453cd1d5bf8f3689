import logging
from dataclasses import asdict, dataclass, fields, replace

from django.conf import settings

from checkers.budget import CheckBudget
from triples.exceptions import InvalidRunConfig

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("text", "json")

# RunConfig field -> key of settings.SELFSIMILAR_GRAPHS
SETTINGS_KEYS = {
    "word_budget": "WORD_BUDGET",
    "lasso_budget": "LASSO_BUDGET",
    "circuit_budget": "CIRCUIT_BUDGET",
    "family_budget": "FAMILY_BUDGET",
    "state_budget": "STATE_BUDGET",
    "depth": "TRUNCATION_DEPTH",
    "seed": "RANDOM_SEED",
    "output_format": "OUTPUT_FORMAT",
    "parallelism": "PARALLELISM",
}

BUDGET_FIELDS = (
    "word_budget",
    "lasso_budget",
    "circuit_budget",
    "family_budget",
    "state_budget",
    "depth",
)


@dataclass(frozen=True)
class RunConfig:
    """
    Budgets and output options of one command run.
    """

    word_budget: int = 6
    lasso_budget: int = 4
    circuit_budget: int = 6
    family_budget: int = 6
    state_budget: int = 4096
    depth: int = 6
    seed: int = 0
    output_format: str = "text"
    parallelism: int = 1

    def __post_init__(self):
        for name in BUDGET_FIELDS + ("parallelism",):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                logger.error(f"Rejected run config: {name}={value!r}")
                raise InvalidRunConfig(f"{name} must be an integer >= 1, got {value!r}")
        if self.output_format not in OUTPUT_FORMATS:
            logger.error(f"Rejected run config: output_format={self.output_format!r}")
            raise InvalidRunConfig(
                f"output_format must be one of {', '.join(OUTPUT_FORMATS)}, "
                f"got {self.output_format!r}"
            )

    @classmethod
    def from_settings(cls, **overrides) -> "RunConfig":
        """
        Defaults from ``settings.SELFSIMILAR_GRAPHS``; ``overrides`` whose
        value is None are ignored, so parsed command options can be passed
        straight through.
        """
        configured = getattr(settings, "SELFSIMILAR_GRAPHS", {})
        values = {}
        for name, key in SETTINGS_KEYS.items():
            if key in configured:
                values[name] = configured[key]
        unknown = set(overrides) - {f.name for f in fields(cls)}
        if unknown:
            raise InvalidRunConfig(f"Unknown run config option(s): {sorted(unknown)}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def doubled(self) -> "RunConfig":
        return replace(self, **{name: 2 * getattr(self, name) for name in BUDGET_FIELDS})

    def budget(self) -> CheckBudget:
        return CheckBudget(
            word=self.word_budget,
            lasso=self.lasso_budget,
            circuit=self.circuit_budget,
            family=self.family_budget,
            states=self.state_budget,
            depth=self.depth,
        )

    def as_dict(self) -> dict:
        return asdict(self)


def run_config_from_options(options: dict) -> RunConfig:
    """
    Build the run config of a management command from its parsed options.
    """
    return RunConfig.from_settings(
        word_budget=options.get("budget_word"),
        lasso_budget=options.get("budget_lasso"),
        circuit_budget=options.get("budget_circuit"),
        family_budget=options.get("budget_family"),
        state_budget=options.get("budget_states"),
        depth=options.get("depth"),
        seed=options.get("seed"),
        output_format=options.get("format"),
        parallelism=options.get("parallelism"),
    )
