"""
Django settings for the selfsimilar_graphs project.

The project has no web surface: Django provides settings, logging, the
cache, the test runner and the management commands that front the toolkit.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.1/ref/settings/
"""

import os
import sys
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

TESTING = "test" in sys.argv

# Nothing is signed; the key only satisfies Django's startup checks.
SECRET_KEY: str = os.getenv("DJANGO_SECRET_KEY", "selfsimilar-graphs-unsigned")

DEBUG = os.getenv("DEBUG", "False").lower() == "true"

ALLOWED_HOSTS: list = []

# Application definition

INSTALLED_APPS = [
    "graphs",
    "symmetry",
    "semigroup",
    "groupoid",
    "desingularization",
    "checkers",
    "triples",
]

if TESTING:
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.sqlite3",
            "NAME": ":memory:",
        }
    }
else:
    DATABASES = {
        "default": {
            "ENGINE": "django.db.backends.sqlite3",
            "NAME": os.getenv("DB_NAME", str(BASE_DIR / "db.sqlite3")),
        }
    }

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Django's own "check" command is replaced by the property checker.
TEST_RUNNER = "selfsimilar_graphs.test_runner.SystemCheckRunner"

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = False

USE_TZ = True


# Toolkit defaults. Every entry can be overridden with an SSG_ prefixed
# environment variable and, per run, with the command line flags.
def _int_env(name: str, default: int) -> int:
    return int(os.getenv(f"SSG_{name}", default))


SELFSIMILAR_GRAPHS = {
    "WORD_BUDGET": _int_env("WORD_BUDGET", 6),
    "LASSO_BUDGET": _int_env("LASSO_BUDGET", 4),
    "CIRCUIT_BUDGET": _int_env("CIRCUIT_BUDGET", 6),
    "FAMILY_BUDGET": _int_env("FAMILY_BUDGET", 6),
    "STATE_BUDGET": _int_env("STATE_BUDGET", 4096),
    "TRUNCATION_DEPTH": _int_env("TRUNCATION_DEPTH", 6),
    "RANDOM_SEED": _int_env("RANDOM_SEED", 0),
    "OUTPUT_FORMAT": os.getenv("SSG_OUTPUT_FORMAT", "text"),
    "PARALLELISM": _int_env("PARALLELISM", 1),
}


# Cache for memoised verdicts
CACHE_REDIS_URL = os.environ.get("CACHE_REDIS_URL")

if CACHE_REDIS_URL and not TESTING:
    CACHES = {
        "default": {
            "BACKEND": "django.core.cache.backends.redis.RedisCache",
            "LOCATION": CACHE_REDIS_URL,
            "TIMEOUT": int(os.environ.get("CACHE_TIMEOUT_SECONDS", 7200)),
        }
    }
else:
    CACHES = {
        "default": {
            "BACKEND": "django.core.cache.backends.locmem.LocMemCache",
            "LOCATION": "selfsimilar-graphs",
        }
    }


# Celery settings
# Commands run their tasks in process unless SSG_CELERY_EAGER is switched off
# and a broker is configured.
if TESTING:
    CELERY_TASK_ALWAYS_EAGER = True
    CELERY_TASK_EAGER_PROPAGATES = True
    CELERY_BROKER_URL = "memory://"  # In-memory broker for tests
    CELERY_RESULT_BACKEND = "cache+memory://"
else:
    CELERY_TASK_ALWAYS_EAGER = os.getenv("SSG_CELERY_EAGER", "True").lower() == "true"
    CELERY_BROKER_URL = os.environ.get("CELERY_BROKER_URL", "redis://localhost:6379/0")
    CELERY_RESULT_BACKEND = os.environ.get(
        "CELERY_RESULT_BACKEND", "redis://localhost:6379/0"
    )

CELERY_TASK_SERIALIZER = "json"
CELERY_RESULT_SERIALIZER = "json"
CELERY_ACCEPT_CONTENT = ["json"]
CELERY_TIMEZONE = TIME_ZONE

SENTRY_DSN: str | None = os.getenv("SENTRY_DSN")

if SENTRY_DSN:
    import sentry_sdk

    sentry_sdk.init(
        dsn=SENTRY_DSN,
        # Set traces_sample_rate to 1.0 to capture 100%
        # of transactions for tracing.
        traces_sample_rate=float(os.getenv("SENTRY_TRACES_SAMPLE_RATE", 1.0)),
        send_default_pii=False,
    )

LOG_FILE_PATH = os.getenv("LOG_FILE_PATH", str(BASE_DIR / "logs" / "selfsimilar_graphs.log"))
Path(LOG_FILE_PATH).parent.mkdir(parents=True, exist_ok=True)

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

_APP_LOGGER = {
    "handlers": ["console", "file"],
    "level": "DEBUG",
    "propagate": False,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {process:d} {thread:d} {message}",
            "style": "{",
        },
        "simple": {
            "format": "{levelname} {message}",
            "style": "{",
        },
    },
    "handlers": {
        # stderr, so command output on stdout stays machine readable
        "console": {
            "level": LOG_LEVEL,
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "simple",
        },
        "file": {
            "level": "DEBUG",  # Log everything to the file
            "class": "logging.handlers.RotatingFileHandler",
            "filename": LOG_FILE_PATH,
            "maxBytes": 1024 * 1024 * 15,  # 15MB
            "backupCount": 5,  # Keep 5 rotated log files
            "formatter": "verbose",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["console", "file"],
            "level": "INFO",
            "propagate": True,
        },
        "graphs": _APP_LOGGER,
        "symmetry": _APP_LOGGER,
        "semigroup": _APP_LOGGER,
        "groupoid": _APP_LOGGER,
        "desingularization": _APP_LOGGER,
        "checkers": _APP_LOGGER,
        "triples": _APP_LOGGER,
        "utils": _APP_LOGGER,
    },
}
