import logging

from django.core import checks
from django.core.management.base import SystemCheckError
from django.test.runner import DiscoverRunner

logger = logging.getLogger(__name__)


class SystemCheckRunner(DiscoverRunner):
    """
    Test runner that runs the system checks through the checks framework.

    The toolkit's own ``check`` command takes the place of Django's, so the
    default runner cannot reach the system checks through ``call_command``.
    """

    def run_checks(self, databases):
        messages = checks.run_checks(databases=databases)
        serious = [m for m in messages if m.is_serious() and not m.is_silenced()]
        for message in messages:
            if message not in serious and not message.is_silenced():
                logger.warning(f"System check: {message}")
        if serious:
            raise SystemCheckError(
                "System check identified some issues:\n"
                + "\n".join(str(message) for message in serious)
            )
        if self.verbosity >= 2:
            self.log(f"System check identified no issues ({len(messages)} silenced).")
