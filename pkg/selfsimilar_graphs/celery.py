import os

from celery import Celery  # type: ignore

# Set the default Django settings module for the 'celery' program.
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "selfsimilar_graphs.settings")

app = Celery("selfsimilar_graphs")

# Read every CELERY_ prefixed setting from the Django settings module.
app.config_from_object("django.conf:settings", namespace="CELERY")

# Picks up checkers.tasks.
app.autodiscover_tasks()
