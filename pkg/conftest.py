"""Pytest wiring: configure Django the way ``manage.py test`` does."""

import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "selfsimilar_graphs.settings")
django.setup()
