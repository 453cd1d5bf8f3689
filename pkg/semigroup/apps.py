from django.apps import AppConfig


class SemigroupConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "semigroup"
