from django.apps import AppConfig


class DesingularizationConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "desingularization"
