from django.apps import AppConfig


class GroupoidConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "groupoid"
