from django.apps import AppConfig


class UtilsConfig(AppConfig):
    name = "qdvol.utils"

    def ready(self):
        from . import checks  # noqa
