from django.apps import AppConfig


class IntersectionsConfig(AppConfig):
    name = "qdvol.intersections"
