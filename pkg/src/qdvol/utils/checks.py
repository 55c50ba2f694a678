import os

from django.conf import settings
from django.core.checks import Error, Warning, register


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@register()
def check_truncation_margin(app_configs, **kwargs):
    margin = getattr(settings, "QDVOL_TRUNCATION_MARGIN", 0)
    if _is_int(margin) and margin >= 0:
        return []
    return [
        Error(
            "QDVOL_TRUNCATION_MARGIN must be a non-negative integer, got %r" % (margin,),
            hint="Set the QDVOL_TRUNCATION_MARGIN environment variable to 0 or more",
            obj="settings.QDVOL_TRUNCATION_MARGIN",
            id="utils.E001",
        )
    ]


@register()
def check_workers(app_configs, **kwargs):
    workers = getattr(settings, "QDVOL_WORKERS", 1)
    if _is_int(workers) and workers >= 1:
        return []
    return [
        Error(
            "QDVOL_WORKERS must be a positive integer, got %r" % (workers,),
            hint="Set the QDVOL_WORKERS environment variable to 1 or more",
            obj="settings.QDVOL_WORKERS",
            id="utils.E002",
        )
    ]


@register()
def check_cache_dir(app_configs, **kwargs):
    """
    A cache directory that exists but cannot be written to is skipped at
    runtime; flag it here so the operator knows results are not persisted.
    """
    cache_dir = getattr(settings, "QDVOL_CACHE_DIR", None)
    if not cache_dir or not os.path.isdir(cache_dir):
        return []
    if os.access(cache_dir, os.W_OK):
        return []
    return [
        Warning(
            "The F-table cache directory %s is not writable" % cache_dir,
            hint="Fix the permissions or point QDVOL_CACHE_DIR elsewhere",
            obj="settings.QDVOL_CACHE_DIR",
            id="utils.W001",
        )
    ]
