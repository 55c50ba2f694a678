import os
import tempfile

os.environ.setdefault("SECRET_KEY", "dummy")

from .base import *  # noqa isort:skip

#
# Standard Django settings.
#

DEBUG = False

DATABASES = {"default": {"ENGINE": "django.db.backends.sqlite3", "NAME": ":memory:"}}

LOGGING["loggers"].update(
    {
        "qdvol": {"handlers": ["null"], "level": "WARNING", "propagate": True},
        "performance": {"handlers": ["null"], "level": "INFO", "propagate": False},
        "django": {"handlers": ["django"], "level": "WARNING", "propagate": True},
    }
)

#
# Custom settings
#

ENVIRONMENT = "ci"

# never touch the cache of the working copy
QDVOL_CACHE_DIR = tempfile.mkdtemp(prefix="qdvol-cache-")
QDVOL_TRUNCATION_MARGIN = 0
QDVOL_WORKERS = 1
