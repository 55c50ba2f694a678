import os

os.environ.setdefault(
    "SECRET_KEY", "u3v(2zq8-dev-only-7c!m1x@k$f0r9w%t6h5p^s4j#e2b&n8y"
)

from .base import *  # noqa isort:skip

#
# Standard Django settings.
#

DEBUG = True

LOGGING["loggers"].update(
    {
        "qdvol": {"handlers": ["console"], "level": "DEBUG", "propagate": True},
        "django": {"handlers": ["console"], "level": "INFO", "propagate": True},
        "performance": {"handlers": ["console"], "level": "INFO", "propagate": True},
    }
)

#
# Custom settings
#
ENVIRONMENT = "development"

# Override settings with local settings.
try:
    from .local import *  # noqa
except ImportError:
    pass
