from .base import *

#
# Standard Django settings.
#

DEBUG = False

ADMINS = (
    # ('Your Name', 'your_email@example.com'),
)

# Production logging facility.
LOGGING["loggers"].update(
    {
        "": {"handlers": ["project"], "level": "WARNING", "propagate": False},
        "qdvol": {"handlers": ["project"], "level": "INFO", "propagate": True},
        "django": {"handlers": ["django"], "level": "INFO", "propagate": True},
    }
)
if SENTRY_DSN:
    LOGGING["loggers"][""]["handlers"].append("sentry")
    LOGGING["loggers"]["qdvol"]["handlers"].append("sentry")

#
# Custom settings
#

ENVIRONMENT = "production"
