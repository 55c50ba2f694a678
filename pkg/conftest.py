"""Configure Django for running the test suite under pytest (mirrors tox.ini)."""
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "qdvol.conf.ci")
django.setup()
