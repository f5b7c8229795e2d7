"""
WSGI config for the opspace project.

It exposes the WSGI callable as a module-level variable named ``application``.
"""

import logging
import os

from django.core.wsgi import get_wsgi_application

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "opspace.settings")

logger = logging.getLogger("startup")

try:
    application = get_wsgi_application()
    logger.info("[WSGI] Django WSGI application created successfully")
except Exception as e:
    logger.error(f"[WSGI] Failed to create Django WSGI application: {e}")
    raise
