"""
Django settings for the opspace project.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/
"""

from pathlib import Path
import os

from decouple import config
from dotenv import load_dotenv

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config(
    "SECRET_KEY",
    default="django-insecure-opspace-local-development-key-change-me",
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = config(
    "ALLOWED_HOSTS",
    default="localhost,127.0.0.1",
    cast=lambda x: [h.strip() for h in x.split(",") if h.strip()],
)


# Application definition

INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "django.contrib.staticfiles",
    "rest_framework",
    "corsheaders",
    "core",
    "combinat",
    "spaces",
    "triple",
    "fock",
    "norms",
    "projections",
    "classify",
    "runner",
]

MIDDLEWARE = [
    "corsheaders.middleware.CorsMiddleware",
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
    # Custom logging middleware
    "opspace.middleware.RequestLoggingMiddleware",
    "opspace.middleware.PerformanceLoggingMiddleware",
]

ROOT_URLCONF = "opspace.urls"

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.debug",
                "django.template.context_processors.request",
            ],
        },
    },
]

WSGI_APPLICATION = "opspace.wsgi.application"


# Database
# The numeric apps own no models; sqlite only satisfies Django's checks.

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}


# Internationalization

LANGUAGE_CODE = "en-us"

TIME_ZONE = "UTC"

USE_I18N = True

USE_TZ = True


# Static files (DRF assets)

STATIC_URL = "static/"
STATIC_ROOT = os.path.join(BASE_DIR, "staticfiles")

if not DEBUG:
    MIDDLEWARE.insert(1, "whitenoise.middleware.WhiteNoiseMiddleware")
    STATICFILES_STORAGE = "whitenoise.storage.CompressedManifestStaticFilesStorage"
else:
    STATICFILES_STORAGE = "django.contrib.staticfiles.storage.StaticFilesStorage"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# REST Framework configuration
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "UNAUTHENTICATED_USER": None,
}

# CORS Settings
CORS_ALLOWED_ORIGINS = config(
    "CORS_ALLOWED_ORIGINS",
    default="http://localhost:3000,http://127.0.0.1:3000",
    cast=lambda x: [
        origin.strip().strip('"').strip("'")
        for origin in x.replace("[", "").replace("]", "").split(",")
        if origin.strip()
    ],
)

CORS_ALLOW_METHODS = [
    "GET",
    "POST",
    "OPTIONS",
]


# Numerics
OPSPACE_SEED = config("OPSPACE_SEED", default=42, cast=int)
OPSPACE_STRUCTURAL_TOL = config("OPSPACE_STRUCTURAL_TOL", default=1e-9, cast=float)
OPSPACE_ITERATIVE_TOL = config("OPSPACE_ITERATIVE_TOL", default=1e-12, cast=float)
OPSPACE_MAX_ITERATIONS = config("OPSPACE_MAX_ITERATIONS", default=10000, cast=int)

# Caps on n: H_n^k level computations and full Fock space computations
OPSPACE_MAX_N_LEVELS = config("OPSPACE_MAX_N_LEVELS", default=8, cast=int)
OPSPACE_MAX_N_FOCK = config("OPSPACE_MAX_N_FOCK", default=12, cast=int)

# Witness sets for cb distance bounds
OPSPACE_WITNESS_SAMPLES = config("OPSPACE_WITNESS_SAMPLES", default=50, cast=int)
OPSPACE_WITNESS_LEVELS = config("OPSPACE_WITNESS_LEVELS", default=4, cast=int)

# Thread fan-out for distance tables and the "all" suite
OPSPACE_WORKERS = config("OPSPACE_WORKERS", default=4, cast=int)

# Slow request threshold for PerformanceLoggingMiddleware
OPSPACE_SLOW_REQUEST_SECONDS = config("OPSPACE_SLOW_REQUEST_SECONDS", default=30.0, cast=float)


LOG_LEVEL = config("LOG_LEVEL", default="INFO")


def _app_logger():
    return {
        "handlers": ["console"],
        "level": LOG_LEVEL,
        "propagate": False,
    }


LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "[{levelname}] {asctime} {name} {process:d} {thread:d} - {message}",
            "style": "{",
        },
        "detailed": {
            "format": "[{levelname}] {asctime} {name} {funcName}:{lineno} - {message}",
            "style": "{",
        },
    },
    "handlers": {
        # stderr, so that reports on stdout stay machine-readable
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "detailed" if DEBUG else "verbose",
        },
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
        "django.request": {
            "handlers": ["console"],
            "level": "WARNING",
            "propagate": False,
        },
        "gunicorn.error": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
        # App-specific loggers
        "core": _app_logger(),
        "combinat": _app_logger(),
        "spaces": _app_logger(),
        "triple": _app_logger(),
        "fock": _app_logger(),
        "norms": _app_logger(),
        "projections": _app_logger(),
        "classify": _app_logger(),
        "runner": _app_logger(),
        # API request logging
        "api_requests": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
        # Startup logging
        "startup": {
            "handlers": ["console"],
            "level": "INFO",
            "propagate": False,
        },
        "": {
            "handlers": ["console"],
            "level": "WARNING",
        },
    },
}
