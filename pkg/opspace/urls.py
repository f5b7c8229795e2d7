"""
URL configuration for the opspace project.

/health/ reports liveness; /api/v1/ exposes the run service.
"""

import django
from django.conf import settings
from django.http import JsonResponse
from django.urls import include, path

from runner.services import SCHEMA


def health_check(request):
    """Health check endpoint"""
    return JsonResponse(
        {
            "status": "healthy",
            "service": "opspace",
            "schema": SCHEMA,
            "django_version": django.get_version(),
            "seed": settings.OPSPACE_SEED,
        }
    )


urlpatterns = [
    path("", health_check),
    path("health/", health_check),
    path("api/v1/health/", health_check),
    path("api/v1/", include("runner.urls")),
]
