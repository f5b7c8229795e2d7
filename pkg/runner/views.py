"""
Run API views: the same service as the opspace management command
"""

import logging

from rest_framework import status
from rest_framework.decorators import api_view, permission_classes
from rest_framework.permissions import AllowAny
from rest_framework.response import Response

from core.exceptions import ConfigurationError

from .serializers import RunConfigSerializer
from .services import OpspaceService

logger = logging.getLogger(__name__)


def _run(request, command):
    payload = {**request.data, "command": command}
    serializer = RunConfigSerializer(data=payload)
    if not serializer.is_valid():
        return Response(
            {"success": False, "errors": serializer.errors},
            status=status.HTTP_400_BAD_REQUEST,
        )

    service = OpspaceService()
    try:
        code, report = service.run(serializer.validated_data)
    except ConfigurationError as e:
        return Response({"success": False, "message": str(e)}, status=status.HTTP_400_BAD_REQUEST)

    if code == 0:
        return Response({"success": True, "data": report})
    logger.warning(f"{command} request finished with failed checks")
    return Response(
        {"success": False, "data": report, "message": report.get("error", "One or more checks failed")},
        status=status.HTTP_422_UNPROCESSABLE_ENTITY,
    )


@api_view(["POST"])
@permission_classes([AllowAny])
def build(request):
    """Basis of a space"""
    return _run(request, "build")


@api_view(["POST"])
@permission_classes([AllowAny])
def verify(request):
    """Run a verification suite"""
    return _run(request, "verify")


@api_view(["POST"])
@permission_classes([AllowAny])
def distance(request):
    """cb distance bounds for a pair, a trend or a whole table"""
    return _run(request, "distance")


@api_view(["POST"])
@permission_classes([AllowAny])
def classify(request):
    """Classify a family of collinear partial isometries"""
    return _run(request, "classify")
