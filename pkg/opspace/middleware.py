"""
Request logging middleware for the run API
"""

import json
import logging
import time

from django.conf import settings
from django.utils.deprecation import MiddlewareMixin

api_logger = logging.getLogger("api_requests")


def get_client_ip(request):
    """Get the client's IP address"""
    x_forwarded_for = request.META.get("HTTP_X_FORWARDED_FOR")
    if x_forwarded_for:
        return x_forwarded_for.split(",")[0]
    return request.META.get("REMOTE_ADDR")


class RequestLoggingMiddleware(MiddlewareMixin):
    """
    Log every API request with its run parameters, and the outcome with
    status code and timing. Matrix payloads are summarized, not logged.
    """

    def process_request(self, request):
        request.start_time = time.time()
        if request.path.startswith("/static/"):
            return None

        log_data = {
            "method": request.method,
            "path": request.path,
            "ip": get_client_ip(request),
            "content_type": request.META.get("CONTENT_TYPE", ""),
        }
        if request.method == "POST" and "application/json" in log_data["content_type"]:
            try:
                body = json.loads(request.body.decode("utf-8") or "{}")
                if isinstance(body, dict):
                    if "family" in body:
                        body["family"] = f"[{len(body['family'])} elements]"
                    log_data["request_body"] = body
            except (UnicodeDecodeError, ValueError) as e:
                log_data["request_body"] = f"[UNREADABLE BODY: {e}]"

        api_logger.info(f"REQUEST START: {json.dumps(log_data, default=str)}")
        return None

    def process_response(self, request, response):
        if request.path.startswith("/static/"):
            return response

        response_time = time.time() - getattr(request, "start_time", time.time())
        log_data = {
            "method": request.method,
            "path": request.path,
            "status_code": response.status_code,
            "response_time_ms": round(response_time * 1000, 2),
        }

        if response.status_code >= 500:
            api_logger.error(f"REQUEST ERROR: {json.dumps(log_data)}")
        elif response.status_code >= 400:
            api_logger.warning(f"REQUEST WARNING: {json.dumps(log_data)}")
        else:
            api_logger.info(f"REQUEST SUCCESS: {json.dumps(log_data)}")
        return response

    def process_exception(self, request, exception):
        log_data = {
            "method": request.method,
            "path": request.path,
            "ip": get_client_ip(request),
            "exception_type": type(exception).__name__,
            "exception_message": str(exception),
        }
        api_logger.error(f"REQUEST EXCEPTION: {json.dumps(log_data)}", exc_info=True)
        return None


class PerformanceLoggingMiddleware(MiddlewareMixin):
    """Log requests slower than OPSPACE_SLOW_REQUEST_SECONDS"""

    def __init__(self, get_response):
        self.slow_request_threshold = getattr(settings, "OPSPACE_SLOW_REQUEST_SECONDS", 30.0)
        super().__init__(get_response)

    def process_request(self, request):
        request.performance_start_time = time.time()
        return None

    def process_response(self, request, response):
        if hasattr(request, "performance_start_time"):
            response_time = time.time() - request.performance_start_time
            if response_time > self.slow_request_threshold:
                log_data = {
                    "path": request.path,
                    "method": request.method,
                    "response_time_ms": round(response_time * 1000, 2),
                    "status_code": response.status_code,
                }
                api_logger.warning(f"SLOW REQUEST: {json.dumps(log_data)}")
        return response
