from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class RunnerConfig(AppConfig):
    name = "runner"
    verbose_name = "Command line and API runner"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
        from .suites import SUITES

        logger.info(f"[STARTUP] Verification suites: {', '.join(SUITES)}")
