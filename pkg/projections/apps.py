from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class ProjectionsConfig(AppConfig):
    name = "projections"
    verbose_name = "Contractive projections"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
