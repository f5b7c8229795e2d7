from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class ClassifyConfig(AppConfig):
    name = "classify"
    verbose_name = "Rank-one classification"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
