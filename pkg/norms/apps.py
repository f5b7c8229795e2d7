from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class NormsConfig(AppConfig):
    name = "norms"
    verbose_name = "Level norms and cb distances"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
