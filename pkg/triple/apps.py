from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class TripleConfig(AppConfig):
    name = "triple"
    verbose_name = "JC*-triple algebra"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
