from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class CombinatConfig(AppConfig):
    name = "combinat"
    verbose_name = "Subsets and signatures"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
