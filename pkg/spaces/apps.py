from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class SpacesConfig(AppConfig):
    name = "spaces"
    verbose_name = "Hilbertian operator spaces"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
