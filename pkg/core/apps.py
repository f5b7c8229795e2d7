from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class CoreConfig(AppConfig):
    name = "core"
    verbose_name = "Dense matrix kernel"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
        try:
            import numpy

            logger.info(f"[STARTUP] numpy {numpy.__version__} loaded")
        except Exception as e:
            logger.error(f"[STARTUP] Error loading numpy: {e}")
