from django.apps import AppConfig
import logging

logger = logging.getLogger("startup")


class FockConfig(AppConfig):
    name = "fock"
    verbose_name = "Antisymmetric Fock space"

    def ready(self):
        logger.info(f"[STARTUP] {self.name} app is ready")
        try:
            import scipy.sparse

            logger.info(f"[STARTUP] scipy.sparse loaded: {scipy.sparse.__name__}")
        except Exception as e:
            logger.error(f"[STARTUP] Error loading scipy.sparse: {e}")
