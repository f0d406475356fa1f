from __future__ import annotations

import logging
import os

from .settings import Settings

logger = logging.getLogger(__name__)


class Logs:
    @staticmethod
    def setup() -> None:
        """
        Standardise logging output across all modules

        :rtype: None
        """
        os.makedirs(os.path.dirname(Settings.LOG_DIR), exist_ok=True)
        if Settings.DEV:
            level = Settings.LOG_DEV_LEVEL
            log_format = Settings.LOG_FORMAT_DEV
        elif Settings.DEBUG:
            level = logging.DEBUG
            log_format = Settings.LOG_FORMAT_DEBUG
        else:
            level = logging.INFO
            log_format = Settings.LOG_FORMAT_INFO

        logging.basicConfig(
            format=log_format,
            level=level,
            handlers=[
                logging.FileHandler(Settings.LOG_DIR, mode=Settings.LOG_MODE),
                logging.StreamHandler(),
            ],
        )

        logging.info(
            f"Started logging to {Settings.LOG_DIR} at level "
            f"{logging.getLevelName(logging.getLogger().getEffectiveLevel())}"
        )


class Loggable:
    """
    Base for classes which issue log messages with a class specific prefix
    """

    log_prefix: str = __name__

    def _log(self: Loggable, level: str, msg: str) -> None:
        """
        Issue a log message with this classes specific log prefix
        """
        # Loggers are looked up per prefix so records carry the module name
        class_logger = logging.getLogger(self.log_prefix)
        match level:
            case Settings.LOG_INFO:
                class_logger.info(f"{self.log_prefix}: {msg}")
            case Settings.LOG_DEBUG:
                class_logger.debug(f"{self.log_prefix}: {msg}")
            case Settings.LOG_WARNING:
                class_logger.warning(f"{self.log_prefix}: {msg}")
            case Settings.LOG_DEV:
                class_logger.log(
                    level=Settings.LOG_DEV_LEVEL,
                    msg=f"{self.log_prefix}: {msg}",
                )
