import logging
import os
import socket
import sys

import uvicorn

from shardlab.config.settings import settings, setup_logging

setup_logging(os.getenv("SHARDLAB_LOG_LEVEL", "DEBUG" if settings.DEBUG else "INFO"))
logger = logging.getLogger(__name__)


def port_is_free(host: str, port: int) -> bool:
    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as s:
        try:
            s.bind((host, port))
        except OSError:
            return False
    return True


def pick_port(host: str, first: int, span: int) -> int:
    """First free port in [first, first + span)"""
    for port in range(first, min(first + span, 65536)):
        if port_is_free(host, port):
            return port
        logger.debug(f"Port {port} on {host} is taken")
    raise RuntimeError(f"shardlab: no free port in {first}-{first + span - 1} on {host}; "
                       f"set PORT or SHARDLAB_PORT_SEARCH")


if __name__ == "__main__":
    try:
        settings.validate()
        os.makedirs(settings.OUTPUT_DIR, exist_ok=True)
        try:
            port = pick_port(settings.HOST, settings.PORT, settings.PORT_SEARCH)
        except RuntimeError as e:
            logger.error(str(e))
            sys.exit(1)
        logger.info(f"Serving shardlab on http://{settings.HOST}:{port} (outputs in {settings.OUTPUT_DIR})")

        uvicorn.run(
            "shardlab.main:app",
            host=settings.HOST,
            port=port,
            reload=settings.DEBUG,
            log_level=settings.LOG_LEVEL.lower(),
            log_config=None  # keep the shardlab log format
        )
    except KeyboardInterrupt:
        logger.info("shardlab server stopped")
    except Exception as e:
        logger.error(f"shardlab server failed to start: {e}", exc_info=True)
        raise
