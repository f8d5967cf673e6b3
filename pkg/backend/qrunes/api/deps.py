"""
Shared service instances for the command line and the language server.
"""

from functools import lru_cache

from qrunes.core import logger
from qrunes.services.toolchain import Toolchain

# ===========================================
# Service Singletons
# ===========================================


@lru_cache
def get_toolchain() -> Toolchain:
    """
    Get toolchain singleton.

    Returns:
        Toolchain with limits taken from settings
    """
    logger.debug("Creating Toolchain singleton")
    return Toolchain()
