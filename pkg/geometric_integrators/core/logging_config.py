""" Logging system configuration """

import logging

from geometric_integrators.core.constants import (
    DEFAULT_LOG_LEVEL,
    LOG_FORMAT,
)


def setup_logger(level: str = DEFAULT_LOG_LEVEL, force: bool = False) -> int:
    """Configure the root logger used by every integrator module.

    Parameters
    ----------
    level: str
        The log level ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL').
        Unknown names fall back to INFO.

    force: bool
        Replace handlers installed by an earlier call (the CLI uses it
        to honour --log-level after the import-time setup).

    Returns
    -------
    int
        The numeric level applied.
    """
    numeric_level = getattr(logging, level.upper(), logging.INFO)
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO
    logging.basicConfig(level=numeric_level, format=LOG_FORMAT, force=force)
    logging.getLogger().setLevel(numeric_level)
    return numeric_level
