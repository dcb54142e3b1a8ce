""" Main import of the classes/functions """

from geometric_integrators.__version__ import __version__

from geometric_integrators.core.logging_config import setup_logger

setup_logger("INFO")
