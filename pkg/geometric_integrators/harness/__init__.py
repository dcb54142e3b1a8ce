""" Definition of the main classes and functions for the package harness"""

from .config import ExperimentConfig
from .diagnostics import DIAGNOSTICS, get_diagnostic
from .integrators import INTEGRATORS, PreparedIntegrator, prepare
from .report import (
    ConvergenceTable,
    RunReport,
    render_records,
    write_atomically,
)
from .runner import convergence, run
from .cli import build_parser, list_registry, main
