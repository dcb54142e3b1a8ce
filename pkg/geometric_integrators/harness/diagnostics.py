""" Structural diagnostics addressable from the command line. """

from typing import Callable

from geometric_integrators.composition.splitting import time_symmetry_defect
from geometric_integrators.core.registry import Registry
from geometric_integrators.core.types import FloatArray, StepMap
from geometric_integrators.symplectic.diagnostics import symplecticity_defect
from geometric_integrators.volume.integrators import volume_defect

Diagnostic = Callable[[StepMap, FloatArray, float], float]

DIAGNOSTICS: Registry[float] = Registry("diagnostic")

DIAGNOSTICS.add(
    "symplecticity-defect",
    symplecticity_defect,
    "|DPhi^T J DPhi - J|_inf by central differences",
)
DIAGNOSTICS.add(
    "volume-defect",
    volume_defect,
    "||det DPhi| - 1| by central differences",
)
DIAGNOSTICS.add(
    "time-symmetry-defect",
    time_symmetry_defect,
    "|Phi_-h(Phi_h(x)) - x|_inf",
)


def get_diagnostic(key: str) -> Diagnostic:
    """Diagnostic function (step_map, x, h) -> defect.

    Raises
    ------
    RegistryMissError
        if the id is unknown.
    """
    return DIAGNOSTICS.get(key)
