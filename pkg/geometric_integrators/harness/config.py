""" Experiment configuration: JSON file plus command-line overrides. """

import json
import logging
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from geometric_integrators.core.types import OutputFileFormat

_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ExperimentConfig:
    """One problem x integrator experiment.

    Parameters
    ----------
    problem: str
        Problem id.

    integrator: str
        Integrator id.

    h: float
        Step size.

    n_steps: Optional[int]
        Number of steps; None runs up to t_final.

    t_final: Optional[float]
        End time; None takes the problem's default.

    observables: Optional[List[str]]
        Observable names; None records all of them.

    diagnostics: List[str]
        Diagnostic ids evaluated at every state.

    output_format: OutputFileFormat
        "csv" or "json".

    seed: int
        Seed of the randomized problem self-checks.
    """

    problem: str = ""
    integrator: str = ""
    h: float = 0.01
    n_steps: Optional[int] = None
    t_final: Optional[float] = None
    problem_params: Dict[str, Any] = field(default_factory=dict)
    integrator_params: Dict[str, Any] = field(default_factory=dict)
    observables: Optional[List[str]] = None
    diagnostics: List[str] = field(default_factory=list)
    output_format: OutputFileFormat = "csv"
    out: Optional[str] = None
    seed: int = 0
    emit_plot_data: Optional[str] = None
    h_list: List[float] = field(default_factory=list)
    integrators: List[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.output_format not in _FORMATS:
            raise ValueError(f"Unknown output format '{self.output_format}'.")
        if not np.isfinite(self.h) or self.h == 0:
            raise ValueError("The step size must be finite and non-zero.")
        if self.n_steps is not None and self.n_steps < 0:
            raise ValueError("n_steps must be non-negative.")
        if self.n_steps is not None and not np.isfinite(
            self.h * self.n_steps
        ):
            raise ValueError("h * n_steps must be finite.")

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> "ExperimentConfig":
        """Load a configuration file.

        Raises
        ------
        ValueError
            if the file holds unknown keys or invalid values.
        """
        logging.debug("Loading experiment config from %s.", path)
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"Unknown config keys: {', '.join(unknown)}.")
        return cls(**data)

    def with_overrides(self, **overrides: Any) -> "ExperimentConfig":
        """Copy with every non-None override applied (flags win)."""
        return replace(
            self,
            **{
                key: value
                for key, value in overrides.items()
                if value is not None
            },
        )

    def steps_for(self, default_t_final: float) -> int:
        """n_steps, or the number of steps of size h up to t_final."""
        if self.n_steps is not None:
            return self.n_steps
        t_final = default_t_final if self.t_final is None else self.t_final
        return max(1, int(round(abs(t_final / self.h))))

    def as_dict(self) -> Dict[str, Any]:
        """Plain dictionary, as written to JSON reports."""
        return asdict(self)
