""" Run reports and their CSV / JSON serialisation. """

import csv
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from io import StringIO
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from geometric_integrators.core.constants import CSV_SIGNIFICANT_DIGITS
from geometric_integrators.core.state import Trajectory
from geometric_integrators.core.types import FloatArray, OutputFileFormat
from geometric_integrators.utils.numeric_utils import drift_slope

_NUMBER_FORMAT = f"%.{CSV_SIGNIFICANT_DIGITS}g"


def _format_value(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return _NUMBER_FORMAT % value
    return value


def render_records(
    data: List[Dict[str, Any]],
    fields_names: Optional[Sequence[str]] = None,
    file_format: OutputFileFormat = "csv",
    extra: Optional[Dict[str, Any]] = None,
) -> str:
    """Serialise a list of dicts as CSV or JSON text.

    Parameters
    ----------
    data: List[Dict[str, Any]]
        One dict per row.

    fields_names: Optional[Sequence[str]]
        Header order; defaults to the keys of the first row.

    file_format: OutputFileFormat
        "csv" (floats with 17 significant digits, LF endings) or
        "json" (indent 2, rows under "records").

    extra: Optional[Dict[str, Any]]
        Top-level JSON members written before the records.

    Raises
    ------
    ValueError
        if data is not a list of dicts or the format is unknown.
    """
    if not isinstance(data, list) or not all(
        isinstance(item, dict) for item in data
    ):
        raise ValueError("Parameter 'data' must be a list of dictionaries.")
    if file_format == "json":
        document = dict(extra or {})
        document["records"] = data
        return json.dumps(document, indent=2) + "\n"
    if file_format == "csv":
        output = StringIO()
        writer = csv.DictWriter(
            output,
            fieldnames=list(fields_names or (data[0].keys() if data else [])),
            lineterminator="\n",
        )
        writer.writeheader()
        writer.writerows(
            {key: _format_value(value) for key, value in row.items()}
            for row in data
        )
        return output.getvalue()
    raise ValueError(f"Format '{ file_format }' non recognized!")


def write_atomically(path: Union[str, Path], text: str) -> None:
    """Write text to path through a temporary file and a rename."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with tempfile.NamedTemporaryFile(
        "w",
        encoding="utf-8",
        newline="",
        dir=target.parent,
        prefix=f".{target.name}.",
        delete=False,
    ) as handle:
        handle.write(text)
        temporary = handle.name
    os.replace(temporary, target)
    logging.info("Wrote %s.", target)


@dataclass
class RunReport:
    """Per-step observable and diagnostic table with its summary.

    The summary holds, per observable, the maximum drift |o_n - o_0|
    and the fitted drift slope per step; both are recomputable from
    the table.
    """

    problem: str
    integrator: str
    h: float
    times: FloatArray
    observables: Dict[str, FloatArray]
    diagnostics: Dict[str, FloatArray] = field(default_factory=dict)
    wall_time: float = 0.0

    @classmethod
    def from_trajectory(
        cls,
        problem: str,
        integrator: str,
        h: float,
        trajectory: Trajectory,
        diagnostics: Optional[Dict[str, FloatArray]] = None,
        wall_time: float = 0.0,
    ) -> "RunReport":
        """Collect a trajectory's observable channels."""
        return cls(
            problem,
            integrator,
            h,
            trajectory.times,
            dict(trajectory.observables),
            dict(diagnostics or {}),
            wall_time,
        )

    @property
    def columns(self) -> List[str]:
        """CSV header: step, t, observables, diagnostics."""
        return ["step", "t", *self.observables, *self.diagnostics]

    def max_drift(self, name: str) -> float:
        """max_n |o_n - o_0| of an observable."""
        series = self.observables[name]
        return float(np.max(np.abs(series - series[0])))

    def summary(self) -> Dict[str, Any]:
        """Max drift and drift slope per observable, plus wall time."""
        drifts = {name: self.max_drift(name) for name in self.observables}
        slopes = {
            name: drift_slope(series)
            for name, series in self.observables.items()
            if series.size > 1
        }
        worst = {
            name: float(np.max(values))
            for name, values in self.diagnostics.items()
        }
        return {
            "problem": self.problem,
            "integrator": self.integrator,
            "h": self.h,
            "steps": int(self.times.size - 1),
            "max_drift": drifts,
            "drift_slope": slopes,
            "max_diagnostic": worst,
            "wall_time": self.wall_time,
        }

    def records(self) -> List[Dict[str, Any]]:
        """One dict per recorded state, keyed by column."""
        rows = []
        for step, t in enumerate(self.times):
            row: Dict[str, Any] = {"step": step, "t": float(t)}
            for name, series in self.observables.items():
                row[name] = float(series[step])
            for name, series in self.diagnostics.items():
                row[name] = float(series[step])
            rows.append(row)
        return rows

    def render(self, file_format: OutputFileFormat = "csv") -> str:
        """CSV table, or JSON with the summary and the same records."""
        return render_records(
            self.records(),
            self.columns,
            file_format,
            extra={"summary": self.summary()},
        )

    def write(
        self, path: Union[str, Path], file_format: OutputFileFormat = "csv"
    ) -> None:
        """Render and write atomically."""
        write_atomically(path, self.render(file_format))

    def write_plot_data(self, directory: Union[str, Path]) -> List[Path]:
        """One `<observable>.dat` file of "t value" lines per observable."""
        folder = Path(directory)
        written = []
        for name, series in self.observables.items():
            lines = [
                f"{_NUMBER_FORMAT % t} {_NUMBER_FORMAT % value}"
                for t, value in zip(self.times, series)
            ]
            path = folder / f"{name}.dat"
            write_atomically(path, "\n".join(lines) + "\n")
            written.append(path)
        return written


@dataclass
class ConvergenceTable:
    """Global errors per integrator and step size, with fitted orders."""

    problem: str
    t_final: float
    h_list: List[float]
    errors: Dict[str, FloatArray] = field(default_factory=dict)
    orders: Dict[str, float] = field(default_factory=dict)

    def records(self) -> List[Dict[str, Any]]:
        """One row per (integrator, h)."""
        return [
            {
                "integrator": name,
                "h": float(h),
                "error": float(error),
                "order": self.orders[name],
            }
            for name, errors in self.errors.items()
            for h, error in zip(self.h_list, errors)
        ]

    def render(self, file_format: OutputFileFormat = "csv") -> str:
        """CSV header integrator,h,error,order; JSON adds the orders."""
        return render_records(
            self.records(),
            ["integrator", "h", "error", "order"],
            file_format,
            extra={
                "problem": self.problem,
                "t_final": self.t_final,
                "orders": self.orders,
            },
        )
