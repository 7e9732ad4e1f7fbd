"""Module for writing results as CSV or JSON reports.

The JSON report is a mapping with the stable keys::

    {
        "target": "<operation or certificate>",
        "params": {...},
        "results": [{...}, ...],
        "certificate": {...} or [{...}, ...],   # certify and verify only
        "runtime_ms": 1.23
    }

The CSV report has a header row and one row per result
(grid point or certificate). Complex values are written as two
columns ``re_<name>`` and ``im_<name>`` in both formats, and floats
are written with 17 significant digits so that they round-trip.

"""
__all__ = ["Format", "flatten", "to_csv", "to_json", "write_report"]


# standard library
import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union


# dependencies
import numpy as np
import pandas as pd
import xarray as xr


# constants
FLOAT_FORMAT = "%.17g"


class Format(str, Enum):
    """Format of a report."""

    CSV = "csv"
    JSON = "json"


# main functions
def flatten(row: Dict[str, Any]) -> Dict[str, Any]:
    """Split complex values of a row into ``re_*`` and ``im_*`` entries."""
    flat: Dict[str, Any] = {}

    for key, value in row.items():
        if isinstance(value, (complex, np.complexfloating)):
            flat[f"re_{key}"] = float(value.real)
            flat[f"im_{key}"] = float(value.imag)
        elif isinstance(value, np.generic):
            flat[key] = value.item()
        else:
            flat[key] = value

    return flat


def to_csv(results: Union[Sequence[Dict[str, Any]], xr.Dataset]) -> str:
    """Convert results to CSV text.

    Args:
        results: Rows of results, or a Dataset on a grid whose
            coordinates become leading columns in C order.

    Returns:
        CSV text with a header row.

    """
    if isinstance(results, xr.Dataset):
        frame = _split_complex(results).to_dataframe().reset_index()
    else:
        frame = pd.DataFrame([flatten(row) for row in results])

    return frame.to_csv(index=False, float_format=FLOAT_FORMAT)


def to_json(
    target: str,
    params: Dict[str, Any],
    results: Sequence[Dict[str, Any]],
    runtime_ms: float,
    certificate: Optional[Union[Dict[str, Any], List[Dict[str, Any]]]] = None,
) -> str:
    """Convert results to JSON text with the stable report keys."""
    report: Dict[str, Any] = {
        "target": target,
        "params": flatten(params),
        "results": [flatten(row) for row in results],
    }

    if certificate is not None:
        report["certificate"] = certificate

    report["runtime_ms"] = runtime_ms
    return json.dumps(report, indent=2, default=_default)


def write_report(
    text: str,
    path: Optional[Union[Path, str]] = None,
    stream: Optional[TextIO] = None,
) -> None:
    """Write a report to a file, or to a stream if no path is given."""
    if path is None:
        if stream is None:
            raise ValueError("Either path or stream must be given.")

        stream.write(text if text.endswith("\n") else text + "\n")
        return

    Path(path).expanduser().write_text(text)


# helper functions
def _split_complex(dataset: xr.Dataset) -> xr.Dataset:
    """Replace complex variables by their real and imaginary parts."""
    variables = {}

    for name, array in dataset.data_vars.items():
        if np.iscomplexobj(array):
            variables[f"re_{name}"] = array.real
            variables[f"im_{name}"] = array.imag
        else:
            variables[name] = array

    return xr.Dataset(variables, coords=dataset.coords)


def _default(value: Any) -> Any:
    """Convert numpy values that JSON cannot serialize."""
    if isinstance(value, np.ndarray):
        return value.tolist()

    if isinstance(value, np.generic):
        return value.item()

    if isinstance(value, Enum):
        return value.value

    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")
