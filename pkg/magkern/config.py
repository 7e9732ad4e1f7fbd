"""Module for run configuration of the command line interface.

Run configuration can be written in a file of JSON, TOML, or YAML.
Keys mirror the long options of the command line (``b0``, ``eb0``,
``m``, ``e2``, ``t``, ``x``, ``xp``, ``grid``, ``tol``, ``jobs``, ...),
with dashes and underscores treated alike::

    # run.toml

    eb0 = 1.0
    m = 1.0
    grid = [ "r:0.05:10:60:log" ]

Options given on the command line override values in the file.

- load_config: Load run configuration from a file.
- default_jobs: Default number of worker processes.

"""
__all__ = ["default_jobs", "load_config"]


# standard library
import json
import os
import re
from logging import getLogger
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union


# dependencies
import toml
import yaml
from .errors import DomainError


# constants
JOBS_ENV = "MAGKERN_JOBS"
JSON_RE = r"\.json$"
TOML_RE = r"\.toml$"
YAML_RE = r"\.ya?ml$"


# module logger
logger = getLogger(__name__)


# main functions
def load_config(path: Union[Path, str]) -> Dict[str, Any]:
    """Load run configuration from a file.

    Args:
        path: Path or filename of the file.

    Returns:
        Dictionary of options with keys normalized to underscores.

    Raises:
        DomainError: If the file format is not supported
            or the file does not hold a mapping.

    """
    path = Path(path).expanduser()
    loader = choose_loader_from(path)
    config = loader(path)

    if not isinstance(config, dict):
        raise DomainError(f"Run configuration must be a mapping: {path}")

    logger.debug("loaded run configuration from %s", path)
    return {key.replace("-", "_"): value for key, value in config.items()}


def default_jobs(environ: Optional[Dict[str, str]] = None) -> int:
    """Default number of worker processes from ``MAGKERN_JOBS`` (1 if unset)."""
    environ = os.environ if environ is None else environ
    value = environ.get(JOBS_ENV, "1")

    try:
        jobs = int(value)
    except ValueError:
        raise DomainError(f"{JOBS_ENV} must be an integer: {value!r}")

    if jobs < 1:
        raise DomainError(f"{JOBS_ENV} must be positive: {jobs}")

    return jobs


# helper functions
def choose_loader_from(path: Path) -> Callable:
    """Choose file loader based on a filename."""
    if re.search(JSON_RE, path.name):
        return load_json
    elif re.search(TOML_RE, path.name):
        return load_toml
    elif re.search(YAML_RE, path.name):
        return load_yaml
    else:
        raise DomainError(f"Invalid file format: {path.name}")


def load_json(path: Path) -> Dict[str, Any]:
    """Load a JSON file to create a dictionary."""
    with path.open() as f:
        return json.load(f)


def load_toml(path: Path) -> Dict[str, Any]:
    """Load a TOML file to create a dictionary."""
    return toml.load(path)


def load_yaml(path: Path) -> Dict[str, Any]:
    """Load a YAML file to create a dictionary."""
    with path.open() as f:
        return yaml.load(f, Loader=yaml.SafeLoader)
