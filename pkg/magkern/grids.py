"""Module for parameter grids of certifications and sweeps.

A grid is the outer product of named one-dimensional axes,
each with linear or logarithmic spacing. Axes are parsed from
strings of the form ``name:min:max:count:lin|log``::

    grid = GridSpec.parse(["r:0.05:10:60:log", "eb0:0:5:6:lin"])
    grid.coords()["r"]

Points are always enumerated in C order of the axes, so that
results computed in parallel can be reassembled deterministically.

"""
__all__ = ["Axis", "GridSpec", "Spacing"]


# standard library
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple, Union


# dependencies
import numpy as np
import xarray as xr
from .errors import DomainError


# constants
DEFAULT_SEED: int = 20240101
SEPARATOR: str = ":"


class Spacing(str, Enum):
    """Spacing of an axis."""

    LIN = "lin"
    LOG = "log"


@dataclass(frozen=True)
class Axis:
    """One-dimensional axis of a grid."""

    name: str
    min: float
    max: float
    count: int
    spacing: Spacing = Spacing.LIN

    def __post_init__(self) -> None:
        object.__setattr__(self, "spacing", Spacing(self.spacing))

        if not self.name.isidentifier():
            raise DomainError(f"Axis name must be an identifier: {self.name!r}")

        if self.count < 2:
            raise DomainError(
                f"Axis {self.name} must have at least two points: {self.count}"
            )

        if not self.min < self.max:
            raise DomainError(
                f"Axis {self.name} must satisfy min < max: {self.min}, {self.max}"
            )

        if self.spacing == Spacing.LOG and not self.min > 0:
            raise DomainError(f"Log axis {self.name} must have min > 0: {self.min}")

    @classmethod
    def parse(cls, text: str) -> "Axis":
        """Create an instance from ``name:min:max:count:lin|log``."""
        fields = text.strip().split(SEPARATOR)

        if len(fields) != 5:
            raise DomainError(
                f"Axis must be given as name:min:max:count:lin|log: {text!r}"
            )

        name, low, high, count, spacing = fields

        try:
            return cls(name, float(low), float(high), int(count), Spacing(spacing))
        except ValueError as error:
            raise DomainError(f"Invalid axis {text!r}: {error}") from error

    @property
    def values(self) -> np.ndarray:
        """Coordinate values of the axis."""
        if self.spacing == Spacing.LOG:
            return np.geomspace(self.min, self.max, self.count)

        return np.linspace(self.min, self.max, self.count)

    def __str__(self) -> str:
        return SEPARATOR.join(
            [
                self.name,
                repr(self.min),
                repr(self.max),
                str(self.count),
                self.spacing.value,
            ]
        )


@dataclass(frozen=True)
class GridSpec:
    """Outer-product grid of named axes with a seed for random sampling."""

    axes: Tuple[Axis, ...]
    seed: int = DEFAULT_SEED
    extra: Dict[str, Tuple[float, ...]] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        axes = tuple(self.axes)
        names = [axis.name for axis in axes] + list(self.extra)

        if len(set(names)) != len(names):
            raise DomainError(f"Axis names must be unique: {names}")

        object.__setattr__(self, "axes", axes)
        extra = {k: tuple(float(v) for v in vs) for k, vs in self.extra.items()}
        object.__setattr__(self, "extra", extra)

    @classmethod
    def parse(
        cls,
        texts: Union[str, Sequence[str]],
        seed: int = DEFAULT_SEED,
    ) -> "GridSpec":
        """Create an instance from one or more axis strings."""
        if isinstance(texts, str):
            texts = [texts]

        return cls(tuple(Axis.parse(text) for text in texts), seed)

    @classmethod
    def of(
        cls,
        *axes: Axis,
        seed: int = DEFAULT_SEED,
        **extra: Sequence[float],
    ) -> "GridSpec":
        """Create an instance from axes and explicitly listed coordinates.

        Keyword arguments give axes by their values (e.g. ``m=[0.5, 1, 2]``).

        """
        return cls(tuple(axes), seed, dict(extra))

    @property
    def names(self) -> List[str]:
        return [axis.name for axis in self.axes] + list(self.extra)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(len(values) for values in self.coords().values())

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def coords(self) -> Dict[str, np.ndarray]:
        """Coordinate values of every axis, in axis order."""
        coords = {axis.name: axis.values for axis in self.axes}
        coords.update({name: np.array(values) for name, values in self.extra.items()})
        return coords

    def points(self) -> Iterator[Dict[str, float]]:
        """Iterate over grid points in C order."""
        coords = self.coords()

        for values in product(*coords.values()):
            yield dict(zip(coords, map(float, values)))

    def rng(self) -> np.random.Generator:
        """Random number generator seeded by the grid seed."""
        return np.random.default_rng(self.seed)

    def meshgrid(self) -> Dict[str, np.ndarray]:
        """Broadcast coordinate arrays of the full grid."""
        coords = self.coords()
        arrays = np.meshgrid(*coords.values(), indexing="ij")
        return dict(zip(coords, arrays))

    def to_dataarray(self, values: Sequence, name: str) -> xr.DataArray:
        """Reshape values listed in C order into a DataArray on the grid."""
        array = np.asarray(values).reshape(self.shape)
        return xr.DataArray(array, coords=self.coords(), dims=self.names, name=name)

    def describe(self) -> Dict[str, object]:
        """JSON-ready description of the grid."""
        axes = [str(axis) for axis in self.axes]
        extra = {name: list(values) for name, values in self.extra.items()}
        return {"axes": axes, "values": extra, "seed": self.seed}
