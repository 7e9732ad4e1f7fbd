"""Module for type hints of kernels and integrands.

This module provides type hints which are intended
to be used by other modules of the package.

"""
__all__ = ["Integrand", "Integrand2D", "Number", "Point"]


# standard library
from typing import Callable, Sequence, Union


# type hints
Number = Union[float, complex]
Point = Sequence[float]
Integrand = Callable[[float], Number]
Integrand2D = Callable[[float, float], Number]
