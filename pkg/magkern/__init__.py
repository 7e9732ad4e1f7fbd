# flake8: noqa
__version__ = "0.1.0"
__author__ = "Akio Taniguchi"


# aliases
from .errors import *
from .specfun import *
from .quad import *
from .mehler import *
from .ekernel import *
from .grids import *
from .certify import *
