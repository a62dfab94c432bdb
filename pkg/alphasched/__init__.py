"""
alphasched - LP based alpha-point scheduling.
Approximation pipeline for minimizing total weighted completion time on one
machine with release dates and precedence constraints.
"""

__version__ = "1.0.0"
__author__ = "alphasched developers"
__email__ = "devel@alphasched.org"

from .config import config
from .report import Solver
from .cli import cli

__all__ = ["config", "Solver", "cli", "__version__"]
