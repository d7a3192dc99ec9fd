"""Simulation harness"""

from .config import *
from .harness import *
