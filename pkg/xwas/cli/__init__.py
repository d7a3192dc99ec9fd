"""Command line interface"""

from .base import *
