"""Genotype coding and design matrices"""

from .genotype import *
from .design import *
from .transform import *
