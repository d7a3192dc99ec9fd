"""Association scans of genotype and phenotype files"""

from .dataset import *
from .qc import *
from .runner import *
