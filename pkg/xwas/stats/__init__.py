"""Model fitting, association tests and power"""

from .glm import *
from .association import *
from .power import *
from .ncp import *
