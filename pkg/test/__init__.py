"""xwas tests"""

from .xwastest import *
