"""Test utilities"""

import os
from pathlib import Path
import shlex
import sys
import unittest
import numpy as np
from xwas.cli.registry import commands
from xwas.family import Family
from xwas.genetics.genotype import Chromosome
from xwas.sim.harness import replicate_rng, simulate_genotypes
from xwas.stats.ncp import PopulationSpec

__all__ = [
    'TestCase',
    'LONG_TESTS',
    'long_test',
]

LONG_TESTS = 'XWAS_LONG_TESTS'
"""Environment variable enabling lengthy statistical tests"""


def long_test(func):
    """Decorator for a lengthy statistical test"""
    return unittest.skipUnless(
        os.environ.get(LONG_TESTS), "Set %s to run" % LONG_TESTS
    )(func)


class TestCase(unittest.TestCase):
    """xwas test suite"""

    @classmethod
    def setUpClass(cls):
        """Initialise test suite"""

        # Locate test files directory
        module = sys.modules[cls.__module__]
        cls.files = Path(module.__file__).parent / 'files'

    @staticmethod
    def sample(n, f=0.3, chromosome=Chromosome.X, seed=1):
        """Simulate genotype states and sexes"""
        return simulate_genotypes(n, PopulationSpec(f), chromosome,
                                  replicate_rng(seed, 0))

    @staticmethod
    def phenotype(n, family=Family.LINEAR, seed=2, eta=0.0):
        """Simulate a phenotype from a linear predictor"""
        rng = np.random.default_rng(seed)
        if family is Family.LOGISTIC:
            p = 1 / (1 + np.exp(-np.broadcast_to(eta, n)))
            return (rng.random(n) < p).astype(float)
        return eta + rng.normal(0.0, 1.0, n)

    def command(self, command):
        """Invoke command"""
        args = shlex.split(command)
        command = commands.command(args)
        return command()
