"""Simulation command line interface"""

from dataclasses import replace
from ..genetics.design import ModelId
from ..genetics.genotype import CodingScheme
from ..sim.config import SimConfig
from ..sim.harness import SimResultRow, simulation_rows
from ..stats.association import TestKind
from .base import OutputCommand

__all__ = [
    'SimulateCommand',
]

DEFAULT_MODELS = [ModelId.M1, ModelId.M2, ModelId.M3, ModelId.M4]


class SimulateCommand(OutputCommand):
    """Estimate empirical power and type I error by simulation"""

    section = 'simulate'

    delimiter = ','

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('sim_config', help="Simulation configuration file")
        parser.add_argument('--models', nargs='+',
                            choices=[x.value for x in ModelId],
                            help="Models (default: M1 to M4)")
        parser.add_argument('--tests', nargs='+',
                            choices=[x.value for x in TestKind],
                            help="Tests (default: wald)")
        parser.add_argument('--scheme', help="Coding scheme (default: R,I)")
        parser.add_argument('--seed', help="Random seed")
        parser.add_argument('--replicates', help="Number of replicates")
        parser.add_argument('--threads', help="Number of worker threads")

    @property
    def sim_config(self):
        """Simulation configuration"""
        config = SimConfig.from_file(self.args.sim_config)
        overrides = {
            k: v for k, v in (
                ('seed', self.option('seed', int)),
                ('replicates', self.option('replicates', int)),
            ) if v is not None
        }
        return replace(config, **overrides) if overrides else config

    def execute(self):
        config = self.sim_config
        rows = simulation_rows(
            config,
            models=self.option('models', ModelId, DEFAULT_MODELS, many=True),
            tests=self.option('tests', TestKind, [TestKind.WALD], many=True),
            scheme=self.option('scheme', CodingScheme.from_text),
            workers=self.option('threads', int),
        )
        self.write(rows, SimResultRow)
