"""Power calculation command line interface"""

from ..family import Family
from ..genetics.genotype import CodingScheme
from ..stats.ncp import (AutosomeCurvePoint, EffectSpec, PopulationSpec,
                         Sweep, XCurvePoint, autosome_curves, x_curves)
from ..stats.power import (GENOME_WIDE_ALPHA, GainPoint, LossLandmark,
                           SurfacePoint, gain_crossover, loss_landmarks,
                           power_gain_curve, surface_table)
from .base import OutputCommand

__all__ = [
    'PowerCommand',
    'PowerSurfaceCommand',
    'PowerLossCommand',
    'PowerGainCommand',
    'PowerCrossoverCommand',
    'PowerCurvesCommand',
    'PowerAutosomeCommand',
]


class PowerCommand(OutputCommand):
    """Power calculations"""

    section = 'power'

    delimiter = ','

    def __call__(self):
        try:
            return super().__call__()
        except ValueError as exc:
            raise SystemExit(str(exc)) from exc


class PowerSurfaceCommand(PowerCommand):
    """Tabulate power and power loss for 1, 2 and 3 degrees of freedom"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--alpha-range', nargs=2,
                            help="Range of -log10(alpha)")
        parser.add_argument('--alpha-step', help="Step in -log10(alpha)")
        parser.add_argument('--ncp-range', nargs=2, help="Range of ncp")
        parser.add_argument('--ncp-step', help="Step in ncp")

    def execute(self):
        rows = surface_table(
            alpha_range=self.option('alpha_range', float, (0.0, 15.0),
                                    many=True),
            ncp_range=self.option('ncp_range', float, (0.0, 100.0), many=True),
            alpha_step=self.option('alpha_step', float, 0.1),
            ncp_step=self.option('ncp_step', float, 1.0),
        )
        self.write(rows, SurfacePoint)


class PowerLossCommand(PowerCommand):
    """Find the maximum power loss between degrees of freedom"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--alpha', nargs='+',
                            help="Fixed significance levels (default: "
                            "all levels, and genome-wide significance)")

    def execute(self):
        levels = self.option('alpha', float, [None, GENOME_WIDE_ALPHA],
                             many=True)
        rows = [row for level in levels for row in loss_landmarks(level)]
        self.write(rows, LossLandmark)


class PowerGainMixin:
    """Power gain options"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--ncp1', nargs='+',
                            help="Noncentrality of the smaller-df test")
        parser.add_argument('--alpha', help="Significance level")
        parser.add_argument('--df-small', help="Smaller degrees of freedom")
        parser.add_argument('--df-large', help="Larger degrees of freedom")

    @property
    def gain_options(self):
        """Common power gain options"""
        return {
            'alpha': self.option('alpha', float, 0.0025),
            'df_small': self.option('df_small', int, 1),
            'df_large': self.option('df_large', int, 2),
        }


class PowerGainCommand(PowerGainMixin, PowerCommand):
    """Tabulate power gain from an increased noncentrality"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--delta-max', help="Largest ncp increment")
        parser.add_argument('--delta-step', help="Step in ncp increment")

    def execute(self):
        rows = [
            row for ncp1 in self.option('ncp1', float, [10.0], many=True)
            for row in power_gain_curve(
                ncp1, delta_range=(0.0, self.option('delta_max', float, 10.0)),
                step=self.option('delta_step', float, 0.1),
                **self.gain_options
            )
        ]
        self.write(rows, GainPoint)


class PowerCrossoverCommand(PowerGainMixin, PowerCommand):
    """Find the ncp increment at which power gain covers power loss"""

    def execute(self):
        return [
            '%g\t%.4f' % (ncp1, gain_crossover(ncp1, **self.gain_options))
            for ncp1 in self.option('ncp1', float, [10.0], many=True)
        ]


class PowerCurvesCommand(PowerCommand):
    """Tabulate X-chromosome model power as one group mean varies"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--sweep', choices=[x.value for x in Sweep],
                            help="Group mean to vary (default: mu_rR)")
        parser.add_argument('--f-female', help="Female allele frequency")
        parser.add_argument('--f-male', help="Male allele frequency")
        parser.add_argument('--sex-ratio', help="Proportion of males")
        parser.add_argument('--scheme', help="Coding scheme (default: R,I)")
        parser.add_argument('--n', help="Sample size")
        parser.add_argument('--alpha', help="Significance level")
        parser.add_argument('--sex-effect', help="Sex main effect")
        parser.add_argument('--sigma2', help="Residual variance")
        parser.add_argument('--family', choices=[x.value for x in Family],
                            help="Response family")

    def execute(self):
        pop = PopulationSpec(self.option('f_female', float, 0.5),
                             self.option('f_male', float),
                             sex_ratio=self.option('sex_ratio', float, 0.5))
        base = EffectSpec(-0.3, 0.0, 0.3, 0.0, 0.3,
                          sigma2=self.option('sigma2', float, 4.0),
                          family=self.option('family', Family, Family.LINEAR))
        rows = x_curves(self.option('sweep', Sweep, Sweep.DOMINANT), pop,
                        base=base,
                        scheme=self.option('scheme', CodingScheme.from_text),
                        n=self.option('n', int, 1000),
                        alpha=self.option('alpha', float, 0.0008),
                        sex_effect=self.option('sex_effect', float, 0.0))
        self.write(rows, XCurvePoint)


class PowerAutosomeCommand(PowerCommand):
    """Tabulate additive and genotypic test power over dominant effects"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--frequencies', nargs='+',
                            help="Allele frequencies")
        parser.add_argument('--beta-a', help="Additive effect")
        parser.add_argument('--n', help="Sample size")
        parser.add_argument('--alpha', help="Significance level")
        parser.add_argument('--sigma2', help="Residual variance")

    def execute(self):
        rows = autosome_curves(
            frequencies=self.option('frequencies', float, [0.2, 0.5],
                                    many=True),
            beta_a=self.option('beta_a', float, 0.3),
            n=self.option('n', int, 1000),
            alpha=self.option('alpha', float, 0.0025),
            sigma2=self.option('sigma2', float, 4.0),
        )
        self.write(rows, AutosomeCurvePoint)
