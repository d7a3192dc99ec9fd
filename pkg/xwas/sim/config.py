"""Simulation configuration

A simulation configuration is a flat file of ``key=value`` lines:

>>> config = SimConfig.from_text('''
... n = 500
... f_female = 0.2
... mu_rr = -0.3
... mu_RR = 0.3
... family = logistic
... ''')
>>> config.n, config.f_male, config.family
(500, 0.2, <Family.LOGISTIC: 'logistic'>)
>>> config.effects.means
(-0.3, 0.0, 0.3, 0.0, 0.0)

Unknown keys are rejected:

>>> SimConfig.from_text('mu_rr=0\\nmu_Rr=0.1')
Traceback (most recent call last):
    ...
xwas.sim.config.ConfigError: Unknown configuration key "mu_Rr"
"""

from configparser import ConfigParser, Error as ConfigParserError
import hashlib
from typing import Tuple
from ..family import Family
from ..genetics.genotype import Chromosome
from ..record import XwasRecord, XwasUnknownFieldError, xwasrecord
from ..stats.ncp import EffectSpec, PopulationSpec

__all__ = [
    'ConfigError',
    'SimConfig',
]

SECTION = 'sim'
"""Implicit configuration file section"""


class ConfigError(ValueError):
    """Invalid simulation configuration"""

    def __str__(self):
        return self.args[0]


@xwasrecord
class SimConfig(XwasRecord):
    """Simulation configuration"""

    n: int = 1000
    """Sample size"""

    f_female: float = 0.5
    """Female alternative allele frequency"""

    f_male: float = None
    """Male alternative allele frequency (default: same as females)"""

    sex_ratio: float = 0.5
    """Proportion of males"""

    hwe: bool = True
    """Female genotypes are in Hardy-Weinberg equilibrium"""

    female_genotype_freqs: Tuple[float, ...] = None
    """Female genotype frequencies (rr, rR, RR) when not in equilibrium"""

    mu_rr: float = 0.0
    mu_rR: float = 0.0
    mu_RR: float = 0.0
    mu_r: float = 0.0
    mu_R: float = 0.0

    sigma2: float = 4.0
    """Residual variance (linear family)"""

    family: Family = Family.LINEAR
    """Response family"""

    sex_effect: float = 0.0
    """Sex main effect"""

    chromosome: Chromosome = Chromosome.X
    """Chromosome kind"""

    replicates: int = 1000
    """Number of Monte Carlo replicates"""

    alpha: float = 0.05
    """Significance level"""

    seed: int = 0
    """Random seed"""

    def __post_init__(self):
        if self.f_male is None:
            self.f_male = self.f_female
        if self.n < 1:
            raise ConfigError("Invalid sample size %d" % self.n)
        if self.replicates < 1:
            raise ConfigError("Invalid replicate count %d" % self.replicates)
        if not 0 < self.alpha < 1:
            raise ConfigError("Invalid significance level %r" % self.alpha)
        if self.seed < 0:
            raise ConfigError("Invalid seed %d" % self.seed)
        try:
            self.pop.strata(self.chromosome)
            self.effects.replace()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def pop(self):
        """Population genotype distribution"""
        return PopulationSpec(self.f_female, self.f_male,
                              sex_ratio=self.sex_ratio, hwe=self.hwe,
                              female_genotype_freqs=self.female_genotype_freqs)

    @property
    def effects(self):
        """Genotype group mean effects"""
        return EffectSpec(self.mu_rr, self.mu_rR, self.mu_RR, self.mu_r,
                          self.mu_R, sigma2=self.sigma2, family=self.family)

    @property
    def config_hash(self):
        """Configuration hash"""
        text = self.to_json(sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:12]

    @classmethod
    def from_text(cls, text):
        """Parse configuration from text"""
        parser = ConfigParser()
        parser.optionxform = str
        try:
            parser.read_string('[%s]\n%s' % (SECTION, text))
        except ConfigParserError as exc:
            raise ConfigError("Malformed configuration: %s" % exc) from exc
        try:
            return cls.from_fields(dict(parser[SECTION]))
        except XwasUnknownFieldError as exc:
            raise ConfigError(
                'Unknown configuration key "%s"' % exc.args[0]
            ) from exc
        except ValueError as exc:
            raise ConfigError("Invalid configuration: %s" % exc) from exc

    @classmethod
    def from_file(cls, path):
        """Load configuration from file"""
        with open(path, encoding='utf-8') as f:
            return cls.from_text(f.read())
