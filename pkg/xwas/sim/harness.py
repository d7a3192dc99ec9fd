"""Monte Carlo simulation

Each replicate draws from its own counter-based random stream derived
from the configured seed and the replicate index, so that results do
not depend on the number of worker threads.

>>> from xwas.stats import PopulationSpec
>>> states, sexes = simulate_genotypes(8, PopulationSpec(0.5), Chromosome.X,
...                                    replicate_rng(0, 0))
>>> bool(np.all((states >= 3) == (sexes == 1)))
True
"""

from dataclasses import dataclass
import logging
from typing import Dict
import numpy as np
from scipy.special import expit
from ..family import Family
from ..genetics.design import ModelId, ModelSpec, build_design
from ..genetics.genotype import Allele, Chromosome, CodingScheme, Inactivation
from ..parallel import parallel_map
from ..record import XwasRecord, xwasrecord
from ..stats.association import TestKind, run_test
from ..stats.ncp import EffectSpec, PopulationSpec, ncp_misspecified
from ..stats.power import PowerQuery, power
from .config import SimConfig

__all__ = [
    'EmpiricalPower',
    'AuditReport',
    'SimResultRow',
    'replicate_rng',
    'simulate_genotypes',
    'simulate_phenotype',
    'simulate_dataset',
    'empirical_power',
    'invariance_audit',
    'audit_groups',
    'simulation_rows',
]

logger = logging.getLogger(__name__)


@dataclass
class EmpiricalPower:
    """Monte Carlo rejection rate"""

    rate: float
    """Fraction of successful replicates rejecting the null hypothesis"""

    mc_se: float
    """Monte Carlo standard error of the rate"""

    replicates: int
    """Number of successful replicates"""

    excluded: int
    """Number of replicates excluded by fitting failures"""

    mean_statistic: float
    """Mean test statistic"""

    statistic_se: float
    """Monte Carlo standard error of the mean test statistic"""


@dataclass
class AuditReport:
    """Test statistic discrepancies across coding schemes"""

    discrepancies: Dict[str, float]
    """Largest absolute statistic difference within each scheme group"""

    statistics: Dict[str, float]
    """Test statistic under each coding scheme"""


@xwasrecord
class SimResultRow(XwasRecord):
    """Simulation result table row"""

    config_hash: str
    model: str
    test: TestKind
    replicates: int
    excluded_count: int
    rate: float
    mc_se: float
    mean_statistic: float
    statistic_se: float
    df: int
    analytic_ncp: float
    analytic_power: float


def replicate_rng(seed, replicate):
    """Random generator for a single replicate"""
    sequence = np.random.SeedSequence(seed, spawn_key=(replicate,))
    return np.random.Generator(np.random.Philox(sequence))


def inverse_cdf(probabilities, uniform):
    """Sample category indices by inversion"""
    cumulative = np.cumsum(probabilities)
    index = np.searchsorted(cumulative, uniform, side='right')
    return np.minimum(index, len(probabilities) - 1)


def simulate_genotypes(n, pop: PopulationSpec, chromosome, rng):
    """Simulate genotype states and sexes

    Sexes are drawn first, followed by one uniform variate per
    individual that is converted to a genotype by inversion.
    """
    sexes = (rng.random(n) < pop.sex_ratio).astype(int)
    uniform = rng.random(n)
    female = inverse_cdf(pop.female_frequencies, uniform)
    male = inverse_cdf(pop.male_frequencies(chromosome), uniform)
    if chromosome is Chromosome.X:
        male = male + 3
    states = np.where(sexes == 1, male, female)
    return states, sexes


def simulate_phenotype(states, sexes, effects: EffectSpec, sex_effect,
                       family: Family, rng):
    """Simulate phenotypes from genotype group means"""
    states = np.asarray(states, dtype=int)
    eta = np.array(effects.means)[states] + sex_effect * np.asarray(sexes)
    if family is Family.LOGISTIC:
        return (rng.random(len(states)) < expit(eta)).astype(float)
    return eta + rng.normal(0.0, np.sqrt(effects.sigma2), len(states))


def simulate_dataset(config: SimConfig, replicate):
    """Simulate one replicate dataset"""
    rng = replicate_rng(config.seed, replicate)
    states, sexes = simulate_genotypes(config.n, config.pop,
                                       config.chromosome, rng)
    y = simulate_phenotype(states, sexes, config.effects, config.sex_effect,
                           config.family, rng)
    return states, sexes, y


def empirical_power(config: SimConfig, model: ModelSpec, test_kind: TestKind,
                    workers=None) -> EmpiricalPower:
    """Estimate power (or size) by simulation"""
    if model.family is not config.family:
        raise ValueError("model family %s differs from simulated family %s" %
                         (model.family.value, config.family.value))
    if model.model.autosomal and config.chromosome is not Chromosome.AUTOSOME:
        raise ValueError("%s model requires an autosome SNP" %
                         model.model.value)

    def replicate(index):
        states, sexes, y = simulate_dataset(config, index)
        try:
            X = build_design(states, sexes, model,
                             chromosome=config.chromosome)
            return run_test(X, X.select(y), test_kind, model.family)
        except (ArithmeticError, ValueError) as exc:
            logger.debug("Replicate %d failed: %s", index, exc)
            return None

    results = parallel_map(replicate, range(config.replicates), workers)
    succeeded = [x for x in results if x is not None]
    excluded = len(results) - len(succeeded)
    if excluded:
        logger.warning("Excluded %d of %d replicates", excluded, len(results))
    if not succeeded:
        raise ValueError("all replicates failed")

    # Aggregate
    count = len(succeeded)
    rate = float(np.mean([x.p_value < config.alpha for x in succeeded]))
    statistics = np.array([x.statistic for x in succeeded])
    spread = statistics.std(ddof=1) if count > 1 else np.nan
    return EmpiricalPower(
        rate=rate,
        mc_se=float(np.sqrt(rate * (1 - rate) / count)),
        replicates=count,
        excluded=excluded,
        mean_statistic=float(statistics.mean()),
        statistic_se=float(spread / np.sqrt(count)),
    )


def audit_groups(model: ModelId, chromosome):
    """Groups of coding schemes compared by an invariance audit"""
    if chromosome is Chromosome.AUTOSOME:
        R = CodingScheme(Allele.ALT)
        r = CodingScheme(Allele.REF)
        R_r = CodingScheme(Allele.ALT, male_risk=Allele.REF)
        return {'risk allele': [R, r], 'male baseline': [R, R_r]}
    schemes = CodingScheme.all()
    if ModelId.M3.nested_in(model):
        return {'all schemes': schemes}
    inactivated = [x for x in schemes if x.inactivated]
    active = [x for x in schemes if not x.inactivated]
    return {
        'within XCI': inactivated,
        'within no-XCI': active,
        'across XCI': schemes,
    }


def invariance_audit(states, sexes, y, model: ModelId, family: Family,
                     kind: TestKind, chromosome=Chromosome.X,
                     covariates=None) -> AuditReport:
    """Compare a test statistic across coding schemes

    Schemes related by a block upper-triangular design transformation
    give identical statistics; other scheme pairs generally differ.
    """
    groups = audit_groups(model, chromosome)
    extra = None if covariates is None else np.asarray(covariates, float)
    count = 0 if extra is None else extra.reshape(len(states), -1).shape[1]
    statistics = {}
    for scheme in {x for group in groups.values() for x in group}:
        spec = ModelSpec(model, family=family, scheme=scheme,
                         extra_covariate_count=count)
        X = build_design(states, sexes, spec, extra=extra,
                         chromosome=chromosome)
        y_used = X.select(y)
        statistics[str(scheme)] = run_test(X, y_used, kind, family).statistic
    discrepancies = {
        label: float(np.ptp([statistics[str(x)] for x in group]))
        for label, group in groups.items()
    }
    return AuditReport(discrepancies, dict(sorted(statistics.items())))


def simulation_rows(config: SimConfig, models, tests, scheme=None,
                    workers=None):
    """Empirical and analytic power for each model and test"""
    scheme = scheme or CodingScheme(Allele.ALT, Inactivation.INACTIVATED)
    rows = []
    for model in models:
        spec = ModelSpec(model, family=config.family, scheme=scheme)
        ncp = ncp_misspecified(config.effects, config.pop, spec, config.n,
                               sex_effect=config.sex_effect,
                               chromosome=config.chromosome)
        analytic = power(PowerQuery(spec.q, ncp, config.alpha))
        for kind in tests:
            result = empirical_power(config, spec, kind, workers=workers)
            rows.append(SimResultRow(
                config.config_hash, str(spec), kind, result.replicates,
                result.excluded, result.rate, result.mc_se,
                result.mean_statistic, result.statistic_se, spec.q, ncp,
                analytic,
            ))
    return rows
