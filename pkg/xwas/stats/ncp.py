"""Noncentrality parameters

The noncentrality parameter (ncp) of a Wald, score or likelihood
ratio test is the Schur complement quadratic form

    ncp = β₂ᵀ[H₂₂ − H₂₁H₁₁⁻¹H₁₂]β₂

of the Fisher information H partitioned into untested (1) and tested
(2) blocks.  Asymptotically, with β = c/√n, H/n tends to P/σ² where P
is the moment matrix of the coded covariates under the population
genotype distribution.  The logistic family is handled by taking
σ² = 4.

Misspecified models are handled by reparametrizing the omitted
covariates to be uncorrelated with the fitted ones under the
population distribution: the tested coefficients of the fitted model
then coincide with those of the reparametrized full model.

>>> pop = PopulationSpec(0.5)
>>> effects = EffectSpec.from_coefficients(0.3, 0.0)
>>> additive = ModelSpec(ModelId.ADDITIVE)
>>> round(ncp_misspecified(effects, pop, additive, 1000), 8)
11.25
"""

from dataclasses import dataclass, field, replace
from enum import Enum
import logging
import math
from typing import List, Tuple
import numpy as np
from scipy import linalg
from ..family import Family
from ..genetics.design import (ModelId, ModelSpec, build_design,
                               reparametrized_design, check_frequency)
from ..genetics.genotype import Allele, Chromosome, CodingScheme
from ..record import XwasRecord, xwasrecord
from .association import NestingError
from .glm import SingularDesignError
from .power import PowerQuery, power

__all__ = [
    'PopulationSpec',
    'EffectSpec',
    'MomentMatrix',
    'GroupMeanFit',
    'Sweep',
    'AutosomeCurvePoint',
    'XCurvePoint',
    'moment_matrix',
    'ncp_exact',
    'ncp_asymptotic',
    'ncp_misspecified',
    'effective_additive',
    'beta_from_group_means',
    'autosome_curves',
    'x_curves',
]

logger = logging.getLogger(__name__)

LOGISTIC_VARIANCE = 4.0
"""Residual variance giving linear ncps equal to logistic ncps"""

PROJECTION_TOLERANCE = 1e-10
"""Largest group-mean residual for an exact coefficient fit"""


@dataclass(frozen=True)
class Strata:
    """Genotype-sex strata of a population"""

    states: np.ndarray
    """Genotype state of each stratum"""

    sexes: np.ndarray
    """Sex of each stratum"""

    probabilities: np.ndarray
    """Population probability of each stratum"""


@dataclass(frozen=True)
class PopulationSpec:
    """Population genotype distribution

    Allele frequencies refer to the alternative allele R.
    """

    f_female: float
    """Female allele frequency"""

    f_male: float = None
    """Male allele frequency (default: same as females)"""

    sex_ratio: float = 0.5
    """Proportion of males"""

    hwe: bool = True
    """Female genotypes are in Hardy-Weinberg equilibrium"""

    female_genotype_freqs: Tuple[float, float, float] = None
    """Female genotype frequencies (rr, rR, RR) when not in equilibrium"""

    def __post_init__(self):
        if self.f_male is None:
            object.__setattr__(self, 'f_male', self.f_female)
        check_frequency("female", self.f_female)
        check_frequency("male", self.f_male)
        if not 0 < self.sex_ratio < 1:
            raise ValueError("sex ratio %r outside (0, 1)" % self.sex_ratio)
        freqs = self.female_genotype_freqs
        if self.hwe:
            if freqs is not None:
                raise ValueError("genotype frequencies given under HWE")
        else:
            if freqs is None or len(freqs) != 3:
                raise ValueError("three female genotype frequencies required")
            if min(freqs) < 0 or abs(sum(freqs) - 1) > 1e-9:
                raise ValueError("invalid female genotype frequencies %r" %
                                 (freqs,))
            object.__setattr__(self, 'female_genotype_freqs',
                               tuple(float(x) for x in freqs))

    @staticmethod
    def equilibrium(f):
        """Hardy-Weinberg genotype frequencies (rr, rR, RR)"""
        return np.array([(1 - f) ** 2, 2 * f * (1 - f), f ** 2])

    @property
    def female_frequencies(self):
        """Female genotype frequencies (rr, rR, RR)"""
        if self.hwe:
            return self.equilibrium(self.f_female)
        return np.array(self.female_genotype_freqs)

    @property
    def female_allele_frequency(self):
        """Female allele frequency implied by the genotype frequencies"""
        freqs = self.female_frequencies
        return float(freqs[1] / 2 + freqs[2])

    def male_frequencies(self, chromosome):
        """Male genotype frequencies"""
        if chromosome is Chromosome.X:
            return np.array([1 - self.f_male, self.f_male])
        return self.equilibrium(self.f_male)

    def risk_frequencies(self, scheme: CodingScheme):
        """Female and male frequencies of the scheme's risk alleles"""
        female = self.female_allele_frequency
        if scheme.risk is Allele.REF:
            female = 1 - female
        male = self.f_male
        if scheme.male_risk is Allele.REF:
            male = 1 - male
        return female, male

    def strata(self, chromosome=Chromosome.X):
        """Genotype-sex strata and their probabilities"""
        male = self.male_frequencies(chromosome)
        if chromosome is Chromosome.X:
            states = np.arange(5)
        else:
            states = np.array([0, 1, 2, 0, 1, 2])
        sexes = np.array([0, 0, 0] + [1] * len(male))
        probabilities = np.concatenate([
            (1 - self.sex_ratio) * self.female_frequencies,
            self.sex_ratio * male,
        ])
        return Strata(states, sexes, probabilities)


@dataclass(frozen=True)
class EffectSpec:
    """Genotype group mean effects"""

    mu_rr: float = 0.0
    mu_rR: float = 0.0
    mu_RR: float = 0.0
    mu_r: float = 0.0
    mu_R: float = 0.0

    sigma2: float = LOGISTIC_VARIANCE
    """Residual variance (linear family)"""

    family: Family = Family.LINEAR
    """Response family"""

    def __post_init__(self):
        if not all(math.isfinite(x) for x in self.means):
            raise ValueError("non-finite group mean")
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise ValueError("invalid residual variance %r" % self.sigma2)

    @classmethod
    def from_coefficients(cls, beta_a, beta_d, **kwargs):
        """Autosome group means for additive and dominant effects"""
        return cls(0.0, beta_a + beta_d, 2 * beta_a, **kwargs)

    @property
    def means(self):
        """Group means (rr, rR, RR, r, R)"""
        return (self.mu_rr, self.mu_rR, self.mu_RR, self.mu_r, self.mu_R)

    @property
    def residual_variance(self):
        """Residual variance used in ncp calculations"""
        if self.family is Family.LOGISTIC:
            return LOGISTIC_VARIANCE
        return self.sigma2

    def group_means(self, strata: Strata):
        """Mean of each stratum"""
        return np.array(self.means)[strata.states]

    def replace(self, **kwargs):
        """Copy with some fields replaced"""
        return replace(self, **kwargs)


@dataclass
class MomentMatrix:
    """Limiting second moment matrix of the coded covariates"""

    values: np.ndarray
    """Moment matrix"""

    labels: List[str]
    """Row and column labels"""

    tested: Tuple[int, ...]
    """Indices of tested rows and columns"""

    untested: Tuple[int, ...] = field(init=False)
    """Indices of untested rows and columns"""

    def __post_init__(self):
        self.untested = tuple(
            i for i in range(len(self.values)) if i not in self.tested
        )

    def __getitem__(self, key):
        row, col = key
        return float(self.values[self.labels.index(row),
                                 self.labels.index(col)])


@dataclass
class GroupMeanFit:
    """Model coefficients reproducing genotype group means"""

    beta: np.ndarray
    """Coefficients"""

    labels: List[str]
    """Coefficient labels"""

    projected: bool
    """Means are not exactly representable (least-squares projection)"""

    def __getitem__(self, label):
        return float(self.beta[self.labels.index(label)])


def schur_complement(matrix, untested, tested):
    """Schur complement of the untested block"""
    M22 = matrix[np.ix_(tested, tested)]
    if not untested:
        return M22
    M11 = matrix[np.ix_(untested, untested)]
    M12 = matrix[np.ix_(untested, tested)]
    if np.linalg.matrix_rank(M11) < len(untested):
        raise SingularDesignError()
    return M22 - M12.T @ linalg.solve(M11, M12, assume_a='sym')


def weighted_moments(values, weights):
    """Weighted cross-product matrix XᵀDX"""
    return values.T @ (values * weights[:, None])


def stratum_design(pop: PopulationSpec, spec: ModelSpec, chromosome,
                   reparametrized=False):
    """Design matrix with one row per genotype-sex stratum"""
    if spec.extra_covariate_count:
        raise ValueError("environmental covariates have no population model")
    strata = pop.strata(chromosome)
    if reparametrized:
        f_female, f_male = pop.risk_frequencies(spec.scheme)
        X = reparametrized_design(strata.states, strata.sexes, f_female,
                                  f_male, spec, chromosome=chromosome,
                                  sex_ratio=pop.sex_ratio)
    else:
        X = build_design(strata.states, strata.sexes, spec,
                         chromosome=chromosome)
    return strata, X


def moment_matrix(pop: PopulationSpec, spec: ModelSpec, chromosome=None,
                  reparametrized=False) -> MomentMatrix:
    """Limiting moment matrix P of XᵀX/n

    >>> P = moment_matrix(PopulationSpec(0.2), ModelSpec(ModelId.GENOTYPIC))
    >>> round(P['1', 'G_A'], 10), round(P['G_A', 'G_D'], 10)
    (0.4, 0.32)
    """
    chromosome = chromosome or spec.chromosome
    strata, X = stratum_design(pop, spec, chromosome, reparametrized)
    values = weighted_moments(X.values, strata.probabilities)
    return MomentMatrix(values, X.labels, X.tested)


def ncp_exact(X, beta, family: Family, sigma2=LOGISTIC_VARIANCE):
    """Noncentrality parameter for a design and coefficient vector

    The information matrix is XᵀX/σ² for the linear family, and XᵀWX
    for the logistic family with weights evaluated at the coefficients
    constrained to zero on the tested block.
    """
    beta = np.asarray(beta, dtype=float)
    if beta.shape != (X.p,):
        raise ValueError("expected %d coefficients" % X.p)
    values = X.values
    if family is Family.LOGISTIC:
        null = beta.copy()
        null[list(X.tested)] = 0
        H = weighted_moments(values, family.weights(
            family.inverse_link(values @ null)
        ))
    else:
        if sigma2 <= 0:
            raise ValueError("invalid residual variance %r" % sigma2)
        H = values.T @ values / sigma2
    S = schur_complement(H, list(X.untested), list(X.tested))
    b2 = beta[list(X.tested)]
    return float(b2 @ S @ b2)


def ncp_asymptotic(P: MomentMatrix, c2, sigma2=LOGISTIC_VARIANCE):
    """Asymptotic noncentrality parameter

    The scaled tested coefficients are c₂ = β₂√n.
    """
    c2 = np.asarray(c2, dtype=float).ravel()
    if len(c2) != len(P.tested):
        raise ValueError("expected %d tested coefficients" % len(P.tested))
    if sigma2 <= 0:
        raise ValueError("invalid residual variance %r" % sigma2)
    S = schur_complement(P.values, list(P.untested), list(P.tested))
    return float(c2 @ S @ c2) / sigma2


def fit_means(values, means, weights):
    """Weighted least-squares fit of stratum means"""
    root = np.sqrt(weights)
    beta = linalg.lstsq(values * root[:, None], means * root)[0]
    residual = np.abs(values @ beta - means).max()
    return beta, residual > PROJECTION_TOLERANCE


def ncp_misspecified(true_effects: EffectSpec, pop: PopulationSpec,
                     fitted_model: ModelSpec, n, sex_effect=0.0,
                     true_model: ModelId = None, chromosome=None):
    """Asymptotic ncp of a fitted model under given group means

    The true model defaults to the saturated model within which the
    fitted model is nested.  Omitted covariates are orthogonalised
    against the fitted covariates under the population distribution,
    and the tested block of the fitted model is assessed within the
    resulting reparametrized full model.
    """
    chromosome = chromosome or fitted_model.chromosome
    true_model = true_model or fitted_model.model.full
    if not fitted_model.model.nested_in(true_model):
        raise NestingError()
    strata, X = stratum_design(pop, fitted_model, chromosome)
    _, full = stratum_design(pop, fitted_model.replace(model=true_model),
                             chromosome)
    D = strata.probabilities

    # Reparametrize omitted covariates
    omitted = [i for i, x in enumerate(full.labels) if x not in X.labels]
    C = full.values[:, omitted]
    if omitted:
        C = C - X.values @ linalg.solve(weighted_moments(X.values, D),
                                        X.values.T @ (C * D[:, None]),
                                        assume_a='sym')
    Z = np.column_stack([X.values, C])

    # Coefficients of the reparametrized full model
    means = true_effects.group_means(strata) + sex_effect * strata.sexes
    beta, projected = fit_means(Z, means, D)
    if projected:
        logger.debug("Group means projected onto %s", true_model.value)

    labels = X.labels + ['%s*' % full.labels[i] for i in omitted]
    P = MomentMatrix(weighted_moments(Z, D), labels, X.tested)
    c2 = beta[list(X.tested)] * math.sqrt(n)
    return ncp_asymptotic(P, c2, true_effects.residual_variance)


def effective_additive(a, d, f):
    """Effective additive effect of an additive and dominant effect

    The homozygote contrast is weighted by the relative frequencies of
    the two homozygotes.

    >>> round(effective_additive(0.3, 0.6, 0.2), 4)
    0.8294
    """
    check_frequency("allele", f)
    w_rr, w_RR = (1 - f) ** 2, f ** 2
    return a + (w_rr - w_RR) / (w_rr + w_RR) * d


def beta_from_group_means(effects: EffectSpec, scheme: CodingScheme,
                          model: ModelSpec, pop: PopulationSpec = None,
                          chromosome=None) -> GroupMeanFit:
    """Model coefficients reproducing the genotype group means

    Saturated models reproduce the means exactly.  Otherwise the means
    are projected by least squares weighted by the stratum
    probabilities of the population (or equally weighted strata).

    >>> fit = beta_from_group_means(
    ...     EffectSpec(-0.3, 0.0, 0.3, 0.0, 0.5), CodingScheme(),
    ...     ModelSpec(ModelId.M4),
    ... )
    >>> round(fit['G_A'], 10), round(fit['GS'], 10)
    (0.6, -0.1)
    """
    spec = model.replace(scheme=scheme)
    chromosome = chromosome or spec.chromosome
    if pop is None:
        pop = PopulationSpec(0.5)
        strata, X = stratum_design(pop, spec, chromosome)
        weights = np.ones(len(strata.states))
    else:
        strata, X = stratum_design(pop, spec, chromosome)
        weights = strata.probabilities
    beta, projected = fit_means(X.values, effects.group_means(strata),
                                weights)
    if projected:
        logger.debug("Group means projected onto %s", spec)
    return GroupMeanFit(beta, X.labels, projected)


class Sweep(Enum):
    """Group mean varied in X-chromosome power curves"""

    DOMINANT = 'mu_rR'
    INTERACTION = 'mu_R'


@xwasrecord
class AutosomeCurvePoint(XwasRecord):
    """Autosome power curve table row"""

    f: float
    beta_d: float
    effective_additive: float
    ncp_additive: float
    ncp_genotypic: float
    power_additive: float
    power_genotypic: float


@xwasrecord
class XCurvePoint(XwasRecord):
    """X-chromosome power curve table row"""

    sweep: Sweep
    value: float
    ncp_m1: float
    ncp_m2: float
    ncp_m3: float
    ncp_m4: float
    power_m1: float
    power_m2: float
    power_m3: float
    power_m4: float


CURVE_MODELS = (ModelId.M1, ModelId.M2, ModelId.M3, ModelId.M4)


def autosome_curves(frequencies=(0.2, 0.5), beta_a=0.3, beta_d=None,
                    n=1000, alpha=0.0025, sigma2=LOGISTIC_VARIANCE):
    """Additive and genotypic test power over a range of dominant effects"""
    if beta_d is None:
        beta_d = np.linspace(-0.6, 0.6, 25)
    additive = ModelSpec(ModelId.ADDITIVE)
    genotypic = ModelSpec(ModelId.GENOTYPIC)
    rows = []
    for f in frequencies:
        pop = PopulationSpec(f)
        for d in beta_d:
            effects = EffectSpec.from_coefficients(beta_a, d, sigma2=sigma2)
            ncp_a = ncp_misspecified(effects, pop, additive, n)
            ncp_g = ncp_misspecified(effects, pop, genotypic, n)
            rows.append(AutosomeCurvePoint(
                float(f), float(d), effective_additive(beta_a, d, f),
                ncp_a, ncp_g,
                power(PowerQuery(additive.q, ncp_a, alpha)),
                power(PowerQuery(genotypic.q, ncp_g, alpha)),
            ))
    return rows


def x_curves(sweep: Sweep, pop: PopulationSpec, values=None,
             base: EffectSpec = None, scheme: CodingScheme = None,
             n=1000, alpha=0.0008, sex_effect=0.0):
    """M1 to M4 test power as one group mean varies

    The other group means default to μ_rr = −0.3, μ_RR = 0.3, μ_r = 0
    with μ_rR = 0 and μ_R = 0.3, the additive XCI pattern.
    """
    if values is None:
        values = np.linspace(-0.6, 0.6, 25)
    if base is None:
        base = EffectSpec(-0.3, 0.0, 0.3, 0.0, 0.3)
    scheme = scheme or CodingScheme()
    rows = []
    for value in values:
        effects = base.replace(**{sweep.value: float(value)})
        ncps, powers = [], []
        for model in CURVE_MODELS:
            spec = ModelSpec(model, family=effects.family, scheme=scheme)
            ncp = ncp_misspecified(effects, pop, spec, n,
                                   sex_effect=sex_effect)
            ncps.append(ncp)
            powers.append(power(PowerQuery(spec.q, ncp, alpha)))
        rows.append(XCurvePoint(sweep, float(value), *ncps, *powers))
    return rows
