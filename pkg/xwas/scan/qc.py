"""SNP quality control

Quality control reports are informational: Hardy-Weinberg
equilibrium is not required for the validity of any association test,
and a SNP is dropped only when it has too few observed genotypes or
too few copies of the minor allele to fit the models.

>>> abs(hwe_check((1012, 1192, 421)) - 0.026) < 0.002
True
>>> hwe_check((25, 50, 25))
1.0
>>> hwe_check((0, 100, 0)) < 1e-20
True
"""

from dataclasses import dataclass
from enum import Enum
import logging
import numpy as np
from scipy import stats
from scipy.special import gammaln
from ..genetics.genotype import ALT_COUNT, Chromosome, GenotypeState
from ..record import XwasRecord, xwasrecord

__all__ = [
    'HweMethod',
    'QcThresholds',
    'QcResult',
    'hwe_check',
    'hwe_exact',
    'genotype_counts',
    'minor_allele_counts',
    'qc_check',
]

logger = logging.getLogger(__name__)


class HweMethod(Enum):
    """Hardy-Weinberg equilibrium test"""

    CHISQ = 'chisq'
    EXACT = 'exact'

    def __call__(self, counts):
        if self is HweMethod.EXACT:
            return hwe_exact(counts)
        return hwe_check(counts)


def check_counts(counts):
    """Validate a triple of genotype counts"""
    counts = np.asarray(counts, dtype=float)
    if counts.shape != (3,):
        raise ValueError("expected three genotype counts")
    if np.any(counts < 0):
        raise ValueError("negative genotype count")
    if not counts.sum():
        raise ValueError("zero total genotype count")
    return counts


def hwe_check(counts):
    """Pearson chi-squared test of Hardy-Weinberg equilibrium

    Counts are given in the order (rr, rR, RR).  A monomorphic sample
    has no expected heterozygotes and is reported as being in
    equilibrium.
    """
    counts = check_counts(counts)
    total = counts.sum()
    f = (counts[1] + 2 * counts[2]) / (2 * total)
    expected = total * np.array([(1 - f) ** 2, 2 * f * (1 - f), f ** 2])
    if np.any(expected == 0):
        return 1.0
    statistic = np.sum((counts - expected) ** 2 / expected)
    return float(stats.chi2.sf(statistic, 1))


def hwe_exact(counts):
    """Exact test of Hardy-Weinberg equilibrium

    The distribution of the heterozygote count conditional on the
    allele counts is enumerated in log space; the p-value sums the
    probabilities of all heterozygote counts no more likely than the
    observed count.

    >>> 0.02 < hwe_exact((1012, 1192, 421)) < 0.035
    True
    >>> hwe_exact((10, 0, 0))
    1.0
    """
    counts = check_counts(counts).astype(int)
    total = int(counts.sum())
    rare = int(min(2 * counts[0] + counts[1], 2 * counts[2] + counts[1]))
    hets = np.arange(rare % 2, rare + 1, 2)
    homr = (rare - hets) // 2
    homc = total - hets - homr
    logp = (hets * np.log(2) - gammaln(hets + 1) - gammaln(homr + 1) -
            gammaln(homc + 1))
    probs = np.exp(logp - logp.max())
    probs /= probs.sum()
    observed = probs[hets == counts[1]][0]
    return float(min(1.0, probs[probs <= observed * (1 + 1e-7)].sum()))


@dataclass
class QcThresholds:
    """Quality control thresholds"""

    max_missing: float = 0.1
    """Largest acceptable fraction of missing genotypes"""

    min_mac: int = 5
    """Smallest acceptable minor allele count within each sex"""

    hwe_method: HweMethod = HweMethod.CHISQ
    """Hardy-Weinberg equilibrium test used for reporting"""

    hwe_alpha: float = None
    """Significance level at which to drop SNPs out of equilibrium"""


@xwasrecord
class QcResult(XwasRecord):
    """Quality control report for a single SNP"""

    snp_id: str
    missing_rate: float
    mac_female: int
    mac_male: int
    hwe_p: float
    passed: bool
    reason: str = None


def genotype_counts(states):
    """Counts of the diploid genotypes (rr, rR, RR)"""
    states = np.asarray(states, dtype=int)
    return np.array([np.sum(states == x) for x in (
        GenotypeState.FEMALE_LOW,
        GenotypeState.FEMALE_HET,
        GenotypeState.FEMALE_HIGH,
    )])


def minor_allele_count(states, chromosome, male):
    """Minor allele count within one sex"""
    states = np.asarray(states, dtype=int)
    states = states[states != GenotypeState.MISSING]
    if not len(states):
        return 0
    alt = int(ALT_COUNT[states].sum())
    ploidy = 1 if male and chromosome is Chromosome.X else 2
    return min(alt, ploidy * len(states) - alt)


def minor_allele_counts(states, sexes, chromosome):
    """Minor allele counts in females and in males"""
    states = np.asarray(states, dtype=int)
    sexes = np.asarray(sexes, dtype=int)
    return tuple(
        minor_allele_count(states[sexes == s], chromosome, bool(s))
        for s in (0, 1)
    )


def qc_check(snp, sexes, thresholds: QcThresholds = None) -> QcResult:
    """Apply quality control thresholds to a single SNP

    Minor allele counts are checked only within sexes that are present
    in the sample.  Hardy-Weinberg equilibrium is assessed in females
    for X SNPs and in all samples for autosome SNPs.
    """
    thresholds = thresholds or QcThresholds()
    states = np.asarray(snp.states, dtype=int)
    sexes = np.asarray(sexes, dtype=int)
    missing_rate = float(np.mean(states == GenotypeState.MISSING))
    mac = minor_allele_counts(states, sexes, snp.chromosome)
    diploid = states if snp.chromosome is Chromosome.AUTOSOME else (
        states[sexes == 0]
    )
    counts = genotype_counts(diploid)
    hwe_p = thresholds.hwe_method(counts) if counts.sum() else float('nan')

    reason = None
    present = [np.any((sexes == s) & (states != GenotypeState.MISSING))
               for s in (0, 1)]
    if missing_rate > thresholds.max_missing:
        reason = "missingness %.3f" % missing_rate
    elif any(p and m < thresholds.min_mac for p, m in zip(present, mac)):
        reason = "minor allele count %d/%d" % mac
    elif thresholds.hwe_alpha is not None and hwe_p < thresholds.hwe_alpha:
        reason = "HWE p %.3g" % hwe_p
    if reason is not None:
        logger.info("QC dropped SNP %s: %s", snp.snp_id, reason)
    return QcResult(snp.snp_id, missing_rate, mac[0], mac[1], hwe_p,
                    reason is None, reason)
