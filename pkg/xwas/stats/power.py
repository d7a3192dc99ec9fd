"""Chi-squared power calculations

Power of a chi-squared test with ``df`` degrees of freedom at
significance level α is the upper tail of the noncentral chi-squared
distribution beyond the central critical value.  The noncentral
distribution functions are evaluated as Poisson mixtures of central
chi-squared distributions.

Tests with more degrees of freedom lose power at equal noncentrality,
but the loss is bounded:

>>> result = max_power_loss(1, 2, alpha_range=(2.5, 2.7),
...                         ncp_range=(9, 12))
>>> 0.113 < result.max_loss < 0.115
True
"""

from dataclasses import dataclass
from functools import lru_cache
import logging
import math
import numpy as np
from scipy import optimize, stats
from ..record import XwasRecord, xwasrecord

__all__ = [
    'GENOME_WIDE_ALPHA',
    'PowerQuery',
    'LossSurfaceResult',
    'SurfacePoint',
    'LossLandmark',
    'GainPoint',
    'noncentral_chisq_cdf',
    'noncentral_chisq_sf',
    'critical_value',
    'power',
    'power_curve',
    'power_surface',
    'max_power_loss',
    'loss_landmarks',
    'power_gain_curve',
    'gain_crossover',
    'surface_table',
]

logger = logging.getLogger(__name__)

GENOME_WIDE_ALPHA = 5e-8
"""Conventional genome-wide significance level"""

SERIES_TAIL = 1e-14
"""Neglected Poisson tail mass in the mixture series"""

DF_PAIRS = ((1, 2), (1, 3), (2, 3))
"""Degrees-of-freedom pairs compared in loss tables"""


@dataclass(frozen=True)
class PowerQuery:
    """A power calculation"""

    df: int
    """Degrees of freedom"""

    ncp: float
    """Noncentrality parameter"""

    alpha: float
    """Significance level"""

    def __post_init__(self):
        if int(self.df) != self.df or self.df < 1:
            raise ValueError("invalid degrees of freedom %r" % self.df)
        if not math.isfinite(self.ncp) or self.ncp < 0:
            raise ValueError("invalid noncentrality %r" % self.ncp)
        if not 0 < self.alpha < 1:
            raise ValueError("significance level %r outside (0, 1)" %
                             self.alpha)


@dataclass
class LossSurfaceResult:
    """Maximum power loss between two degrees of freedom"""

    max_loss: float
    """Largest power difference"""

    argmax_alpha: float
    """Significance level at the maximum"""

    argmax_ncp: float
    """Noncentrality parameter at the maximum"""

    grid_spec: str
    """Description of the search grid"""


@xwasrecord
class SurfacePoint(XwasRecord):
    """Power surface table row"""

    alpha: float
    ncp: float
    power_df1: float
    power_df2: float
    power_df3: float
    loss_df1_df2: float
    loss_df1_df3: float
    loss_df2_df3: float


@xwasrecord
class LossLandmark(XwasRecord):
    """Maximum power loss table row"""

    df_small: int
    df_large: int
    max_loss: float
    alpha: float
    ncp: float


@xwasrecord
class GainPoint(XwasRecord):
    """Power gain curve table row"""

    ncp1: float
    delta: float
    power_small: float
    power_large: float


def poisson_weights(ncp):
    """Poisson mixture terms and weights for an array of ncp values

    Returns the term indices j (length J) and a J × N weight matrix.
    """
    half = np.asarray(ncp, dtype=float).ravel() / 2
    top = half.max(initial=0.0)
    count = int(stats.poisson.isf(SERIES_TAIL, top)) + 2 if top > 0 else 1
    terms = np.arange(count)
    with np.errstate(invalid='ignore', divide='ignore'):
        weights = stats.poisson.pmf(terms[:, None], half[None, :])
    weights = np.where(half[None, :] > 0, weights,
                       (terms == 0)[:, None].astype(float))
    return terms, weights


def mixture(x, df, ncp, central):
    """Evaluate a Poisson mixture of central distribution functions"""
    x, ncp = np.broadcast_arrays(np.asarray(x, dtype=float),
                                 np.asarray(ncp, dtype=float))
    if np.any(x < 0) or np.any(ncp < 0):
        raise ValueError("negative argument")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(ncp))):
        raise ValueError("non-finite argument")
    terms, weights = poisson_weights(ncp)
    values = central(x.ravel()[None, :], df + 2 * terms[:, None])
    result = np.clip((weights * values).sum(axis=0), 0.0, 1.0)
    result = result.reshape(x.shape)
    return float(result) if result.ndim == 0 else result


def noncentral_chisq_cdf(x, df, ncp):
    """Noncentral chi-squared distribution function

    >>> round(noncentral_chisq_cdf(3.841459, 1, 0), 6)
    0.95
    """
    return mixture(x, df, ncp, stats.chi2.cdf)


def noncentral_chisq_sf(x, df, ncp):
    """Noncentral chi-squared survival function"""
    return mixture(x, df, ncp, stats.chi2.sf)


@lru_cache(maxsize=65536)
def critical_value(df, alpha):
    """Central chi-squared critical value

    Solved by bracketed root finding on the log survival function.

    >>> round(critical_value(1, 0.05), 6)
    3.841459
    """
    if not 0 < alpha < 1:
        raise ValueError("significance level %r outside (0, 1)" % alpha)
    target = math.log(alpha)

    def excess(x):
        return stats.chi2.logsf(x, df) - target

    upper = max(float(df), 1.0)
    while excess(upper) > 0:
        upper *= 2
    return optimize.brentq(excess, 0.0, upper, xtol=1e-12)


def power(query: PowerQuery):
    """Power of a chi-squared test

    >>> power(PowerQuery(df=2, ncp=0, alpha=0.05))
    0.05
    """
    return round_power(noncentral_chisq_sf(
        critical_value(query.df, query.alpha), query.df, query.ncp
    ))


def round_power(value):
    """Suppress floating-point noise below the series accuracy"""
    return float(np.round(value, 12))


def power_curve(df, ncp, alpha):
    """Power over an array of noncentrality parameters"""
    return noncentral_chisq_sf(critical_value(df, alpha), df, ncp)


def power_surface(df, ncp, alpha):
    """Power over a grid of significance levels and ncp values

    Returns an array with one row per significance level and one
    column per noncentrality parameter.
    """
    ncp = np.asarray(ncp, dtype=float).ravel()
    alpha = np.asarray(alpha, dtype=float).ravel()
    if np.any(ncp < 0):
        raise ValueError("negative noncentrality")
    crit = np.array([critical_value(df, float(x)) for x in alpha])
    terms, weights = poisson_weights(ncp)
    central = stats.chi2.sf(crit[:, None], df + 2 * terms[None, :])
    return np.clip(central @ weights, 0.0, 1.0)


def grid(lower, upper, step):
    """Evenly spaced grid including both end points"""
    if upper < lower:
        raise ValueError("empty range [%g, %g]" % (lower, upper))
    count = int(round((upper - lower) / step)) + 1
    return np.minimum(lower + step * np.arange(count), upper)


def max_power_loss(df_small, df_large, alpha_range=(0.0, 15.0),
                   ncp_range=(0.0, 100.0), alpha_step=0.01, ncp_step=0.1,
                   resolution=1e-4) -> LossSurfaceResult:
    """Maximum power loss of the larger-df test at equal ncp

    The significance level range is given in units of −log₁₀α; a
    degenerate range fixes the significance level.  The surface is
    searched on a grid, and the best grid point is refined by a
    compass search that halves its steps down to the given
    resolution.
    """
    if not df_small < df_large:
        raise ValueError("degrees of freedom must increase")
    (a_lo, a_hi), (n_lo, n_hi) = alpha_range, ncp_range
    a_lo = max(a_lo, 0.0)

    # Grid search (excluding α = 1)
    log_alpha = grid(a_lo, a_hi, alpha_step)
    log_alpha = log_alpha[log_alpha > 0]
    if not len(log_alpha):
        raise ValueError("significance level range excludes (0, 1)")
    ncp = grid(n_lo, n_hi, ncp_step)
    alpha = 10 ** -log_alpha
    loss = (power_surface(df_small, ncp, alpha) -
            power_surface(df_large, ncp, alpha))
    i, j = np.unravel_index(np.argmax(loss), loss.shape)
    best = (log_alpha[i], ncp[j])
    best_loss = loss[i, j]

    def loss_at(a, x):
        level = 10 ** -a
        return (power_curve(df_small, x, level) -
                power_curve(df_large, x, level))

    # Compass refinement
    a_min = max(a_lo, log_alpha[0])
    steps = [alpha_step if a_hi > a_lo else 0.0, ncp_step]
    while max(steps) > resolution:
        moved = False
        for da in (-1, 0, 1):
            for dn in (-1, 0, 1):
                if not (da or dn):
                    continue
                a = min(max(best[0] + da * steps[0], a_min), a_hi)
                x = min(max(best[1] + dn * steps[1], n_lo), n_hi)
                value = loss_at(a, x)
                if value > best_loss:
                    best, best_loss, moved = (a, x), value, True
        if not moved:
            steps = [s / 2 for s in steps]

    spec = ("-log10(alpha) in [%g, %g] step %g; ncp in [%g, %g] step %g; "
            "refined to %g" % (a_lo, a_hi, alpha_step, n_lo, n_hi, ncp_step,
                               resolution))
    logger.debug("Maximum loss df %d vs %d: %.4f at alpha=%.3g ncp=%.2f",
                 df_small, df_large, best_loss, 10 ** -best[0], best[1])
    return LossSurfaceResult(float(best_loss), float(10 ** -best[0]),
                             float(best[1]), spec)


def loss_landmarks(alpha=None, pairs=DF_PAIRS, **kwargs):
    """Maximum power loss for each degrees-of-freedom pair

    If a significance level is given, the search is restricted to
    that level.
    """
    if alpha is not None:
        level = -math.log10(alpha)
        kwargs['alpha_range'] = (level, level)
    rows = []
    for small, large in pairs:
        result = max_power_loss(small, large, **kwargs)
        rows.append(LossLandmark(small, large, result.max_loss,
                                 result.argmax_alpha, result.argmax_ncp))
    return rows


def power_gain_curve(ncp1, delta_range=(0.0, 10.0), alpha=0.0025,
                     df_small=1, df_large=2, step=0.1):
    """Power of the smaller-df test at ncp₁ against the larger-df test
    at ncp₁ + Δ"""
    lower, upper = delta_range
    if lower < 0:
        raise ValueError("negative ncp increment")
    delta = grid(lower, upper, step)
    small = power(PowerQuery(df_small, ncp1, alpha))
    large = power_curve(df_large, ncp1 + delta, alpha)
    return [GainPoint(float(ncp1), float(d), small, float(p))
            for d, p in zip(delta, large)]


def gain_crossover(ncp1, alpha=0.0025, df_small=1, df_large=2):
    """Smallest ncp increment at which the power gain of the larger-df
    test matches its power loss at equal ncp"""
    small = power(PowerQuery(df_small, ncp1, alpha))
    loss = small - power(PowerQuery(df_large, ncp1, alpha))
    target = small + loss
    if target >= 1:
        raise ValueError("no crossover: power loss %.4f too large" % loss)

    def excess(delta):
        return power_curve(df_large, ncp1 + delta, alpha) - target

    upper = max(ncp1, 1.0)
    while excess(upper) < 0:
        upper *= 2
    return optimize.brentq(excess, 0.0, upper, xtol=1e-10)


def surface_table(alpha_range=(0.0, 15.0), ncp_range=(0.0, 100.0),
                  alpha_step=0.1, ncp_step=1.0):
    """Power and power loss over a grid for 1, 2 and 3 degrees of freedom"""
    log_alpha = grid(*alpha_range, alpha_step)
    log_alpha = log_alpha[log_alpha > 0]
    ncp = grid(*ncp_range, ncp_step)
    alpha = 10 ** -log_alpha
    surfaces = {df: power_surface(df, ncp, alpha) for df in (1, 2, 3)}
    rows = []
    for i, level in enumerate(alpha):
        for j, x in enumerate(ncp):
            p1, p2, p3 = (float(surfaces[df][i, j]) for df in (1, 2, 3))
            rows.append(SurfacePoint(float(level), float(x), p1, p2, p3,
                                     p1 - p2, p1 - p3, p2 - p3))
    return rows
