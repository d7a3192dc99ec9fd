"""Association tests

Each test examines the null hypothesis that the tested coefficient
block of a design is zero.  Wald, score and likelihood ratio
statistics are referred to the central chi-squared distribution with
q degrees of freedom; the F statistic (linear family only) is referred
to the F distribution with (q, n−p) degrees of freedom.

In the linear family, with divisor-n dispersion estimates, the four
statistics are tied together by

    Wald  = nqF / (n − p)
    Score = nqF / (qF + n − p)
    LRT   = n log(1 + qF / (n − p))

so that Wald ≥ LRT ≥ Score.

>>> from xwas.genetics import ModelId, ModelSpec, build_design
>>> X = build_design([0, 1, 2, 0, 1, 2, 1, 0], [0] * 8,
...                  ModelSpec(ModelId.ADDITIVE))
>>> y = [0.1, 0.3, 0.4, -0.2, 0.2, 0.9, 0.0, 0.1]
>>> wald = run_test(X, y, TestKind.WALD, Family.LINEAR)
>>> f = run_test(X, y, TestKind.F, Family.LINEAR)
>>> abs(wald.statistic - 8 * f.statistic / 6) < 1e-10
True
"""

from dataclasses import dataclass
from enum import Enum
import numpy as np
from scipy import linalg, stats
from .glm import (Family, FitResult, SingularDesignError, DegenerateFitError,
                  ConvergenceError, fit, information)
from ..genetics.design import DesignMatrix

__all__ = [
    'FamilyError',
    'NestingError',
    'TestKind',
    'TestResult',
    'f_test',
    'wald_test',
    'score_test',
    'lrt_test',
    'run_test',
]

NESTING_TOLERANCE = 1e-8
"""Largest negative likelihood ratio statistic treated as zero"""


class FamilyError(ValueError):
    """Test is not available for the response family"""

    def __str__(self):
        return "F-test requires linear family"


class NestingError(ValueError):
    """Models are not nested"""

    def __str__(self):
        return "nesting violated"


class TestKind(Enum):
    """Association test"""

    WALD = 'wald'
    SCORE = 'score'
    LRT = 'lrt'
    F = 'f'


@dataclass
class TestResult:
    """Association test result"""

    kind: TestKind
    """Test"""

    statistic: float
    """Test statistic"""

    df: int
    """Degrees of freedom (size of the tested block)"""

    p_value: float
    """Asymptotic p-value"""

    df2: int = None
    """Denominator degrees of freedom (F test only)"""


def chisq_result(kind, statistic, df):
    """Construct a chi-squared test result"""
    statistic = max(float(statistic), 0.0)
    return TestResult(kind, statistic, df, float(stats.chi2.sf(statistic, df)))


def require_converged(*fits):
    """Check that fits converged"""
    if not all(x.converged for x in fits):
        raise ConvergenceError()


def inverse(matrix):
    """Invert a symmetric positive definite matrix"""
    try:
        return linalg.inv(matrix)
    except linalg.LinAlgError as exc:
        raise SingularDesignError() from exc


def f_test(X: DesignMatrix, y, fit_full: FitResult,
           fit_null: FitResult) -> TestResult:
    """F test (linear family only)

    The numerator sum of squares is computed from the unconstrained
    fit as Q = β̂₂ᵀ[(XᵀX)⁻¹₂₂]⁻¹β̂₂, which equals the difference of the
    null and full residual sums of squares.
    """
    if fit_full.family is not Family.LINEAR or (
            fit_null.family is not Family.LINEAR):
        raise FamilyError()
    y = np.asarray(y, dtype=float)
    n, p, q = X.n, X.p, X.q
    b2 = fit_full.beta[list(X.tested)]
    C22 = inverse(X.values.T @ X.values)[np.ix_(X.tested, X.tested)]
    Q = max(float(b2 @ linalg.solve(C22, b2, assume_a='pos')), 0.0)
    rss = float(np.sum((y - fit_full.mu) ** 2))
    if rss <= 0:
        raise DegenerateFitError()
    statistic = (Q / q) / (rss / (n - p))
    return TestResult(TestKind.F, statistic, q,
                      float(stats.f.sf(statistic, q, n - p)), df2=n - p)


def wald_test(X: DesignMatrix, fit_full: FitResult,
              family: Family = None) -> TestResult:
    """Wald test from the unconstrained fit

    The statistic is β̂₂ᵀ[(XᵀŴX)⁻¹₂₂]⁻¹β̂₂ / φ̂, with Ŵ the unscaled IRLS
    weights at the fitted means and φ̂ the divisor-n Pearson dispersion.
    """
    family = family or fit_full.family
    if fit_full.constrained:
        raise ValueError("Wald test requires an unconstrained fit")
    require_converged(fit_full)
    if fit_full.phi <= 0:
        raise DegenerateFitError()
    b2 = fit_full.beta[list(X.tested)]
    covariance = inverse(information(X.values, fit_full.mu, family))
    C22 = covariance[np.ix_(X.tested, X.tested)]
    statistic = b2 @ linalg.solve(C22, b2, assume_a='pos') / fit_full.phi
    return chisq_result(TestKind.WALD, statistic, X.q)


def score_test(X: DesignMatrix, y, fit_null: FitResult,
               family: Family = None) -> TestResult:
    """Score test from the null-constrained fit

    With tilded quantities evaluated at the constrained fit, the
    statistic is uᵀ(RᵀW̃R)⁻¹u / φ̃, where u = X₂ᵀW̃Δ̃(y − μ̃) is the
    unscaled score for the tested block, Δ̃ = g'(μ̃), and
    R = X₂ − X₁(X₁ᵀW̃X₁)⁻¹X₁ᵀW̃X₂ is the tested block adjusted for the
    untested covariates.
    """
    family = family or fit_null.family
    if not fit_null.constrained:
        raise ValueError("score test requires a constrained fit")
    require_converged(fit_null)
    if fit_null.phi <= 0:
        raise DegenerateFitError()
    y = np.asarray(y, dtype=float)
    mu = fit_null.mu
    weights = family.weights(mu)
    X1, X2 = X.untested_values, X.tested_values

    # Score for the tested block
    u = X2.T @ (weights * family.link_derivative(mu) * (y - mu))

    # Tested block adjusted for the untested covariates
    A11 = information(X1, mu, family)
    A12 = X1.T @ (X2 * weights[:, None])
    try:
        R = X2 - X1 @ linalg.solve(A11, A12, assume_a='pos')
    except linalg.LinAlgError as exc:
        raise SingularDesignError() from exc
    V = information(R, mu, family)

    statistic = u @ linalg.solve(V, u, assume_a='pos') / fit_null.phi
    return chisq_result(TestKind.SCORE, statistic, X.q)


def lrt_test(fit_full: FitResult, fit_null: FitResult,
             family: Family = None) -> TestResult:
    """Likelihood ratio test

    The linear family with unknown variance uses the profile form
    n log(RSS₀/RSS₁).
    """
    family = family or fit_full.family
    q = len(fit_null.tested)
    if not q or fit_full.constrained:
        raise ValueError("likelihood ratio test requires a tested block")
    if fit_full.n != fit_null.n:
        raise ValueError("fits use different observations")
    require_converged(fit_full, fit_null)
    if family is Family.LINEAR:
        if fit_full.rss <= 0:
            raise DegenerateFitError()
        statistic = fit_full.n * np.log(fit_null.rss / fit_full.rss)
    else:
        statistic = 2 * (fit_full.loglik - fit_null.loglik)
    if statistic < -NESTING_TOLERANCE:
        raise NestingError()
    return chisq_result(TestKind.LRT, statistic, q)


def run_test(X: DesignMatrix, y, kind: TestKind,
             family: Family) -> TestResult:
    """Fit the required models and run a single test"""
    if kind is TestKind.F and family is not Family.LINEAR:
        raise FamilyError()
    y = np.asarray(y, dtype=float)
    if kind is TestKind.SCORE:
        return score_test(X, y, fit(X, y, family, constrain_tested=True))
    full = fit(X, y, family)
    if kind is TestKind.WALD:
        return wald_test(X, full)
    null = fit(X, y, family, constrain_tested=True)
    if kind is TestKind.LRT:
        return lrt_test(full, null)
    return f_test(X, y, full, null)
