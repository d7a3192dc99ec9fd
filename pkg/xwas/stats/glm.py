"""Generalised linear model fitting

Models are fitted by iteratively reweighted least squares (IRLS),
always starting from the zero coefficient vector.  A null-constrained
fit drops the tested columns and re-embeds their coefficients as
exact zeros.

>>> from xwas.genetics import ModelId, ModelSpec, build_design
>>> X = build_design([0, 1, 2, 0, 1, 2], [0] * 6, ModelSpec(ModelId.ADDITIVE))
>>> y = 1 + 0.5 * X.values[:, 1]
>>> result = fit(X, y, Family.LINEAR)
>>> result.beta.round(12).tolist()
[1.0, 0.5]
>>> result.converged, result.iterations
(True, 1)
>>> fit(X, y, Family.LINEAR, constrain_tested=True).beta.round(12).tolist()
[1.5, 0.0]
"""

from dataclasses import dataclass
import logging
from typing import Tuple
import numpy as np
from scipy import linalg
from ..family import Family
from ..genetics.design import DesignMatrix

__all__ = [
    'Family',
    'SingularDesignError',
    'SeparationError',
    'DegenerateFitError',
    'ConvergenceError',
    'FitResult',
    'fit',
    'estimate_dispersion',
    'information',
]

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100
"""Maximum number of IRLS iterations"""

TOLERANCE = 1e-10
"""Convergence threshold on the change in linear predictor"""

SEPARATION_LIMIT = 30
"""Largest permitted absolute logistic linear predictor"""


class SingularDesignError(ArithmeticError):
    """Design (or information matrix) is rank deficient"""

    def __str__(self):
        return "singular design"


class SeparationError(ArithmeticError):
    """Logistic fit diverges"""

    def __str__(self):
        return "separation detected"


class DegenerateFitError(ArithmeticError):
    """Fitted values make the variance function vanish"""

    def __str__(self):
        return "degenerate fitted value"


class ConvergenceError(ArithmeticError):
    """Test requested on a fit that did not converge"""

    def __str__(self):
        return "fit did not converge"


@dataclass
class FitResult:
    """Result of fitting a generalised linear model"""

    family: Family
    """Response family"""

    beta: np.ndarray
    """Coefficients (zero at tested columns when constrained)"""

    eta: np.ndarray
    """Fitted linear predictor"""

    mu: np.ndarray
    """Fitted means"""

    phi: float
    """Dispersion estimate"""

    loglik: float
    """Log-likelihood"""

    rss: float
    """Residual sum of squares"""

    iterations: int
    """Number of IRLS iterations"""

    converged: bool
    """IRLS converged"""

    constrained: bool = False
    """Tested coefficients were fixed at zero"""

    tested: Tuple[int, ...] = ()
    """Tested columns (empty if unconstrained)"""

    @property
    def n(self):
        """Number of observations"""
        return len(self.mu)


def estimate_dispersion(y, mu, family: Family):
    """Pearson dispersion estimate with divisor n

    >>> estimate_dispersion([1, -1, 1, -1], [0, 0, 0, 0], Family.LINEAR)
    1.0
    """
    if family.fixed_dispersion:
        return 1.0
    y = np.asarray(y, dtype=float)
    mu = np.asarray(mu, dtype=float)
    if y.shape != mu.shape:
        raise ValueError("length mismatch")
    variance = family.variance(mu)
    if np.any(variance == 0):
        raise DegenerateFitError()
    return float(np.mean((y - mu) ** 2 / variance))


def check_response(y, family):
    """Check response values against the family"""
    y = np.asarray(y, dtype=float)
    if not np.all(np.isfinite(y)):
        raise ValueError("non-finite response")
    if family is Family.LOGISTIC and not np.all((y == 0) | (y == 1)):
        raise ValueError("logistic response must be 0 or 1")
    return y


def irls(X, y, family):
    """Run IRLS from zero on a design matrix array"""
    eta = np.zeros(len(y))
    beta = np.zeros(X.shape[1])
    mu = family.inverse_link(eta)
    for iteration in range(1, MAX_ITERATIONS + 1):

        # Weighted least squares step on the working response
        weights = family.weights(mu)
        z = eta + (y - mu) * family.link_derivative(mu)
        root = np.sqrt(weights)
        beta = linalg.lstsq(X * root[:, None], z * root)[0]
        previous, eta = eta, X @ beta
        if family is Family.LOGISTIC and np.abs(eta).max() > SEPARATION_LIMIT:
            raise SeparationError()
        mu = family.inverse_link(eta)

        # Constant weights make a single step exact
        if family is Family.LINEAR:
            return beta, eta, mu, iteration, True
        if np.abs(eta - previous).max() < TOLERANCE:
            return beta, eta, mu, iteration, True

    logger.warning("IRLS did not converge after %d iterations",
                   MAX_ITERATIONS)
    return beta, eta, mu, MAX_ITERATIONS, False


def fit(X: DesignMatrix, y, family: Family, constrain_tested=False):
    """Fit a generalised linear model

    The response ``y`` must be aligned with the rows of the design
    (see `DesignMatrix.select`).
    """
    y = check_response(y, family)
    if len(y) != X.n:
        raise ValueError("length mismatch")
    if X.n <= X.p:
        raise ValueError("too few observations: n=%d, p=%d" % (X.n, X.p))
    columns = list(X.untested if constrain_tested else range(X.p))
    values = X.values[:, columns]
    if np.linalg.matrix_rank(values) < len(columns):
        raise SingularDesignError()

    # Fit and re-embed coefficients
    partial, eta, mu, iterations, converged = irls(values, y, family)
    beta = np.zeros(X.p)
    beta[columns] = partial

    phi = estimate_dispersion(y, mu, family)
    return FitResult(
        family=family,
        beta=beta,
        eta=eta,
        mu=mu,
        phi=phi,
        loglik=family.loglik(y, eta, mu, phi),
        rss=float(np.sum((y - mu) ** 2)),
        iterations=iterations,
        converged=converged,
        constrained=constrain_tested,
        tested=tuple(X.tested) if constrain_tested else (),
    )


def information(values, mu, family: Family):
    """Unscaled information matrix XᵀWX at the given fitted means"""
    weights = family.weights(mu)
    return values.T @ (values * weights[:, None])
