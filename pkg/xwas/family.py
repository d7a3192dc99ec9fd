"""Response distribution families

>>> Family('logistic').variance(np.array([0.5]))
array([0.25])
"""

from enum import Enum
import numpy as np
from scipy.special import expit

__all__ = [
    'Family',
]


class Family(Enum):
    """Generalised linear model family

    The linear family uses the identity link with constant variance
    function and unknown dispersion; the logistic family uses the
    canonical logit link with variance function μ(1−μ) and dispersion
    fixed at one.
    """

    LINEAR = 'linear'
    LOGISTIC = 'logistic'

    @property
    def fixed_dispersion(self):
        """Dispersion parameter is known"""
        return self is Family.LOGISTIC

    def inverse_link(self, eta):
        """Mean from linear predictor"""
        if self is Family.LOGISTIC:
            return expit(eta)
        return np.asarray(eta, dtype=float)

    def link_derivative(self, mu):
        """Derivative of the link function at the mean"""
        if self is Family.LOGISTIC:
            return 1.0 / (mu * (1.0 - mu))
        return np.ones_like(mu, dtype=float)

    def variance(self, mu):
        """Variance function"""
        if self is Family.LOGISTIC:
            return mu * (1.0 - mu)
        return np.ones_like(mu, dtype=float)

    def weights(self, mu):
        """Unnormalised working weights 1 / (V(μ) g'(μ)²)"""
        return 1.0 / (self.variance(mu) * self.link_derivative(mu) ** 2)

    def loglik(self, y, eta, mu, phi):
        """Log-likelihood at the given fit"""
        if self is Family.LOGISTIC:
            return float(np.sum(y * eta - np.logaddexp(0.0, eta)))
        n = len(y)
        if phi <= 0:
            return np.inf
        rss = float(np.sum((y - mu) ** 2))
        return -0.5 * n * np.log(2 * np.pi * phi) - rss / (2 * phi)
