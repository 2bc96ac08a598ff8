#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np
from scipy import linalg

from src.core.Errors import NumericalError

"""
    Multivariate Gaussian N(mean, cov) backed by a Cholesky factor. Used for priors, BR-LQG output distributions,
    the estimation channel and closed-form KL divergences.
"""
class Gaussian:
    # Minimum eigenvalue accepted before symmetrization, as for LqgProblem matrices
    EIGENVALUE_TOLERANCE = -1e-10

    def __init__(self, mean, cov):
        self.mean = np.atleast_1d(np.asarray(mean, dtype=float))
        cov = np.atleast_2d(np.asarray(cov, dtype=float))
        if cov.shape != (self.mean.size, self.mean.size):
            raise ValueError('Covariance shape ' + str(cov.shape) + ' does not match mean of size '
                             + str(self.mean.size) + '.')
        self.cov = 0.5 * (cov + cov.T)
        try:
            self.chol = linalg.cholesky(self.cov, lower=True)
        except linalg.LinAlgError:
            raise NumericalError('Covariance matrix is not positive-definite (min eigenvalue '
                                 + str(float(np.min(np.linalg.eigvalsh(self.cov)))) + ').')

    @property
    def dim(self):
        return self.mean.size

    def log_det(self):
        return 2.0 * float(np.sum(np.log(np.diag(self.chol))))

    def precision(self):
        return linalg.cho_solve((self.chol, True), np.eye(self.dim))

    """
        Draw samples with the Cholesky factor. size=None returns a single vector.
    """
    def sample(self, rng, size=None):
        if size is None:
            return self.mean + self.chol @ rng.standard_normal(self.dim)
        z = rng.standard_normal((size, self.dim))
        return self.mean + z @ self.chol.T

    """
        Log-density of one vector or of a batch (leading axis).
    """
    def logpdf(self, u):
        u = np.asarray(u, dtype=float)
        diff = u - self.mean
        solved = linalg.solve_triangular(self.chol, diff.T if diff.ndim > 1 else diff, lower=True)
        mahalanobis = np.sum(solved ** 2, axis=0)
        return -0.5 * (mahalanobis + self.dim * math.log(2.0 * math.pi) + self.log_det())

    """
        Closed-form KL(self || other)
    """
    def kl(self, other):
        other_precision = other.precision()
        diff = other.mean - self.mean
        value = 0.5 * (np.trace(other_precision @ self.cov) + diff @ other_precision @ diff - self.dim
                       + other.log_det() - self.log_det())
        return max(float(value), 0.0)

    def to_dict(self):
        return {'mean': self.mean.tolist(), 'cov': self.cov.tolist()}
