#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np
from scipy import linalg

from src.core.Errors import DivergingMechanismError
from src.gibbs.FreeEnergyReport import FreeEnergyReport
from src.gibbs.Gaussian import Gaussian
from src.gibbs.GibbsPolicy import GibbsPolicy

"""
    Gaussian prior N(u_bar, S) and a Hamiltonian quadratic in the input:
        H(x, u) = 1/2 u^T M u + u^T g(x) + h(x)
    The Gibbs policy is Gaussian with precision Lambda = beta M + S^-1 and mean Lambda^-1 (S^-1 u_bar - beta g(x)),
    and log Z has a closed form. linear(x) returns g(x), offset(x) returns h(x).
"""
class QuadraticGibbsPolicy(GibbsPolicy):
    def __init__(self, prior, quadratic, linear, offset, beta):
        self.quadratic = np.atleast_2d(np.asarray(quadratic, dtype=float))
        self.linear = linear
        self.offset = offset
        super().__init__(prior=prior, hamiltonian=self.evaluate, beta=beta)
        if self.mode == GibbsPolicy.ARGMIN_MODE:
            raise ValueError('The argmin mode of a quadratic Hamiltonian is a point mass, use beta < inf.')

        self.prior_precision = prior.precision()
        precision = self.beta * self.quadratic + self.prior_precision
        precision = 0.5 * (precision + precision.T)
        try:
            self.precision_chol = linalg.cho_factor(precision, lower=True)
        except linalg.LinAlgError:
            raise DivergingMechanismError('beta M + S^-1 is not positive-definite: the partition function diverges.')
        self.precision = precision
        self.covariance = linalg.cho_solve(self.precision_chol, np.eye(precision.shape[0]))

    def evaluate(self, x, u):
        u = np.asarray(u, dtype=float)
        return float(0.5 * u @ self.quadratic @ u + u @ np.asarray(self.linear(x), dtype=float) + self.offset(x))

    def _natural_mean(self, x):
        return self.prior_precision @ self.prior.mean - self.beta * np.asarray(self.linear(x), dtype=float)

    """
        The Gibbs policy at state x, as a Gaussian
    """
    def distribution(self, x):
        mean = linalg.cho_solve(self.precision_chol, self._natural_mean(x))
        return Gaussian(mean, self.covariance)

    def log_partition_function(self, x):
        natural = self._natural_mean(x)
        log_det_ratio = self.prior.log_det() + 2.0 * float(np.sum(np.log(np.diag(self.precision_chol[0]))))
        quadratic_term = natural @ linalg.cho_solve(self.precision_chol, natural) \
            - self.prior.mean @ self.prior_precision @ self.prior.mean
        log_Z = -self.beta * float(self.offset(x)) - 0.5 * log_det_ratio + 0.5 * float(quadratic_term)
        return self._check_log_partition(log_Z)

    def log_density(self, x, u):
        return float(self.distribution(x).logpdf(u))

    """
        Expected Hamiltonian under a Gaussian distribution of the input
    """
    def expected_hamiltonian(self, x, gaussian):
        mean = gaussian.mean
        return float(0.5 * (np.trace(self.quadratic @ gaussian.cov) + mean @ self.quadratic @ mean)
                     + mean @ np.asarray(self.linear(x), dtype=float) + self.offset(x))

    def free_energy(self, x):
        log_Z = self.log_partition_function(x)
        policy = self.distribution(x)
        expected_H = self.expected_hamiltonian(x, policy)
        kl = policy.kl(self.prior)
        if self.mode == GibbsPolicy.PRIOR_MODE:
            F = expected_H
        else:
            F = -log_Z / self.beta
        return FreeEnergyReport(state=x, log_Z=log_Z, F=F, expected_H=expected_H, kl=kl, beta=self.beta)

    def kl_to_prior(self, x):
        return self.distribution(x).kl(self.prior)

    def variational_check(self, x, alternative):
        rhs = self.expected_hamiltonian(x, alternative) + self.kl_price(alternative.kl(self.prior))
        return self.free_energy(x).F, rhs

    def sample(self, t, x, rng):
        return self.distribution(x).sample(rng)
