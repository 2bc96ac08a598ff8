#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np
from scipy.special import logsumexp

from src.core.Errors import UnreliableEstimateError
from src.gibbs.FreeEnergyReport import FreeEnergyReport
from src.gibbs.GibbsPolicy import GibbsPolicy

"""
    Monte Carlo backend: Z(x) = E_prior[exp(-beta H(x, U))] estimated with prior samples (the prior is the proposal).
    The same seed is used for every evaluation, so the estimates are deterministic functions of x (common random
    numbers across states). prior needs sample(rng, size) and logpdf(batch).
"""
class SampledGibbsPolicy(GibbsPolicy):
    DEFAULT_SAMPLES = 4096
    MIN_EFFECTIVE_SAMPLES = 10

    logger = logging.getLogger('SampledGibbsPolicy')

    def __init__(self, prior, hamiltonian, beta, n_samples=DEFAULT_SAMPLES, seed=0, batched=False):
        super().__init__(prior=prior, hamiltonian=hamiltonian, beta=beta)
        if self.mode != GibbsPolicy.GIBBS_MODE:
            raise ValueError('The Monte Carlo backend needs 0 < beta < inf.')
        self.n_samples = int(n_samples)
        self.seed = seed
        self.batched = batched

    def prior_samples(self):
        return self.prior.sample(np.random.default_rng(self.seed), size=self.n_samples)

    def _hamiltonian_values(self, x, samples):
        if self.batched:
            return np.asarray(self.hamiltonian(x, samples), dtype=float)
        return np.array([float(self.hamiltonian(x, u)) for u in samples])

    """
        Prior samples, their Hamiltonian values, normalized weights and the log Z estimate
    """
    def _weighted_samples(self, x):
        samples = self.prior_samples()
        H = self._hamiltonian_values(x, samples)
        with np.errstate(invalid='ignore'):
            log_w = -self.beta * H
        log_w = np.where(np.isnan(log_w), -np.inf, log_w)
        log_Z = self._check_log_partition(float(logsumexp(log_w) - math.log(self.n_samples)))
        weights = np.exp(log_w - logsumexp(log_w))
        ess = 1.0 / float(np.sum(weights ** 2))
        if ess < SampledGibbsPolicy.MIN_EFFECTIVE_SAMPLES:
            raise UnreliableEstimateError(ess)
        return samples, H, weights, log_w, log_Z, ess

    def log_partition_function(self, x):
        return self._weighted_samples(x)[4]

    """
        Standard error of the Z estimate (in Z units)
    """
    def partition_standard_error(self, x):
        samples, H, weights, log_w, log_Z, ess = self._weighted_samples(x)
        scaled = np.exp(log_w - log_Z)
        return math.exp(log_Z) * float(np.std(scaled, ddof=1)) / math.sqrt(self.n_samples)

    def log_density(self, x, u):
        u = np.asarray(u, dtype=float)
        H = self._hamiltonian_values(x, u[None, :])[0]
        return float(self.prior.logpdf(u)) - self.beta * H - self.log_partition_function(x)

    def free_energy(self, x):
        samples, H, weights, log_w, log_Z, ess = self._weighted_samples(x)
        support = weights > 0
        expected_H = float(np.sum(weights[support] * H[support]))
        # KL(U^beta || prior) = E[log U^beta / prior] = -beta E[H] - log Z
        kl = max(-self.beta * expected_H - log_Z, 0.0)
        scaled = np.exp(log_w - log_Z)
        relative_error = float(np.std(scaled, ddof=1)) / math.sqrt(self.n_samples)
        standard_error = relative_error / self.beta
        return FreeEnergyReport(state=x, log_Z=log_Z, F=-log_Z / self.beta, expected_H=expected_H, kl=kl,
                                beta=self.beta, tolerance=3.0 * standard_error, standard_error=standard_error)

    """
        The alternative must provide sample(rng, size) and logpdf(batch), both sides are Monte Carlo estimates.
    """
    def variational_check(self, x, alternative):
        samples = alternative.sample(np.random.default_rng([self.seed, 1]), size=self.n_samples)
        H = self._hamiltonian_values(x, samples)
        kl = float(np.mean(alternative.logpdf(samples) - self.prior.logpdf(samples)))
        return self.free_energy(x).F, float(np.mean(H)) + self.kl_price(kl)

    """
        Resample one of the prior samples according to the self-normalized weights
    """
    def sample(self, t, x, rng):
        samples, H, weights, log_w, log_Z, ess = self._weighted_samples(x)
        self.logger.debug('Gibbs resampling with effective sample size ' + str(ess))
        return samples[int(rng.choice(self.n_samples, p=weights))]
