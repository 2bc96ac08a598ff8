#!/usr/lib/brdp/environment/bin/python
import math

import numpy as np
from scipy.special import logsumexp

from src.gibbs.FreeEnergyReport import FreeEnergyReport
from src.gibbs.GibbsPolicy import GibbsPolicy

"""
    Exponential mechanism over a finite input set, evaluated by exact enumeration in the log domain.
    prior is a vector of probabilities (one per action), hamiltonian(x, action) a real number (math.inf allowed).
"""
class FiniteGibbsPolicy(GibbsPolicy):
    def __init__(self, actions, prior, hamiltonian, beta):
        prior = np.asarray(prior, dtype=float)
        if prior.ndim != 1 or prior.size != len(actions):
            raise ValueError('The prior needs one probability per action.')
        if np.any(prior < 0) or abs(prior.sum() - 1.0) > 1e-12:
            raise ValueError('The prior must be a probability vector.')
        super().__init__(prior=prior, hamiltonian=hamiltonian, beta=beta)
        self.actions = list(actions)
        with np.errstate(divide='ignore'):
            self.log_prior = np.log(prior)

    @staticmethod
    def uniform(actions, hamiltonian, beta):
        return FiniteGibbsPolicy(actions, np.full(len(actions), 1.0 / len(actions)), hamiltonian, beta)

    def hamiltonian_values(self, x):
        return np.array([float(self.hamiltonian(x, action)) for action in self.actions])

    """
        Unnormalized log-weights log prior{u} - beta H(x, u)
    """
    def log_weights(self, x):
        H = self.hamiltonian_values(x)
        if self.mode == GibbsPolicy.PRIOR_MODE:
            return self.log_prior.copy()
        if self.mode == GibbsPolicy.ARGMIN_MODE:
            support = np.isfinite(self.log_prior)
            best = np.min(H[support])
            return np.where(support & (H == best), self.log_prior, -np.inf)
        with np.errstate(invalid='ignore'):
            log_w = self.log_prior - self.beta * H
        return np.where(np.isnan(log_w), -np.inf, log_w)

    def log_partition_function(self, x):
        return self._check_log_partition(float(logsumexp(self.log_weights(x))))

    """
        Probability of every action, sums to 1
    """
    def probabilities(self, x):
        log_w = self.log_weights(x)
        return np.exp(log_w - self._check_log_partition(float(logsumexp(log_w))))

    def index_of(self, u):
        for index, action in enumerate(self.actions):
            if np.array_equal(np.asarray(action), np.asarray(u)):
                return index
        raise ValueError('Input ' + repr(u) + ' is not in the action set.')

    def log_density(self, x, u):
        log_w = self.log_weights(x)
        return float(log_w[self.index_of(u)] - self._check_log_partition(float(logsumexp(log_w))))

    def free_energy(self, x):
        H = self.hamiltonian_values(x)
        log_w = self.log_weights(x)
        log_Z = self._check_log_partition(float(logsumexp(log_w)))
        probabilities = np.exp(log_w - log_Z)
        support = probabilities > 0
        expected_H = float(np.sum(probabilities[support] * H[support]))
        kl = float(np.sum(probabilities[support] * (log_w[support] - log_Z - self.log_prior[support])))
        kl = max(kl, 0.0)

        if self.mode == GibbsPolicy.PRIOR_MODE:
            F = expected_H
        elif self.mode == GibbsPolicy.ARGMIN_MODE:
            F = float(np.min(H[np.isfinite(self.log_prior)]))
        else:
            F = -log_Z / self.beta
        return FreeEnergyReport(state=x, log_Z=log_Z, F=F, expected_H=expected_H, kl=kl, beta=self.beta)

    def variational_check(self, x, alternative):
        alternative = np.asarray(alternative, dtype=float)
        H = self.hamiltonian_values(x)
        support = alternative > 0
        if np.any(~np.isfinite(self.log_prior[support])):
            return self.free_energy(x).F, math.inf
        expected_H = float(np.sum(alternative[support] * H[support]))
        kl = float(np.sum(alternative[support] * (np.log(alternative[support]) - self.log_prior[support])))
        return self.free_energy(x).F, expected_H + self.kl_price(kl)

    def sample(self, t, x, rng):
        return self.actions[int(rng.choice(len(self.actions), p=self.probabilities(x)))]
