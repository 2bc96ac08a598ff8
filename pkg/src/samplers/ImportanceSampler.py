#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np
from scipy.special import logsumexp

from src.core.Errors import InfeasibleProposalError

"""
    Diagnostics of one importance-sampling solve. log_z is the log of the mean unnormalized weight, an estimate of
    log Z = log E_prior[exp(-beta H)].
"""
class ImportanceDiagnostics:
    def __init__(self, ess, log_z, n_samples, n_feasible, weights, index):
        self.ess = ess
        self.log_z = log_z
        self.n_samples = n_samples
        self.n_feasible = n_feasible
        self.weights = weights
        self.index = index

    def to_dict(self):
        return {'ess': self.ess, 'log_z': self.log_z, 'n_samples': self.n_samples, 'n_feasible': self.n_feasible}


"""
    Self-normalized importance sampling of the Gibbs measure over input sequences,
        w_i ~ prior(u_i) / proposal(u_i) * exp(-beta H(u_i)),
    followed by the resampling of one sequence. With no proposal the samples come from the prior and the ratio is 1.
    beta = 0 returns a plain draw (uniform weights), beta = inf the cheapest sample.
"""
class ImportanceSampler:
    logger = logging.getLogger('ImportanceSampler')

    DEFAULT_SAMPLES = 2048

    def __init__(self, beta, n_samples=DEFAULT_SAMPLES, proposal=None):
        if n_samples < 2:
            raise ValueError('n_samples must be >= 2, got ' + str(n_samples) + '.')
        if beta < 0:
            raise ValueError('beta must be >= 0, got ' + str(beta) + '.')
        self.beta = float(beta)
        self.n_samples = int(n_samples)
        self.proposal = proposal

    def __call__(self, ham, prior, rng):
        return self.sample_control(ham, prior, rng)[0]

    """
        Return (input sequence, ImportanceDiagnostics). The proposal, when given, is a function of the planning
        problem: proposal(ham) returns an object with sample(rng, size) and logpdf(sequences).
    """
    def sample_control(self, ham, prior, rng):
        proposal = self.proposal(ham) if self.proposal is not None else None
        source = proposal if proposal is not None else prior
        sequences = source.sample(rng, self.n_samples)
        costs = ham.evaluate_batch(sequences)
        log_ratio = prior.logpdf(sequences) - proposal.logpdf(sequences) if proposal is not None else 0.0

        if self.beta == 0.0:
            log_w = np.zeros(self.n_samples) + log_ratio
        elif math.isinf(self.beta):
            log_w = np.where(costs == np.min(costs), 0.0, -np.inf) if np.isfinite(np.min(costs)) \
                else np.full(self.n_samples, -np.inf)
        else:
            with np.errstate(invalid='ignore'):
                log_w = log_ratio - self.beta * costs
            log_w = np.where(np.isfinite(costs), log_w, -np.inf)

        feasible = int(np.sum(np.isfinite(log_w)))
        if feasible == 0:
            raise InfeasibleProposalError('Every one of the ' + str(self.n_samples) + ' sampled input sequences has '
                                          + 'zero weight, increase the number of samples or widen the prior.')

        log_norm = float(logsumexp(log_w))
        weights = np.exp(log_w - log_norm)
        ess = float(1.0 / np.sum(weights ** 2))
        index = int(rng.choice(self.n_samples, p=weights))
        diagnostics = ImportanceDiagnostics(ess=ess, log_z=log_norm - math.log(self.n_samples),
                                            n_samples=self.n_samples, n_feasible=feasible, weights=weights,
                                            index=index)
        ImportanceSampler.logger.debug('t=' + str(ham.t) + ' ess=' + str(ess) + ' feasible=' + str(feasible))
        return sequences[index], diagnostics
