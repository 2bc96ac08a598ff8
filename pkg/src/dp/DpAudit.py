#!/usr/lib/brdp/environment/bin/python
import logging

import numpy as np

from src.core.Errors import UnsupportedPolicyError
from src.gibbs.FiniteGibbsPolicy import FiniteGibbsPolicy
from src.gibbs.QuadraticGibbsPolicy import QuadraticGibbsPolicy
from src.lqg.BrLqgPolicy import BrLqgPolicy

"""
    Result of an empirical audit of log U(x){u} - log U(x_hat){u} <= 2 beta l_t rho(x, x_hat).
    Fractions are over every audited triple (pair, input); slack is budget - log-ratio, negative for a violation.
"""
class AuditReport:
    def __init__(self, n_triples, n_violations, in_set_fraction, worst_slack, worst_triple):
        self.n_triples = n_triples
        self.n_violations = n_violations
        self.in_set_fraction = in_set_fraction
        self.worst_slack = worst_slack
        self.worst_triple = worst_triple

    @property
    def violation_fraction(self):
        return self.n_violations / self.n_triples if self.n_triples else 0.0

    def to_dict(self):
        return {
            'n_triples': self.n_triples,
            'violation_fraction': self.violation_fraction,
            'in_set_fraction': self.in_set_fraction,
            'worst_slack': self.worst_slack,
        }


class DpAudit:
    logger = logging.getLogger('DpAudit')

    # Log-ratios below the budget by less than this are floating-point noise, not violations
    TOLERANCE = 1e-9

    """
        Per-step log-density function (t, x, u) -> log U_t(x){u}, only for the policies with an exact density
    """
    @staticmethod
    def log_density_of(policy):
        if isinstance(policy, BrLqgPolicy):
            return policy.log_density
        if isinstance(policy, (FiniteGibbsPolicy, QuadraticGibbsPolicy)) and policy.beta < float('inf'):
            return lambda t, x, u: policy.log_density(x, u)
        raise UnsupportedPolicyError('The density of ' + type(policy).__name__ + ' cannot be evaluated exactly, '
                                     + 'it cannot be audited.')

    """
        pairs: sequence of (t, x, x_hat). For every pair, n_inputs inputs are drawn from the mechanism at the true
        state x and the DP inequality of the certificate is checked for those inside U_t(l_t).
        input_level(t, u) gives the Lipschitz level of an input; None means every input is inside the action set.
    """
    @staticmethod
    def empirical_dp_audit(policy, pairs, certificate, n_inputs, rng, input_level=None):
        log_density = DpAudit.log_density_of(policy)
        n_triples = 0
        n_violations = 0
        n_inside = 0
        worst_slack = float('inf')
        worst_triple = None
        for t, x, x_hat in pairs:
            x = np.asarray(x, dtype=float)
            x_hat = np.asarray(x_hat, dtype=float)
            budget = 2.0 * certificate.beta * certificate.levels[t] * float(certificate.metric(x, x_hat))
            for _ in range(n_inputs):
                u = policy.sample(t, x, rng)
                n_triples += 1
                if input_level is not None and not float(input_level(t, u)) < certificate.levels[t]:
                    continue
                n_inside += 1
                slack = budget - (log_density(t, x, u) - log_density(t, x_hat, u))
                if slack < -DpAudit.TOLERANCE:
                    n_violations += 1
                if slack < worst_slack:
                    worst_slack = slack
                    worst_triple = (t, x, x_hat, np.asarray(u))

        report = AuditReport(n_triples, n_violations, n_inside / n_triples if n_triples else 0.0, worst_slack,
                             worst_triple)
        DpAudit.logger.debug('Audit: ' + str(report.to_dict()))
        return report

    """
        Audit of the composed multi-step mechanism: for every (states, estimates) pair of sequences, the inputs of all
        steps are drawn at the true states and the summed log-ratio is checked against certificate.budget. A triple is
        inside the action sets when every step is.
    """
    @staticmethod
    def composed_audit(policy, sequence_pairs, certificate, n_inputs, rng, input_level=None):
        log_density = DpAudit.log_density_of(policy)
        n_triples = 0
        n_violations = 0
        n_inside = 0
        worst_slack = float('inf')
        worst_triple = None
        for states, estimates in sequence_pairs:
            budget = float(certificate.budget(states, estimates))
            for _ in range(n_inputs):
                n_triples += 1
                log_ratio = 0.0
                inside = True
                for t in range(certificate.steps):
                    u = policy.sample(t, states[t], rng)
                    if input_level is not None and not float(input_level(t, u)) < certificate.levels[t]:
                        inside = False
                    log_ratio += log_density(t, states[t], u) - log_density(t, estimates[t], u)
                if not inside:
                    continue
                n_inside += 1
                slack = budget - log_ratio
                if slack < -DpAudit.TOLERANCE:
                    n_violations += 1
                if slack < worst_slack:
                    worst_slack = slack
                    worst_triple = (states, estimates)
        return AuditReport(n_triples, n_violations, n_inside / n_triples if n_triples else 0.0, worst_slack,
                           worst_triple)
