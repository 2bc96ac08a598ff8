#!/usr/lib/brdp/environment/bin/python
import json

import numpy as np

from src.dp.StateMetric import StateMetric

"""
    Metric (rho_beta, gamma)-DP certificate of a multi-step mechanism:
        rho_beta(x_{0:t_f}, x_hat_{0:t_f}) = sum_t 2 beta l_t rho(x_t, x_hat_t)
    levels[t] is the Lipschitz level l_t of step t (0 for steps the certificate does not cover), gamma the failure
    probability (clipped to [0, 1], 1 means vacuous) with its 95% Monte Carlo half-width.
"""
class DpCertificate:
    def __init__(self, beta, levels, gamma=0.0, gamma_ci95=0.0, metric=None, region_radius=None,
                 conditioning_frequency=None, n_samples=0):
        self.beta = float(beta)
        self.levels = np.atleast_1d(np.asarray(levels, dtype=float))
        if np.any(self.levels < 0):
            raise ValueError('Lipschitz levels must be non-negative.')
        self.gamma = float(np.clip(gamma, 0.0, 1.0))
        self.gamma_ci95 = float(gamma_ci95)
        self.metric = metric or StateMetric.quadratic()
        self.region_radius = region_radius
        self.conditioning_frequency = conditioning_frequency
        self.n_samples = int(n_samples)

    @property
    def steps(self):
        return self.levels.size

    def is_vacuous(self):
        return self.gamma >= 1.0

    """
        rho_beta of a state sequence and an estimate sequence. Only the first `steps` rows are used (the terminal
        state has no estimate); batched on a leading axis.
    """
    def budget(self, states, estimates):
        states = np.asarray(states, dtype=float)
        estimates = np.asarray(estimates, dtype=float)
        steps = self.steps
        rho = np.asarray(self.metric(states[..., :steps, :], estimates[..., :steps, :]), dtype=float)
        return 2.0 * self.beta * np.sum(self.levels[:rho.shape[-1]] * rho, axis=-1)

    """
        Certificate of the composition: the budgets add up pointwise, the gammas add up and are clipped to 1
    """
    @staticmethod
    def compose_budgets(certificates):
        certificates = list(certificates)
        if not certificates:
            raise ValueError('Nothing to compose.')
        beta = certificates[0].beta
        metric = certificates[0].metric
        if any(c.beta != beta for c in certificates) or any(c.metric.name != metric.name for c in certificates):
            raise ValueError('Certificates can only be composed with the same beta and the same state metric.')

        steps = max(c.steps for c in certificates)
        levels = np.zeros(steps)
        for certificate in certificates:
            levels[:certificate.steps] += certificate.levels
        gamma = min(1.0, sum(c.gamma for c in certificates))
        gamma_ci95 = float(np.sqrt(sum(c.gamma_ci95 ** 2 for c in certificates)))
        return DpCertificate(beta, levels, gamma=gamma, gamma_ci95=gamma_ci95, metric=metric,
                             n_samples=min(c.n_samples for c in certificates))

    """
        Single-step certificate for step t of a multi-step mechanism (zero level elsewhere)
    """
    @staticmethod
    def single_step(beta, t, level, gamma=0.0, gamma_ci95=0.0, metric=None):
        levels = np.zeros(t + 1)
        levels[t] = level
        return DpCertificate(beta, levels, gamma=gamma, gamma_ci95=gamma_ci95, metric=metric)

    def to_dict(self):
        return {
            'beta': self.beta,
            'levels': self.levels.tolist(),
            'gamma': self.gamma,
            'gamma_ci95': self.gamma_ci95,
            'metric': self.metric.name,
            'region_radius': self.region_radius,
            'conditioning_frequency': self.conditioning_frequency,
            'n_samples': self.n_samples,
            'vacuous': self.is_vacuous(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())
