#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np

from src.core.Errors import InsufficientSamplesError
from src.core.Rollout import Rollout
from src.dp.DpCertificate import DpCertificate
from src.dp.StateMetric import StateMetric

"""
    Monte Carlo estimation of the DP failure probability
        gamma_t = 1 - E[1{U_t in U_t(l_t)} exp(-2 beta l_t rho(X_t, X_hat_t))],   gamma = sum_t gamma_t
    over offline rollouts: the estimator is sampled at every step to measure rho but the input is computed from the
    true state.
    input_level(t, u) is the Lipschitz level of x -> H_t(x, u); u belongs to U_t(l_t) when input_level(t, u) < l_t.
"""
class GammaEstimator:
    logger = logging.getLogger('GammaEstimator')

    MIN_SAMPLES = 30
    Z_95 = 1.959963984540054
    # Relative margin added to the level quantile so the quantile input itself is inside U_t(l_t)
    LEVEL_MARGIN = 1e-6
    RADIUS_QUANTILE = 0.999

    @staticmethod
    def offline_trajectories(system, policy, estimator, n_samples, seed, threads=1):
        return Rollout.run_many(system, policy, estimator, n_samples, seed, threads=threads,
                                feedback=Rollout.FEEDBACK_STATE)

    """
        Per-step levels l_t = (1 + 1e-6) * quantile_q(input_level(t, U_t)) over the inputs of the trajectories
    """
    @staticmethod
    def certified_levels(trajectories, input_level, quantile=0.99):
        horizon = trajectories[0].horizon
        levels = np.empty(horizon)
        for t in range(horizon):
            values = np.array([float(input_level(t, trajectory.inputs[t])) for trajectory in trajectories])
            levels[t] = (1.0 + GammaEstimator.LEVEL_MARGIN) * float(np.quantile(values, quantile))
        return levels

    """
        Returns a DpCertificate holding gamma, its 95% half-width, the conditioning-set frequency and the region
        radius (99.9th percentile of the observed rho(x_t, x_hat_t)).
    """
    @staticmethod
    def estimate_gamma(system, policy, estimator, beta, levels, n_samples, seed, input_level, threads=1,
                       metric=None, trajectories=None):
        if n_samples < GammaEstimator.MIN_SAMPLES:
            raise InsufficientSamplesError('At least ' + str(GammaEstimator.MIN_SAMPLES) + ' samples are needed to '
                                           + 'estimate gamma with a confidence interval, got ' + str(n_samples) + '.')
        levels = np.atleast_1d(np.asarray(levels, dtype=float))
        if np.any(levels <= 0):
            raise ValueError('Lipschitz levels must be positive.')
        metric = metric or StateMetric.quadratic()
        if trajectories is None:
            trajectories = GammaEstimator.offline_trajectories(system, policy, estimator, n_samples, seed,
                                                               threads=threads)
        trajectories = trajectories[:n_samples]
        horizon = levels.size

        states = np.array([trajectory.states[:horizon] for trajectory in trajectories])
        estimates = np.array([trajectory.estimates[:horizon] for trajectory in trajectories])
        rho = np.asarray(metric(states, estimates), dtype=float)
        inside = np.array([[float(input_level(t, trajectory.inputs[t])) < levels[t] for t in range(horizon)]
                           for trajectory in trajectories])
        terms = np.where(inside, np.exp(-2.0 * beta * levels[None, :] * rho), 0.0)

        per_rollout = np.sum(1.0 - terms, axis=1)
        gamma = float(np.mean(per_rollout))
        half_width = GammaEstimator.Z_95 * float(np.std(per_rollout, ddof=1)) / math.sqrt(len(trajectories))
        GammaEstimator.logger.debug('beta=' + str(beta) + ' gamma=' + str(gamma) + ' +- ' + str(half_width))

        return DpCertificate(beta, levels, gamma=gamma, gamma_ci95=half_width, metric=metric,
                             region_radius=float(np.quantile(rho, GammaEstimator.RADIUS_QUANTILE)),
                             conditioning_frequency=float(np.mean(inside)), n_samples=len(trajectories))
