#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np
from scipy.special import logsumexp

from src.core.CostSummary import CostSummary
from src.core.Errors import UnboundedGridError
from src.core.Rollout import Rollout

"""
    Offline / online costs, their measured gap and the robustness bound. For a single decision the KL divergence
    depends on the state and stays inside the expectation:
        Delta J <= 1/beta E[exp(rho_beta(X, X_hat) + D[U(X) || U_bar])]
    over a trajectory D is the KL divergence of the whole input process to the prior process, a constant:
        Delta J <= 1/beta E[exp(rho_beta(X_{0:t_f}, X_hat_{0:t_f}))] exp(D)
    Every Monte Carlo field carries its sample count.
"""
class RobustnessReport:
    def __init__(self, j_off, j_on, delta_j, delta_j_ci95, bound, bound_standard_error, gamma, gamma_ci95, kl_term,
                 n_samples, diagnostic=None, kl_mode=None):
        self.j_off = j_off
        self.j_on = j_on
        self.delta_j = delta_j
        self.delta_j_ci95 = delta_j_ci95
        self.bound = bound
        self.bound_standard_error = bound_standard_error
        self.gamma = gamma
        self.gamma_ci95 = gamma_ci95
        self.kl_term = kl_term
        self.n_samples = n_samples
        self.diagnostic = diagnostic
        self.kl_mode = kl_mode

    """
        One-sided check of the measured gap against the bound, the gap being allowed its confidence half-width
    """
    def holds(self):
        if math.isnan(self.delta_j):
            return True
        return self.delta_j - self.delta_j_ci95 <= self.bound

    def to_dict(self):
        return {
            'j_off': self.j_off.to_dict(),
            'j_on': self.j_on.to_dict(),
            'delta_j': self.delta_j,
            'delta_j_ci95': self.delta_j_ci95,
            'bound': self.bound,
            'bound_standard_error': self.bound_standard_error,
            'gamma': self.gamma,
            'gamma_ci95': self.gamma_ci95,
            'kl_term': self.kl_term,
            'kl_mode': self.kl_mode,
            'n_samples': self.n_samples,
            'holds': self.holds(),
            'diagnostic': self.diagnostic,
        }


class RobustnessBound:
    logger = logging.getLogger('RobustnessBound')

    Z_95 = 1.959963984540054
    # A per-sample log-contribution above log(1e300) makes the bound infinite
    LOG_OVERFLOW = math.log(1e300)

    KL_POINTWISE = 'pointwise'
    KL_EXPECTED = 'expected'

    """
        kl_evaluator(trajectory) returns the KL divergence of the policy to the prior along an offline trajectory
        (the KL at the initial state when t_f = 1, the sum of the stepwise KL otherwise).
        kl_mode picks how it enters the bound: KL_POINTWISE adds each value to the rho_beta of the same rollout
        inside the expectation, KL_EXPECTED multiplies by exp of their mean. The default is KL_POINTWISE for single
        decisions (t_f = 1) and KL_EXPECTED for trajectories.
        The bound expectation uses offline rollouts: the estimator is only sampled to measure rho, never for
        feedback. The gap is measured with paired online / offline runs (same per-trial streams).
    """
    @staticmethod
    def robustness_bound(system, policy, estimator, certificate, kl_evaluator, n_samples, seed, threads=1,
                         trajectories=None, kl_mode=None):
        if kl_mode is None:
            kl_mode = RobustnessBound.KL_POINTWISE if system.horizon == 1 else RobustnessBound.KL_EXPECTED
        if kl_mode not in (RobustnessBound.KL_POINTWISE, RobustnessBound.KL_EXPECTED):
            raise ValueError('Unknown kl_mode "' + str(kl_mode) + '".')
        if trajectories is None:
            trajectories = Rollout.run_many(system, policy, estimator, n_samples, seed, threads=threads,
                                            feedback=Rollout.FEEDBACK_STATE)
        trajectories = trajectories[:n_samples]
        beta = certificate.beta

        rho_beta = np.array([float(certificate.budget(t.states, t.estimates)) for t in trajectories])
        kl = np.array([float(kl_evaluator(t)) for t in trajectories])
        kl_term = float(np.mean(kl))
        per_sample_kl = kl if kl_mode == RobustnessBound.KL_POINTWISE else kl_term
        bound, bound_se, diagnostic = RobustnessBound.bound_from_samples(beta, rho_beta, per_sample_kl)

        j_off, j_on, delta_j, delta_ci = RobustnessBound.measured_gap(system, policy, estimator, n_samples, seed,
                                                                       threads=threads, offline=trajectories)
        report = RobustnessReport(j_off=j_off, j_on=j_on, delta_j=delta_j, delta_j_ci95=delta_ci, bound=bound,
                                  bound_standard_error=bound_se, gamma=certificate.gamma,
                                  gamma_ci95=certificate.gamma_ci95, kl_term=kl_term, n_samples=len(trajectories),
                                  diagnostic=diagnostic, kl_mode=kl_mode)
        if not report.holds():
            RobustnessBound.logger.warning('Measured gap ' + str(delta_j) + ' is above the bound ' + str(bound)
                                           + ' (beta=' + str(beta) + ', gamma=' + str(certificate.gamma) + ')')
        return report

    """
        (bound, standard error, diagnostic) from the per-rollout rho_beta values, in the log domain with a single
        final exponential. kl_term is one value shared by every rollout or one value per rollout.
    """
    @staticmethod
    def bound_from_samples(beta, rho_beta, kl_term):
        rho_beta = np.asarray(rho_beta, dtype=float)
        n = rho_beta.size
        kl_term = np.broadcast_to(np.asarray(kl_term, dtype=float), rho_beta.shape)
        contributions = rho_beta + kl_term
        worst = int(np.argmax(contributions))
        if not contributions[worst] <= RobustnessBound.LOG_OVERFLOW:
            diagnostic = {'dominating_sample': worst, 'log_contribution': float(contributions[worst]),
                          'rho_beta': float(rho_beta[worst]), 'kl_term': float(kl_term[worst])}
            RobustnessBound.logger.debug('Bound overflow: ' + str(diagnostic))
            return math.inf, math.nan, diagnostic

        log_mean = float(logsumexp(contributions)) - math.log(n)
        bound = math.exp(log_mean - math.log(beta))
        if n > 1:
            # std of exp(contributions) / beta, scaled by the largest term to stay finite
            scaled = np.exp(contributions - contributions[worst])
            log_se = (float(contributions[worst]) + math.log(float(np.std(scaled, ddof=1)) + 1e-300)
                      - 0.5 * math.log(n) - math.log(beta))
            bound_se = math.exp(log_se)
        else:
            bound_se = math.nan
        return bound, bound_se, None

    """
        Paired Monte Carlo estimate of Delta J = J_on - J_off. Both runs use the per-trial streams of `seed` and the
        same estimator, the offline run only records its estimates. offline may hold trajectories of that offline run
        already simulated. The gap is averaged over the trials that are finite in both runs.
    """
    @staticmethod
    def measured_gap(system, policy, estimator, n_trials, seed, threads=1, offline=None):
        if offline is None or len(offline) < n_trials:
            offline = Rollout.run_many(system, policy, estimator, n_trials, seed, threads=threads,
                                       feedback=Rollout.FEEDBACK_STATE)
        online = Rollout.run_many(system, policy, estimator, n_trials, seed, threads=threads)
        off_costs = np.array([trajectory.total_cost for trajectory in offline[:n_trials]])
        on_costs = np.array([trajectory.total_cost for trajectory in online])
        finite = np.isfinite(off_costs) & np.isfinite(on_costs)
        differences = on_costs[finite] - off_costs[finite]
        if differences.size == 0:
            delta, half_width = math.nan, math.nan
        elif differences.size == 1:
            delta, half_width = float(differences[0]), math.inf
        else:
            delta = float(np.mean(differences))
            half_width = RobustnessBound.Z_95 * float(np.std(differences, ddof=1)) / math.sqrt(differences.size)
        return CostSummary.from_costs(off_costs), CostSummary.from_costs(on_costs), delta, half_width

    """
        Grid argmin of the values (bounds on J_on, or measured mean costs) over beta. Ties go to the smallest beta.
        values is a sequence aligned with betas or a function beta -> value.
    """
    @staticmethod
    def optimize_beta(betas, values):
        betas = np.asarray(betas, dtype=float)
        if callable(values):
            values = [values(beta) for beta in betas]
        values = np.asarray(values, dtype=float)
        if betas.size == 0 or betas.size != values.size:
            raise ValueError('One value per grid point is needed.')
        values = np.where(np.isnan(values), math.inf, values)
        if not np.any(np.isfinite(values)):
            raise UnboundedGridError('Every value of the beta grid is infinite, extend the grid toward beta = 0.')
        order = np.argsort(betas, kind='stable')
        best = order[int(np.argmin(values[order]))]
        return float(betas[best]), float(values[best])
