#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np
from scipy import linalg

from src.core.Errors import IllConditionedProblemError
from src.lqg.BrLqgPolicy import BrLqgPolicy
from src.lqg.LqrPolicy import LqrPolicy
from src.lqg.QuadraticHamiltonian import QuadraticHamiltonian

"""
    Closed-loop first and second moments of a linear policy u_t = K_t x_t + eta_t, with the expected stage costs and,
    when the problem has a prior, the expected per-step KL to that prior.
"""
class PolicyMoments:
    def __init__(self, means, covs, input_means, input_covs, expected_costs, expected_kl):
        self.means = means
        self.covs = covs
        self.input_means = input_means
        self.input_covs = input_covs
        self.expected_costs = expected_costs
        self.expected_kl = expected_kl

    def expected_cost(self):
        return float(sum(self.expected_costs))

    def expected_trajectory_kl(self):
        return float(sum(self.expected_kl)) if self.expected_kl is not None else math.nan


"""
    Backward recursion of the bounded-rational LQG problem and its beta -> inf (LQR) limit.
"""
class BrLqgSolver:
    logger = logging.getLogger('BrLqgSolver')

    # Above this condition number a precision matrix is considered singular
    MAX_CONDITION = 1e14

    """
        Solve the bounded-rational problem for 0 < beta < inf. At every step, backward from t_f - 1:
            Sigma_eta^-1 = beta (B^T P B + R) + Sigma_u^-1
            eta_mean     = Sigma_eta (Sigma_u^-1 u_bar - beta B^T b)
            K            = -beta Sigma_eta B^T P A
        then the coefficients of the free energy V_t = 1/2 x^T P_t x + b_t^T x + d_t.
    """
    @staticmethod
    def solve(problem, beta):
        beta = float(beta)
        if not (0.0 < beta < math.inf):
            raise ValueError('beta must be in (0, inf), got ' + str(beta) + '.')
        if problem.priors is None:
            raise ValueError('The bounded-rational problem needs a prior per step.')

        A, B, Q, R = problem.A, problem.B, problem.Q, problem.R
        n, m = B.shape
        horizon = problem.horizon

        P = [None] * (horizon + 1)
        b = [None] * (horizon + 1)
        d = [0.0] * (horizon + 1)
        K = [None] * horizon
        eta_mean = [None] * horizon
        eta_cov = [None] * horizon
        eta_precision = [None] * horizon

        P[horizon] = problem.Q_f.copy()
        b[horizon] = np.zeros(n)
        d[horizon] = 0.0

        for t in range(horizon - 1, -1, -1):
            prior = problem.priors[t]
            prior_precision = prior.precision()
            P_next, b_next = P[t + 1], b[t + 1]

            precision = beta * (B.T @ P_next @ B + R) + prior_precision
            precision = 0.5 * (precision + precision.T)
            factor = BrLqgSolver._cholesky(precision, t)

            BtPA = B.T @ P_next @ A
            natural_mean = prior_precision @ prior.mean - beta * (B.T @ b_next)

            eta_cov[t] = linalg.cho_solve(factor, np.eye(m))
            eta_cov[t] = 0.5 * (eta_cov[t] + eta_cov[t].T)
            eta_precision[t] = precision
            eta_mean[t] = linalg.cho_solve(factor, natural_mean)
            K[t] = -beta * linalg.cho_solve(factor, BtPA)

            P_t = Q + A.T @ P_next @ A + BtPA.T @ K[t]
            P[t] = 0.5 * (P_t + P_t.T)
            b[t] = A.T @ (b_next + P_next @ B @ eta_mean[t])

            log_det_ratio = prior.log_det() + 2.0 * float(np.sum(np.log(np.diag(factor[0]))))
            d[t] = (d[t + 1] + 0.5 * float(np.trace(problem.noise_covs[t] @ P_next))
                    + (log_det_ratio - eta_mean[t] @ precision @ eta_mean[t]
                       + prior.mean @ prior_precision @ prior.mean) / (2.0 * beta))
            BrLqgSolver.logger.debug('t=' + str(t) + ' |K|=' + str(np.linalg.norm(K[t])))

        return BrLqgPolicy(beta=beta, K=K, eta_mean=eta_mean, eta_cov=eta_cov, P=P, b=b, d=d,
                           eta_precision=eta_precision)

    """
        Standard finite-horizon discrete Riccati recursion (beta = inf)
    """
    @staticmethod
    def lqr_reference(problem):
        A, B, Q, R = problem.A, problem.B, problem.Q, problem.R
        horizon = problem.horizon
        P = [None] * (horizon + 1)
        K = [None] * horizon
        P[horizon] = problem.Q_f.copy()
        for t in range(horizon - 1, -1, -1):
            P_next = P[t + 1]
            gram = B.T @ P_next @ B + R
            factor = BrLqgSolver._cholesky(0.5 * (gram + gram.T), t)
            K[t] = -linalg.cho_solve(factor, B.T @ P_next @ A)
            P_t = Q + A.T @ P_next @ A + A.T @ P_next @ B @ K[t]
            P[t] = 0.5 * (P_t + P_t.T)
        return LqrPolicy(K=K, P=P)

    """
        Closed-form KL between the policy output N(K_t x + eta_mean_t, eta_cov_t) and the prior at step t
    """
    @staticmethod
    def stepwise_kl(policy, problem, x, t):
        if problem.priors is None:
            raise ValueError('stepwise_kl needs a prior.')
        return policy.output_distribution(t, x).kl(problem.priors[t])

    """
        Propagate N(mean0, cov0) through the closed loop of a BrLqgPolicy or an LqrPolicy.
    """
    @staticmethod
    def policy_moments(policy, problem, mean0, cov0):
        A, B = problem.A, problem.B
        n, m = B.shape
        mean = np.asarray(mean0, dtype=float)
        cov = np.atleast_2d(np.asarray(cov0, dtype=float))
        stochastic = isinstance(policy, BrLqgPolicy)
        with_kl = stochastic and problem.priors is not None

        means, covs, input_means, input_covs, costs = [mean], [cov], [], [], []
        expected_kl = [] if with_kl else None
        for t in range(problem.horizon):
            K = policy.K[t]
            offset = policy.eta_mean[t] if stochastic else np.zeros(m)
            noise = policy.eta_cov[t] if stochastic else np.zeros((m, m))
            u_mean = K @ mean + offset
            u_cov = K @ cov @ K.T + noise
            costs.append(0.5 * float(np.trace(problem.Q @ cov) + mean @ problem.Q @ mean
                                     + np.trace(problem.R @ u_cov) + u_mean @ problem.R @ u_mean))
            if with_kl:
                prior = problem.priors[t]
                prior_precision = prior.precision()
                diff = u_mean - prior.mean
                eta = policy.eta[t]
                expected_kl.append(0.5 * float(np.trace(prior_precision @ noise) - m + prior.log_det() - eta.log_det()
                                               + diff @ prior_precision @ diff
                                               + np.trace(prior_precision @ K @ cov @ K.T)))
            closed = A + B @ K
            mean = A @ mean + B @ u_mean
            cov = closed @ cov @ closed.T + B @ noise @ B.T + problem.noise_covs[t]
            cov = 0.5 * (cov + cov.T)
            means.append(mean)
            covs.append(cov)
            input_means.append(u_mean)
            input_covs.append(u_cov)
        costs.append(0.5 * float(np.trace(problem.Q_f @ cov) + mean @ problem.Q_f @ mean))
        return PolicyMoments(means, covs, input_means, input_covs, costs, expected_kl)

    """
        Prior obtained by projecting the initial distribution through the LQR closed loop:
            U_bar_t = N(K_t x_bar_t, K_t Sigma_t K_t^T + ridge I)
    """
    @staticmethod
    def lqr_prior(problem, mean0, cov0, ridge=1e-6):
        lqr = BrLqgSolver.lqr_reference(problem)
        moments = BrLqgSolver.policy_moments(lqr, problem, mean0, cov0)
        m = problem.input_dim
        prior_means = moments.input_means
        prior_covs = [cov + ridge * np.eye(m) for cov in moments.input_covs]
        return problem.with_prior(prior_means, prior_covs)

    """
        Per-step Hamiltonians H_t(x, u) = c_t(x, u) + E[V_{t+1}(A x + B u + eps)] built from the value recursion.
    """
    @staticmethod
    def hamiltonians(policy, problem):
        A, B = problem.A, problem.B
        result = []
        for t in range(problem.horizon):
            P_next, b_next = policy.P[t + 1], policy.b[t + 1]
            result.append(QuadraticHamiltonian(
                W=problem.Q + A.T @ P_next @ A,
                G=A.T @ P_next @ B,
                g=A.T @ b_next,
                M=problem.R + B.T @ P_next @ B,
                h=B.T @ b_next,
                c=policy.d[t + 1] + 0.5 * float(np.trace(problem.noise_covs[t] @ P_next)),
            ))
        return result

    @staticmethod
    def _cholesky(matrix, step):
        condition = float(np.linalg.cond(matrix))
        if not math.isfinite(condition) or condition > BrLqgSolver.MAX_CONDITION:
            raise IllConditionedProblemError(condition, step=step)
        try:
            return linalg.cho_factor(matrix, lower=True)
        except linalg.LinAlgError:
            raise IllConditionedProblemError(condition, step=step)
