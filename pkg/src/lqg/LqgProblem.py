#!/usr/lib/brdp/environment/bin/python
import numpy as np

from src.core.ControlSystem import ControlSystem
from src.core.Errors import ConfigurationError
from src.gibbs.Gaussian import Gaussian

"""
    Linear dynamics X_{t+1} = A X_t + B U_t + eps_t, eps_t ~ N(0, Sigma_eps_t), with the costs
        c_t(x, u) = 1/2 (x^T Q x + u^T R u),    c_{t_f}(x) = 1/2 x^T Q_f x
    and an optional Gaussian prior N(u_bar_t, Sigma_u_t) per step for the bounded-rational problem.
    Every matrix is checked at construction (minimum eigenvalue >= -1e-10) then symmetrized.
"""
class LqgProblem:
    EIGENVALUE_TOLERANCE = -1e-10

    def __init__(self, A, B, Q, R, Q_f, horizon, noise_covs=None, prior_means=None, prior_covs=None):
        self.A = np.atleast_2d(np.asarray(A, dtype=float))
        self.B = np.atleast_2d(np.asarray(B, dtype=float))
        n, m = self.B.shape
        if self.A.shape != (n, n):
            raise ConfigurationError('A must be ' + str(n) + 'x' + str(n) + ', got ' + str(self.A.shape) + '.')
        if horizon < 1:
            raise ConfigurationError('The horizon must be a positive integer.')
        self.horizon = int(horizon)
        self.Q = LqgProblem.checked_psd(Q, n, 'Q')
        self.Q_f = LqgProblem.checked_psd(Q_f, n, 'Q_f')
        self.R = LqgProblem.checked_psd(R, m, 'R')
        if np.min(np.linalg.eigvalsh(self.R)) <= 0:
            raise ConfigurationError('R must be positive-definite.')

        if noise_covs is None:
            noise_covs = np.zeros((n, n))
        if np.ndim(noise_covs) == 2:
            noise_covs = [noise_covs] * self.horizon
        if len(noise_covs) != self.horizon:
            raise ConfigurationError('One process-noise covariance per step is needed.')
        self.noise_covs = [LqgProblem.checked_psd(cov, n, 'Sigma_eps') for cov in noise_covs]

        self.priors = None
        if prior_means is not None:
            if len(prior_means) != self.horizon or len(prior_covs) != self.horizon:
                raise ConfigurationError('One prior mean and covariance per step is needed.')
            self.priors = [Gaussian(mean, LqgProblem.checked_psd(cov, m, 'Sigma_u'))
                           for mean, cov in zip(prior_means, prior_covs)]

    @property
    def state_dim(self):
        return self.B.shape[0]

    @property
    def input_dim(self):
        return self.B.shape[1]

    @staticmethod
    def checked_psd(matrix, size, name):
        matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
        if matrix.shape != (size, size):
            raise ConfigurationError(name + ' must be ' + str(size) + 'x' + str(size) + ', got '
                                     + str(matrix.shape) + '.')
        if np.min(np.linalg.eigvalsh(0.5 * (matrix + matrix.T))) < LqgProblem.EIGENVALUE_TOLERANCE:
            raise ConfigurationError(name + ' is not positive-semidefinite.')
        return 0.5 * (matrix + matrix.T)

    """
        Same problem with a new prior sequence
    """
    def with_prior(self, prior_means, prior_covs):
        return LqgProblem(self.A, self.B, self.Q, self.R, self.Q_f, self.horizon, noise_covs=self.noise_covs,
                          prior_means=prior_means, prior_covs=prior_covs)

    def stage_cost(self, t, x, u):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=float)
        return 0.5 * (np.einsum('...i,ij,...j->...', x, self.Q, x) + np.einsum('...i,ij,...j->...', u, self.R, u))

    def terminal_cost(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * np.einsum('...i,ij,...j->...', x, self.Q_f, x)

    def dynamics(self, t, x, u, noise=None):
        nxt = np.asarray(x, dtype=float) @ self.A.T + np.asarray(u, dtype=float) @ self.B.T
        if noise is not None and np.any(self.noise_covs[t] != 0):
            nxt = nxt + noise.multivariate_normal(np.zeros(self.state_dim), self.noise_covs[t], size=nxt.shape[:-1])
        return nxt

    """
        The problem as a ControlSystem, for rollouts
    """
    def control_system(self, initial_distribution, name='lqg'):
        return ControlSystem(name=name, state_dim=self.state_dim, input_dim=self.input_dim, horizon=self.horizon,
                             dynamics=self.dynamics, stage_cost=self.stage_cost, terminal_cost=self.terminal_cost,
                             initial_distribution=initial_distribution)
