import os
import tempfile

import numpy as np

from src.bench.ExperimentConfig import ExperimentConfig
from src.core.Configuration import Configuration
from src.core.ControlSystem import ControlSystem
from src.lqg.LqgProblem import LqgProblem

"""
    Some useful builders for the various tests
"""
class Utils:
    @staticmethod
    def integrator_system(horizon=3, x0=1.0, terminal_cost=None):
        def dynamics(t, x, u, noise=None):
            return np.asarray(x, dtype=float) + np.asarray(u, dtype=float)

        def stage_cost(t, x, u):
            return 0.5 * (np.sum(np.asarray(x) ** 2, axis=-1) + np.sum(np.asarray(u) ** 2, axis=-1))

        def default_terminal_cost(x):
            return 0.5 * np.sum(np.asarray(x) ** 2, axis=-1)

        return ControlSystem(name='integrator', state_dim=1, input_dim=1, horizon=horizon, dynamics=dynamics,
                             stage_cost=stage_cost, terminal_cost=terminal_cost or default_terminal_cost,
                             initial_distribution=lambda rng: np.array([x0]))

    """
        x' = x + u, Q = R = Q_f = 1, prior N(0, prior_var) at every step
    """
    @staticmethod
    def scalar_problem(horizon=3, prior_var=1.0, noise_var=0.0):
        return LqgProblem(A=[[1.0]], B=[[1.0]], Q=[[1.0]], R=[[1.0]], Q_f=[[1.0]], horizon=horizon,
                          noise_covs=[[noise_var]], prior_means=[[0.0]] * horizon,
                          prior_covs=[[[prior_var]]] * horizon)

    @staticmethod
    def random_problem(rng, n=3, m=2, horizon=4, with_prior=True):
        A = np.eye(n) + 0.2 * rng.standard_normal((n, n))
        B = rng.standard_normal((n, m))
        L = rng.standard_normal((n, n))
        Q = L @ L.T + 0.1 * np.eye(n)
        R = np.eye(m) * (0.5 + rng.random())
        noise = 0.01 * np.eye(n)
        if not with_prior:
            return LqgProblem(A, B, Q, R, Q.copy(), horizon, noise_covs=noise)
        means = [0.1 * rng.standard_normal(m) for _ in range(horizon)]
        covs = []
        for _ in range(horizon):
            S = rng.standard_normal((m, m))
            covs.append(S @ S.T + 0.5 * np.eye(m))
        return LqgProblem(A, B, Q, R, Q.copy(), horizon, noise_covs=noise, prior_means=means, prior_covs=covs)

    @staticmethod
    def write_configuration(lines, directory=None):
        directory = directory or tempfile.mkdtemp(prefix='brdp-conf-')
        filepath = os.path.join(directory, 'test.conf')
        with open(filepath, 'w') as f:
            f.write('\n'.join(lines) + '\n')
        return filepath

    """
        ExperimentConfig of a test configuration file, writing to a fresh temporary directory
    """
    @staticmethod
    def experiment_config(filename, overrides=None):
        configuration = Configuration('test/resources/conf/' + filename)
        configuration.set('output.directory', tempfile.mkdtemp(prefix='brdp-out-'))
        for key, value in (overrides or {}).items():
            configuration.set(key, value)
        return ExperimentConfig(configuration)
