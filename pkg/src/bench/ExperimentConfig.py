#!/usr/lib/brdp/environment/bin/python
import math

from src.core.Errors import ConfigurationError

"""
    Validated view of a Configuration for one sweep. Every value is read once, at construction, so a bad file fails
    before the first cell is computed.
"""
class ExperimentConfig:
    DOUBLE_SLIT = 'double-slit'
    LQG_QUADROTOR = 'lqg-quadrotor'
    SVMPC_QUADROTOR = 'svmpc-quadrotor'
    EXPERIMENTS = (DOUBLE_SLIT, LQG_QUADROTOR, SVMPC_QUADROTOR)

    def __init__(self, configuration):
        self.configuration = configuration
        self.experiment_id = configuration.experiment_id()
        if self.experiment_id not in ExperimentConfig.EXPERIMENTS:
            raise ConfigurationError('Unknown experiment "' + str(self.experiment_id) + '", expected one of '
                                     + ', '.join(ExperimentConfig.EXPERIMENTS) + '.')
        self.betas = sorted(float(beta) for beta in configuration.beta_grid())
        if any(not (0 < beta < math.inf) for beta in self.betas):
            raise ConfigurationError('The beta grid must hold finite positive values, use sweep.include_inf for '
                                     + 'beta = inf.')
        self.include_inf = configuration.include_inf()
        self.sigma2_values = sorted(configuration.sigma2_values())
        if not self.sigma2_values or any(sigma2 < 0 for sigma2 in self.sigma2_values):
            raise ConfigurationError('sweep.sigma2 must be a non-empty list of non-negative values.')
        self.n_trials = configuration.n_trials()
        if self.n_trials < 1:
            raise ConfigurationError('run.n_trials must be >= 1, got ' + str(self.n_trials) + '.')
        self.seed = configuration.seed()
        self.threads = configuration.threads()
        self.output_directory = configuration.output_directory()
        self.trajectory_samples = configuration.trajectory_samples()

        self.quadrotor = configuration.section('quadrotor')
        self.slit = configuration.section('slit')
        self.svgd = configuration.section('svgd')
        self.dp = configuration.section('dp')

    """
        Every beta of the sweep in ascending order, inf last when the baseline is included
    """
    def all_betas(self):
        return self.betas + ([math.inf] if self.include_inf else [])

    """
        (beta, sigma2) cells: beta ascending, then sigma2
    """
    def cells(self):
        return [(beta, sigma2) for beta in self.all_betas() for sigma2 in self.sigma2_values]

    def certify(self):
        return bool(self.dp.get('certify', False))

    def to_dict(self):
        return {
            'experiment': self.experiment_id,
            'betas': self.all_betas(),
            'sigma2': self.sigma2_values,
            'n_trials': self.n_trials,
            'seed': self.seed,
            'threads': self.threads,
        }
