#!/usr/lib/brdp/environment/bin/python
import logging
import math

import numpy as np

from src.bench.Experiment import Experiment
from src.dp.GammaEstimator import GammaEstimator
from src.dp.RobustnessBound import RobustnessBound
from src.lqg.BrLqgSolver import BrLqgSolver
from src.systems.GaussianEstimator import GaussianEstimator
from src.systems.PlanarQuadrotor import PlanarQuadrotor

"""
    BR-LQG on the linearized planar quadrotor. The prior is the LQR closed loop projected from the initial
    distribution, beta = inf is the LQR controller itself. Finite-beta cells can be certified: levels, gamma and the
    robustness bound are computed from one set of offline rollouts.
"""
class LqgQuadrotorExperiment(Experiment):
    logger = logging.getLogger('LqgQuadrotorExperiment')

    def __init__(self, config):
        super().__init__(config)
        self.quadrotor = PlanarQuadrotor.from_configuration(config.quadrotor)
        self.problem = BrLqgSolver.lqr_prior(self.quadrotor.lqg_problem(), self.quadrotor.x0_mean,
                                             np.diag(self.quadrotor.x0_var))
        self._system = self.problem.control_system(self.quadrotor.quadrotor_initial_distribution(),
                                                   name='linear-quadrotor')
        self.scaling = config.quadrotor.get('v', list(GaussianEstimator.QUADROTOR_SCALING))

    def system(self):
        return self._system

    def estimator(self, sigma2):
        return GaussianEstimator.gaussian_estimator(sigma2, self.scaling)

    def policy(self, beta):
        if math.isinf(beta):
            return self.cache.get_or_solve(beta, lambda: BrLqgSolver.lqr_reference(self.problem))
        return self.cache.get_or_solve(beta, lambda: BrLqgSolver.solve(self.problem, beta))

    def kl_evaluator(self, policy):
        def trajectory_kl(trajectory):
            return sum(BrLqgSolver.stepwise_kl(policy, self.problem, trajectory.states[t], t)
                       for t in range(self.problem.horizon))

        return trajectory_kl

    def certify(self, beta, sigma2, policy, estimator):
        dp = self.config.dp
        n_samples = int(dp.get('n_samples', max(self.config.n_trials, GammaEstimator.MIN_SAMPLES)))
        quantile = float(dp.get('level_quantile', 0.99))
        hamiltonians = BrLqgSolver.hamiltonians(policy, self.problem)

        def input_level(t, u):
            return hamiltonians[t].lipschitz_level(u)

        trajectories = GammaEstimator.offline_trajectories(self._system, policy, estimator, n_samples,
                                                           self.config.seed, threads=self.config.threads)
        levels = GammaEstimator.certified_levels(trajectories, input_level, quantile=quantile)
        certificate = GammaEstimator.estimate_gamma(self._system, policy, estimator, beta, levels, n_samples,
                                                    self.config.seed, input_level, threads=self.config.threads,
                                                    trajectories=trajectories)
        report = RobustnessBound.robustness_bound(self._system, policy, estimator, certificate,
                                                  self.kl_evaluator(policy), n_samples, self.config.seed,
                                                  threads=self.config.threads, trajectories=trajectories)
        LqgQuadrotorExperiment.logger.debug('beta=' + str(beta) + ' sigma2=' + str(sigma2) + ': gamma '
                                            + str(certificate.gamma) + ', bound ' + str(report.bound))
        return certificate, report
