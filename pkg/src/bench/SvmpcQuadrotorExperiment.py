#!/usr/lib/brdp/environment/bin/python
import glob
import logging
import math
import os

from src.bench.Experiment import Experiment
from src.samplers.GaussianSequencePrior import GaussianSequencePrior
from src.samplers.RecedingHorizonPolicy import RecedingHorizonPolicy
from src.samplers.SvgdSampler import SvgdConfig, SvgdSampler
from src.systems.GaussianEstimator import GaussianEstimator
from src.systems.PlanarQuadrotor import PlanarQuadrotor

"""
    Stein-variational MPC on the nonlinear planar quadrotor (RK4). beta = inf runs the particles as independent
    gradient descents and applies the cheapest one (argmin MPC).
"""
class SvmpcQuadrotorExperiment(Experiment):
    logger = logging.getLogger('SvmpcQuadrotorExperiment')

    DEFAULT_PRIOR_STD = 0.05

    def __init__(self, config):
        super().__init__(config)
        self.quadrotor = PlanarQuadrotor.from_configuration(config.quadrotor)
        self._system = self.quadrotor.nonlinear_system()
        self.scaling = config.quadrotor.get('v', list(GaussianEstimator.QUADROTOR_SCALING))
        svgd = config.svgd
        self.prior = GaussianSequencePrior.constant(self.quadrotor.horizon, PlanarQuadrotor.INPUT_DIM,
                                                    float(svgd.get('prior_std', self.DEFAULT_PRIOR_STD)))
        self.replan_every = int(svgd.get('replan_every', 1))

    def system(self):
        return self._system

    def estimator(self, sigma2):
        return GaussianEstimator.gaussian_estimator(sigma2, self.scaling)

    def sampler_config(self, beta):
        svgd = self.config.svgd
        trace_path = None
        if svgd.get('trace', False):
            trace_path = os.path.join(self.config.output_directory, 'svgd_trace_beta_' + repr(float(beta)) + '.jsonl')
        return SvgdConfig(beta, n_particles=int(svgd.get('n_particles', 32)),
                          n_iterations=int(svgd.get('n_iterations', 200)),
                          step_size=float(svgd.get('step_size', 1e-2)),
                          bandwidth=svgd.get('bandwidth', 'median'),
                          optimizer=svgd.get('optimizer', 'adagrad'),
                          mode='argmin' if math.isinf(beta) else svgd.get('mode', 'sample'),
                          trace_path=trace_path)

    def policy(self, beta):
        config = self.sampler_config(beta)
        if config.trace_path is not None:
            os.makedirs(self.config.output_directory, exist_ok=True)
            # one trace file per trial, see SvgdSampler.for_trial
            for stale in glob.glob(SvgdSampler.trial_trace_path(config.trace_path, '*')):
                os.remove(stale)
        return RecedingHorizonPolicy(self._system, SvgdSampler(config), self.prior, replan_every=self.replan_every)
