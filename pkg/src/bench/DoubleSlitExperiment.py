#!/usr/lib/brdp/environment/bin/python
import logging

import numpy as np

from src.bench.Experiment import Experiment
from src.core.Errors import InfeasibleProposalError
from src.samplers.ImportanceSampler import ImportanceSampler
from src.samplers.RecedingHorizonPolicy import RecedingHorizonPolicy
from src.systems.DoubleSlitWorld import DoubleSlitWorld
from src.systems.GaussianEstimator import GaussianEstimator

"""
    Motion planning through the double slit with a receding-horizon importance sampler. beta = inf is the argmin
    planner (cheapest sampled sequence).
"""
class DoubleSlitExperiment(Experiment):
    logger = logging.getLogger('DoubleSlitExperiment')

    def __init__(self, config):
        super().__init__(config)
        self.world = DoubleSlitWorld.from_configuration(config.slit)
        self.n_samples = int(config.slit.get('n_samples', ImportanceSampler.DEFAULT_SAMPLES))
        self.replan_every = int(config.slit.get('replan_every', 1))
        self._system = self.world.double_slit_system()

    def system(self):
        return self._system

    def estimator(self, sigma2):
        return GaussianEstimator.gaussian_estimator(sigma2, DoubleSlitWorld.estimator_scaling())

    def policy(self, beta):
        sampler = ImportanceSampler(beta, n_samples=self.n_samples, proposal=self.world.route_proposal)

        # An estimate inside an obstacle makes every sequence collide: hold the position until the next replan
        def planner(ham, prior, rng):
            try:
                return sampler(ham, prior, rng)
            except InfeasibleProposalError:
                DoubleSlitExperiment.logger.debug('No feasible sequence from ' + str(ham.x) + ' at t=' + str(ham.t)
                                                  + ', holding position.')
                return np.zeros((ham.steps, ham.input_dim))

        return RecedingHorizonPolicy(self._system, planner, self.world.prior(), replan_every=self.replan_every)

    """
        Passage fractions over the accepted rollouts (goal reached)
    """
    def describe_cell(self, trajectories):
        accepted = [trajectory for trajectory in trajectories if not trajectory.is_failure()]
        passages = [self.world.classify_passage(trajectory.states) for trajectory in accepted]
        n_accepted = len(accepted)

        def fraction(passage):
            return passages.count(passage) / n_accepted if n_accepted else float('nan')

        return {
            'n_accepted': n_accepted,
            'passage_wide': fraction(DoubleSlitWorld.PASSAGE_WIDE),
            'passage_narrow': fraction(DoubleSlitWorld.PASSAGE_NARROW),
        }
