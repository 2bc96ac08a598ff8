#!/usr/lib/brdp/environment/bin/python
import logging

import numpy as np

from src.samplers.TrajectoryHamiltonian import TrajectoryHamiltonian

"""
    Wraps a trajectory sampler into the per-step controller used by Rollout.
    planner(ham, prior, rng) returns an input sequence over the remaining horizon (ImportanceSampler and SvgdSampler
    instances are planners). At every t = 0 mod replan_every the sequence is solved again from the observed state,
    otherwise the stored sequence is executed.
"""
class RecedingHorizonPolicy:
    logger = logging.getLogger('RecedingHorizonPolicy')

    def __init__(self, system, planner, prior, replan_every=1):
        if replan_every < 1:
            raise ValueError('replan_every must be >= 1, got ' + str(replan_every) + '.')
        self.system = system
        self.planner = planner
        self.prior = prior
        self.replan_every = int(replan_every)
        self._plan = None
        self._plan_start = None

    """
        Fresh controller for one episode (the stored plan is per episode). A planner with a for_trial(trial_index)
        method gets its own copy for the trial.
    """
    def new_episode(self, trial_index=None):
        planner = self.planner
        if trial_index is not None and hasattr(planner, 'for_trial'):
            planner = planner.for_trial(trial_index)
        return RecedingHorizonPolicy(self.system, planner, self.prior, self.replan_every)

    def sample(self, t, x, rng):
        if self._plan is None or t % self.replan_every == 0:
            ham = TrajectoryHamiltonian(self.system, t, x)
            self._plan = np.asarray(self.planner(ham, self.prior.window(t), rng), dtype=float)
            self._plan_start = t
        return self._plan[t - self._plan_start]
