#!/usr/lib/brdp/environment/bin/python
import numpy as np

"""
    The random streams of one trial. The initial state and the process noise come from `dynamics`, the estimation
    noise from `estimator` and the input sampling from `policy`. With one stream per source, two rollouts of the same
    trial see the same initial state, process noise and estimation noise whatever the policy draws, so the costs of
    two cells can be compared pairwise.
"""
class TrialStreams:
    SOURCES = 3

    def __init__(self, dynamics, estimator, policy):
        self.dynamics = dynamics
        self.estimator = estimator
        self.policy = policy

    """
        Streams derived from (seed, trial_index) only. Serial and parallel executions use the same streams.
    """
    @staticmethod
    def for_trial(seed, trial_index):
        children = np.random.SeedSequence([int(seed), int(trial_index)]).spawn(TrialStreams.SOURCES)
        dynamics, estimator, policy = [np.random.default_rng(child) for child in children]
        return TrialStreams(dynamics=dynamics, estimator=estimator, policy=policy)

    """
        A single generator used for every source, for one-off rollouts where pairing does not matter
    """
    @staticmethod
    def shared(rng):
        return TrialStreams(dynamics=rng, estimator=rng, policy=rng)

    @staticmethod
    def of(rng):
        return rng if isinstance(rng, TrialStreams) else TrialStreams.shared(rng)
