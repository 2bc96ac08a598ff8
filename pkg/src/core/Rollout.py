#!/usr/lib/brdp/environment/bin/python
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from src.core.CostSummary import CostSummary
from src.core.Errors import DivergedTrajectoryError
from src.core.Trajectory import Trajectory
from src.core.TrialStreams import TrialStreams

"""
    Closed-loop simulation of a ControlSystem with an estimator in the loop, and Monte Carlo evaluation of the
    offline / online costs.

    A policy is any object with a sample(t, x, rng) method returning an input vector. A policy that keeps state
    during an episode (receding-horizon controllers) also has new_episode(trial_index=None), which returns a fresh
    controller for one rollout, so a single policy object can be shared by parallel rollouts.
"""
class Rollout:
    logger = logging.getLogger('Rollout')

    # The input is computed from the estimate (online problem) or from the true state (offline problem).
    FEEDBACK_ESTIMATE = 'estimate'
    FEEDBACK_STATE = 'state'

    """
        Independent streams for one trial, derived from (seed, trial_index) only
    """
    @staticmethod
    def trial_streams(seed, trial_index):
        return TrialStreams.for_trial(seed, trial_index)

    """
        Simulate one trajectory. The estimate x_hat_t is drawn at every step t in [0, t_f - 1] (the terminal state is
        never estimated), in the offline mode it is still drawn and recorded but not used for feedback.
        rng is a TrialStreams or a single Generator shared by every random source.
        trial_index is handed to the new_episode(trial_index) of episodic policies.
    """
    @staticmethod
    def run(system, policy, estimator, rng, feedback=FEEDBACK_ESTIMATE, trial_index=None):
        controller = policy.new_episode(trial_index=trial_index) if hasattr(policy, 'new_episode') else policy
        streams = TrialStreams.of(rng)

        x = np.asarray(system.initial_distribution(streams.dynamics), dtype=float)
        states = [x]
        estimates = []
        inputs = []
        total = 0.0
        for t in range(system.horizon):
            x_hat = estimator.sample(x, streams.estimator)
            observed = x_hat if feedback == Rollout.FEEDBACK_ESTIMATE else x
            u = np.asarray(controller.sample(t, observed, streams.policy), dtype=float)
            total += float(system.stage_cost(t, x, u))
            x = system.step(t, x, u, streams.dynamics)
            if not np.all(np.isfinite(x)):
                raise DivergedTrajectoryError(step=t)
            states.append(x)
            estimates.append(x_hat)
            inputs.append(u)
        total += float(system.terminal_cost(x))

        return Trajectory(states=np.array(states), estimates=np.array(estimates), inputs=np.array(inputs),
                          total_cost=total)

    """
        Run n_trials independent rollouts, trial i using Rollout.trial_streams(seed, i). Order of the result is the
        trial order whatever the number of threads.
    """
    @staticmethod
    def run_many(system, policy, estimator, n_trials, seed, threads=1, feedback=FEEDBACK_ESTIMATE):
        if n_trials < 1:
            raise ValueError('n_trials must be >= 1, got ' + str(n_trials) + '.')

        def trial(index):
            return Rollout.run(system, policy, estimator, Rollout.trial_streams(seed, index), feedback=feedback,
                               trial_index=index)

        if threads <= 1:
            return [trial(i) for i in range(n_trials)]
        with ThreadPoolExecutor(max_workers=threads) as executor:
            return list(executor.map(trial, range(n_trials)))

    """
        Monte Carlo estimate of J_on (noisy estimator) or J_off (perfect estimator / offline feedback).
    """
    @staticmethod
    def monte_carlo_cost(system, policy, estimator, n_trials, seed, threads=1, feedback=FEEDBACK_ESTIMATE):
        trajectories = Rollout.run_many(system, policy, estimator, n_trials, seed, threads=threads, feedback=feedback)
        summary = CostSummary.from_costs([trajectory.total_cost for trajectory in trajectories])
        if not summary.mean_defined:
            Rollout.logger.warning('Every trial of ' + system.name + ' failed, the mean cost is undefined.')
        Rollout.logger.debug(system.name + ': mean cost ' + str(summary.mean) + ' over ' + str(n_trials) + ' trials')
        return summary
