import math
import unittest

import numpy as np

from src.core.ControlSystem import ControlSystem
from src.core.Errors import DivergedTrajectoryError
from src.core.Estimator import Estimator
from src.core.Rollout import Rollout
from src.core.TrialStreams import TrialStreams
from src.lqg.BrLqgSolver import BrLqgSolver
from src.systems.GaussianEstimator import GaussianEstimator
from src.systems.PlanarQuadrotor import PlanarQuadrotor
from test.core.Utils import Utils


class ProportionalPolicy:
    def __init__(self, gain=-0.5):
        self.gain = gain
        self.observed = []

    def sample(self, t, x, rng):
        self.observed.append(np.array(x))
        return self.gain * np.asarray(x) + 0.01 * rng.standard_normal(1)


class EpisodicPolicy:
    episodes = 0
    trials = []

    def new_episode(self, trial_index=None):
        EpisodicPolicy.episodes += 1
        EpisodicPolicy.trials.append(trial_index)
        return ProportionalPolicy()


class TestRollout(unittest.TestCase):
    def setUp(self):
        self.system = Utils.integrator_system(horizon=4)
        self.noisy = Estimator(sample=lambda x, rng: x + rng.standard_normal(x.shape), family='gaussian', sigma2=1.0)

    def test_run(self):
        trajectory = Rollout.run(self.system, ProportionalPolicy(), Estimator.perfect(), np.random.default_rng(1))
        self.assertEqual(trajectory.states.shape, (5, 1))
        self.assertEqual(trajectory.estimates.shape, (4, 1))
        self.assertEqual(trajectory.inputs.shape, (4, 1))
        self.assertAlmostEqual(trajectory.total_cost,
                               self.system.trajectory_cost(trajectory.states, trajectory.inputs))
        np.testing.assert_array_equal(trajectory.estimates, trajectory.states[:-1])

    def test_offline_feedback_uses_the_state(self):
        policy = ProportionalPolicy()
        trajectory = Rollout.run(self.system, policy, self.noisy, np.random.default_rng(2),
                                 feedback=Rollout.FEEDBACK_STATE)
        np.testing.assert_array_equal(np.array(policy.observed), trajectory.states[:-1])
        self.assertFalse(np.allclose(trajectory.estimates, trajectory.states[:-1]))

    def test_online_feedback_uses_the_estimate(self):
        policy = ProportionalPolicy()
        trajectory = Rollout.run(self.system, policy, self.noisy, np.random.default_rng(3))
        np.testing.assert_array_equal(np.array(policy.observed), trajectory.estimates)

    def test_serial_and_parallel_are_identical(self):
        serial = Rollout.run_many(self.system, ProportionalPolicy(), self.noisy, 12, seed=5, threads=1)
        parallel = Rollout.run_many(self.system, ProportionalPolicy(), self.noisy, 12, seed=5, threads=4)
        self.assertEqual([t.total_cost for t in serial], [t.total_cost for t in parallel])

    def test_trial_streams_depend_on_seed_and_index(self):
        a = Rollout.trial_streams(1, 0).estimator.standard_normal(3)
        np.testing.assert_array_equal(a, Rollout.trial_streams(1, 0).estimator.standard_normal(3))
        self.assertFalse(np.array_equal(a, Rollout.trial_streams(1, 1).estimator.standard_normal(3)))
        self.assertFalse(np.array_equal(a, Rollout.trial_streams(2, 0).estimator.standard_normal(3)))

    def test_trial_streams_are_independent_per_source(self):
        streams = TrialStreams.for_trial(1, 0)
        draws = [stream.standard_normal(3) for stream in (streams.dynamics, streams.estimator, streams.policy)]
        self.assertFalse(np.array_equal(draws[0], draws[1]))
        self.assertFalse(np.array_equal(draws[1], draws[2]))
        rng = np.random.default_rng(0)
        self.assertIs(TrialStreams.of(rng).policy, rng)
        self.assertIs(TrialStreams.of(streams), streams)

    def test_estimation_noise_is_shared_by_different_policies(self):
        quadrotor = PlanarQuadrotor()
        problem = BrLqgSolver.lqr_prior(quadrotor.lqg_problem(), quadrotor.x0_mean, np.diag(quadrotor.x0_var))
        system = problem.control_system(quadrotor.quadrotor_initial_distribution())
        estimator = GaussianEstimator.gaussian_estimator(0.4, GaussianEstimator.QUADROTOR_SCALING)
        lqr = Rollout.run(system, BrLqgSolver.lqr_reference(problem), estimator, Rollout.trial_streams(7, 0))
        bounded = Rollout.run(system, BrLqgSolver.solve(problem, 10.0), estimator, Rollout.trial_streams(7, 0))

        np.testing.assert_array_equal(lqr.states[0], bounded.states[0])
        self.assertFalse(np.allclose(lqr.states[1:], bounded.states[1:]))
        np.testing.assert_allclose(lqr.estimates - lqr.states[:-1], bounded.estimates - bounded.states[:-1],
                                   atol=1e-12)

    def test_new_episode(self):
        EpisodicPolicy.episodes = 0
        EpisodicPolicy.trials = []
        Rollout.run_many(self.system, EpisodicPolicy(), Estimator.perfect(), 3, seed=0)
        self.assertEqual(EpisodicPolicy.episodes, 3)
        self.assertEqual(EpisodicPolicy.trials, [0, 1, 2])

    def test_invalid_trials(self):
        with self.assertRaises(ValueError):
            Rollout.run_many(self.system, ProportionalPolicy(), Estimator.perfect(), 0, seed=0)

    def test_divergence(self):
        def dynamics(t, x, u, noise=None):
            return np.full(np.shape(x), np.nan) if t == 2 else x + u

        system = ControlSystem('diverging', 1, 1, 4, dynamics, self.system.stage_cost, self.system.terminal_cost,
                               self.system.initial_distribution)
        with self.assertRaises(DivergedTrajectoryError) as context:
            Rollout.run(system, ProportionalPolicy(), Estimator.perfect(), np.random.default_rng(0))
        self.assertEqual(context.exception.step, 2)

    def test_monte_carlo_cost_all_failures(self):
        system = Utils.integrator_system(horizon=2, terminal_cost=lambda x: math.inf)
        summary = Rollout.monte_carlo_cost(system, ProportionalPolicy(), Estimator.perfect(), 5, seed=0)
        self.assertEqual(summary.failure_fraction, 1.0)
        self.assertFalse(summary.mean_defined)

    def test_monte_carlo_cost(self):
        summary = Rollout.monte_carlo_cost(self.system, ProportionalPolicy(), Estimator.perfect(), 20, seed=0)
        self.assertEqual(summary.n_trials, 20)
        self.assertEqual(summary.failure_fraction, 0.0)
        self.assertGreater(summary.mean, 0.0)

if __name__ == '__main__':
    unittest.main()
