import json
import math
import os
import tempfile
import unittest

import numpy as np

from src.core.Errors import SteinDivergenceError
from src.samplers.GaussianSequencePrior import GaussianSequencePrior
from src.samplers.SvgdSampler import SvgdConfig, SvgdSampler
from src.samplers.TrajectoryHamiltonian import TrajectoryHamiltonian
from test.core.Utils import Utils


class TestSvgdSampler(unittest.TestCase):
    def setUp(self):
        self.system = Utils.integrator_system(horizon=3)
        self.ham = TrajectoryHamiltonian(self.system, 0, np.array([1.0]))
        self.prior = GaussianSequencePrior.constant(3, 1, 1.0)

    def test_single_particle_is_gradient_descent(self):
        trace_path = os.path.join(tempfile.mkdtemp(prefix='brdp-svgd-'), 'trace.jsonl')
        beta, step = 2.0, 1e-2
        config = SvgdConfig(beta, n_particles=1, n_iterations=50, step_size=step, trace_path=trace_path)
        SvgdSampler(config).sample_control(self.ham, self.prior, np.random.default_rng(0))

        x = self.prior.sample(np.random.default_rng(0), 1)
        with open(trace_path, 'r') as f:
            records = [json.loads(line) for line in f]
        self.assertEqual(len(records), 50)
        for record in records:
            gradient = self.ham.gradient_batch(x)
            x = x + step * (self.prior.grad_logpdf(x) - beta * gradient)
            np.testing.assert_allclose(np.array(record['inputs']), x.reshape(-1), atol=1e-10, rtol=0)

    def test_particles_decrease_the_cost(self):
        config = SvgdConfig(5.0, n_particles=8, n_iterations=100, step_size=1e-2)
        rng = np.random.default_rng(1)
        initial = self.prior.sample(np.random.default_rng(1), 8)
        sequence, particles = SvgdSampler(config).sample_control(self.ham, self.prior, rng)
        self.assertEqual(particles.shape, (8, 3, 1))
        self.assertLess(np.mean(self.ham.evaluate_batch(particles)), np.mean(self.ham.evaluate_batch(initial)))
        self.assertTrue(any(np.array_equal(sequence, particle) for particle in particles))

    def test_argmin_mode(self):
        config = SvgdConfig(math.inf, n_particles=4, n_iterations=20, step_size=1e-2, mode='argmin')
        sequence, particles = SvgdSampler(config).sample_control(self.ham, self.prior, np.random.default_rng(2))
        self.assertEqual(self.ham.evaluate(sequence), np.min(self.ham.evaluate_batch(particles)))

    def test_median_bandwidth(self):
        points = np.array([[0.0], [1.0], [3.0]])
        sq_distances = (points - points.T) ** 2
        self.assertAlmostEqual(SvgdSampler.median_bandwidth(sq_distances), 4.0 / (2.0 * math.log(4.0)))
        self.assertEqual(SvgdSampler.median_bandwidth(np.zeros((1, 1))), 1.0)

    def test_repulsion(self):
        sampler = SvgdSampler(SvgdConfig(1.0, n_particles=2, bandwidth=1.0))
        particles = np.array([[-0.1], [0.1]])
        direction = sampler.stein_direction(particles, np.zeros((2, 1)))
        self.assertLess(direction[0, 0], 0.0)
        self.assertGreater(direction[1, 0], 0.0)

    def test_non_finite_score(self):
        ham = TrajectoryHamiltonian(self.system, 0, np.array([1.0]),
                                    gradient=lambda t, x, seqs: np.full(seqs.shape, np.nan))
        with self.assertRaises(SteinDivergenceError) as context:
            SvgdSampler(SvgdConfig(1.0, n_particles=2, n_iterations=3)).sample_control(ham, self.prior,
                                                                                      np.random.default_rng(0))
        self.assertEqual(context.exception.iteration, 0)

    def test_overshoot(self):
        # a gradient pointing uphill cannot be fixed by halving the step
        ham = TrajectoryHamiltonian(self.system, 0, np.array([1.0]),
                                    gradient=lambda t, x, seqs: -1e3 * np.ones(seqs.shape))
        config = SvgdConfig(1.0, n_particles=1, n_iterations=3, step_size=1.0)
        with self.assertRaises(SteinDivergenceError):
            SvgdSampler(config).sample_control(ham, self.prior, np.random.default_rng(0))

    def test_invalid_config(self):
        for kwargs in ({'n_particles': 0}, {'step_size': 0.0}, {'bandwidth': -1.0}, {'optimizer': 'adam'},
                       {'mode': 'best'}):
            with self.assertRaises(ValueError):
                SvgdConfig(1.0, **kwargs)
        with self.assertRaises(ValueError):
            SvgdConfig(0.0)

    def test_for_trial(self):
        sampler = SvgdSampler(SvgdConfig(1.0))
        self.assertIs(sampler.for_trial(3), sampler)
        traced = SvgdSampler(SvgdConfig(1.0, trace_path=os.path.join('out', 'trace.jsonl')))
        copy = traced.for_trial(3)
        self.assertEqual(copy.config.trace_path, os.path.join('out', 'trace_trial_3.jsonl'))
        self.assertEqual(traced.config.trace_path, os.path.join('out', 'trace.jsonl'))
        self.assertEqual(copy.config.beta, 1.0)

if __name__ == '__main__':
    unittest.main()
