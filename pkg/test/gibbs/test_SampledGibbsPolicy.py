import math
import unittest

import numpy as np

from src.core.Errors import UnreliableEstimateError
from src.gibbs.Gaussian import Gaussian
from src.gibbs.QuadraticGibbsPolicy import QuadraticGibbsPolicy
from src.gibbs.SampledGibbsPolicy import SampledGibbsPolicy


class TestSampledGibbsPolicy(unittest.TestCase):
    def setUp(self):
        self.prior = Gaussian([0.0], [[1.0]])
        self.beta = 0.5
        self.exact = QuadraticGibbsPolicy(self.prior, [[1.0]], lambda x: np.array([x]), lambda x: 0.0, self.beta)
        self.obj = SampledGibbsPolicy(self.prior, self.exact.evaluate, self.beta, n_samples=20000, seed=1)

    def test_free_energy_close_to_closed_form(self):
        report = self.obj.free_energy(0.5)
        exact = self.exact.free_energy(0.5)
        self.assertLess(abs(report.F - exact.F), 5.0 * report.standard_error + 1e-9)
        self.assertGreater(report.tolerance, 0.0)
        self.assertLess(abs(report.kl - exact.kl), 0.02)

    def test_deterministic_in_x(self):
        self.assertEqual(self.obj.log_partition_function(0.3), self.obj.log_partition_function(0.3))

    def test_batched(self):
        def hamiltonian(x, u):
            return 0.5 * u[:, 0] ** 2 + x * u[:, 0]

        batched = SampledGibbsPolicy(self.prior, hamiltonian, self.beta, n_samples=20000, seed=1, batched=True)
        self.assertAlmostEqual(batched.log_partition_function(0.5), self.obj.log_partition_function(0.5), places=10)

    def test_log_density(self):
        u = np.array([0.2])
        self.assertAlmostEqual(self.obj.log_density(0.5, u), self.exact.log_density(0.5, u), delta=0.02)

    def test_partition_standard_error(self):
        error = self.obj.partition_standard_error(0.5)
        self.assertGreater(error, 0.0)
        self.assertLess(error, 0.05 * math.exp(self.obj.log_partition_function(0.5)))

    def test_unreliable_estimate(self):
        policy = SampledGibbsPolicy(self.prior, lambda x, u: 1e3 * float(u[0]) ** 2, 1e6, n_samples=500, seed=0)
        with self.assertRaises(UnreliableEstimateError):
            policy.free_energy(0.0)

    def test_variational_check(self):
        free_energy, value = self.obj.variational_check(0.5, Gaussian([1.0], [[0.5]]))
        self.assertLess(free_energy, value)

    def test_modes_are_rejected(self):
        with self.assertRaises(ValueError):
            SampledGibbsPolicy(self.prior, self.exact.evaluate, 0.0)
        with self.assertRaises(ValueError):
            SampledGibbsPolicy(self.prior, self.exact.evaluate, math.inf)

    def test_sample(self):
        u = self.obj.sample(0, 0.5, np.random.default_rng(0))
        self.assertEqual(u.shape, (1,))

if __name__ == '__main__':
    unittest.main()
