import unittest

import numpy as np

from src.dp.Lipschitz import Lipschitz
from src.dp.StateMetric import StateMetric
from src.lqg.QuadraticHamiltonian import QuadraticHamiltonian


class TestLipschitz(unittest.TestCase):
    def setUp(self):
        rng = np.random.default_rng(4)
        S = rng.standard_normal((3, 3))
        self.ham = QuadraticHamiltonian(W=S @ S.T, G=rng.standard_normal((3, 2)), g=rng.standard_normal(3),
                                        M=np.eye(2), h=np.zeros(2), c=1.0)
        self.u = np.array([0.5, -1.0])

    def sampled(self, radius, n_pairs):
        return Lipschitz.lipschitz_level(lambda x, u: self.ham.evaluate(x, u), self.u, radius, n_pairs=n_pairs,
                                         metric=StateMetric.quadratic(), rng=np.random.default_rng(8), state_dim=3)

    def test_exact_level(self):
        estimate = Lipschitz.lipschitz_level(self.ham, self.u, 10.0)
        self.assertTrue(estimate.exact)
        self.assertEqual(estimate.n_pairs, 0)
        expected = max(np.linalg.norm(self.ham.W, 'fro'), np.linalg.norm(self.ham.G @ self.u + self.ham.g))
        self.assertAlmostEqual(estimate.value, expected, places=12)

    def test_exact_level_bounds_the_ratios(self):
        rng = np.random.default_rng(5)
        level = float(self.ham.lipschitz_level(self.u))
        for _ in range(200):
            x, y = 3.0 * rng.standard_normal(3), 3.0 * rng.standard_normal(3)
            difference = abs(float(self.ham(x, self.u)) - float(self.ham(y, self.u)))
            self.assertLessEqual(difference, level * float(StateMetric.rho_quadratic(x, y)) + 1e-9)

    def test_sampled_is_a_lower_estimate(self):
        estimate = self.sampled(5.0, 500)
        self.assertFalse(estimate.exact)
        self.assertGreater(estimate.n_pairs, 0)
        self.assertGreater(estimate.value, 0.0)
        self.assertLessEqual(estimate.value, float(self.ham.lipschitz_level(self.u)) + 1e-9)

    def test_sampled_is_nested(self):
        self.assertLessEqual(self.sampled(5.0, 200).value, self.sampled(5.0, 400).value)
        self.assertLessEqual(self.sampled(1.0, 400).value, self.sampled(5.0, 400).value)
        self.assertLessEqual(self.sampled(1.0, 400).n_pairs, self.sampled(5.0, 400).n_pairs)

    def test_empty_region(self):
        # every sampled offset is longer than 1e-3
        estimate = self.sampled(1e-6, 100)
        self.assertEqual(estimate.value, 0.0)
        self.assertEqual(estimate.n_pairs, 0)

if __name__ == '__main__':
    unittest.main()
