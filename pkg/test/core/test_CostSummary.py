import math
import unittest

import numpy as np

from src.core.CostSummary import CostSummary


class TestCostSummary(unittest.TestCase):
    def test_failures_are_excluded(self):
        summary = CostSummary.from_costs([1.0, 2.0, math.inf])
        self.assertAlmostEqual(summary.mean, 1.5)
        self.assertAlmostEqual(summary.std, np.std([1.0, 2.0], ddof=1))
        self.assertAlmostEqual(summary.failure_fraction, 1.0 / 3.0)
        self.assertEqual(summary.n_trials, 3)
        self.assertEqual(summary.n_finite, 2)
        self.assertTrue(summary.mean_defined)

    def test_every_trial_failed(self):
        summary = CostSummary.from_costs([math.inf, math.inf])
        self.assertFalse(summary.mean_defined)
        self.assertTrue(math.isnan(summary.mean))
        self.assertEqual(summary.failure_fraction, 1.0)
        self.assertTrue(math.isnan(summary.standard_error()))

    def test_single_trial(self):
        summary = CostSummary.from_costs([4.0])
        self.assertEqual(summary.std, 0.0)
        self.assertEqual(summary.standard_error(), 0.0)

    def test_empty(self):
        with self.assertRaises(ValueError):
            CostSummary.from_costs([])

    def test_to_dict(self):
        self.assertEqual(CostSummary.from_costs([1.0, 3.0]).to_dict(),
                         {'mean': 2.0, 'std': math.sqrt(2.0), 'n_trials': 2, 'failure_fraction': 0.0})

if __name__ == '__main__':
    unittest.main()
