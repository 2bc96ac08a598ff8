import unittest

import numpy as np

from src.core.Errors import UnsupportedPolicyError
from src.dp.DpAudit import DpAudit
from src.dp.DpCertificate import DpCertificate
from src.dp.StateMetric import StateMetric
from src.gibbs.FiniteGibbsPolicy import FiniteGibbsPolicy
from src.gibbs.Gaussian import Gaussian
from src.gibbs.SampledGibbsPolicy import SampledGibbsPolicy
from src.lqg.BrLqgSolver import BrLqgSolver
from test.core.Utils import Utils


class TestDpAudit(unittest.TestCase):
    def setUp(self):
        # |H(x, u) - H(x', u)| <= |x - x'| on every input: exponential mechanism with level 1
        self.policy = FiniteGibbsPolicy.uniform([-1.0, 0.0, 1.0], lambda x, u: u * float(x[0]), 1.0)
        self.pairs = [(0, np.array([1.0]), np.array([0.0])), (0, np.array([-0.5]), np.array([0.5]))]

    def test_exponential_mechanism_holds(self):
        certificate = DpCertificate.single_step(1.0, 0, 1.0, metric=StateMetric.euclidean())
        report = DpAudit.empirical_dp_audit(self.policy, self.pairs, certificate, 50, np.random.default_rng(0))
        self.assertEqual(report.n_triples, 100)
        self.assertEqual(report.n_violations, 0)
        self.assertEqual(report.in_set_fraction, 1.0)
        self.assertGreaterEqual(report.worst_slack, 0.0)

    def test_small_level_is_violated(self):
        certificate = DpCertificate.single_step(1.0, 0, 0.1, metric=StateMetric.euclidean())
        report = DpAudit.empirical_dp_audit(self.policy, self.pairs[:1], certificate, 50, np.random.default_rng(0))
        self.assertGreater(report.n_violations, 0)
        self.assertLess(report.worst_slack, 0.0)
        self.assertEqual(report.worst_triple[3], -1.0)

    def test_action_set(self):
        certificate = DpCertificate.single_step(1.0, 0, 1.0, metric=StateMetric.euclidean())
        report = DpAudit.empirical_dp_audit(self.policy, self.pairs, certificate, 50, np.random.default_rng(1),
                                            input_level=lambda t, u: 0.5 if u <= 0 else 2.0)
        self.assertLess(report.in_set_fraction, 1.0)
        self.assertEqual(report.n_triples, 100)

    def test_lqg_identical_pairs(self):
        problem = Utils.random_problem(np.random.default_rng(3), n=2, m=1, horizon=3)
        policy = BrLqgSolver.solve(problem, 1.0)
        certificate = DpCertificate(1.0, [1.0, 1.0, 1.0])
        x = np.array([0.3, -0.2])
        report = DpAudit.empirical_dp_audit(policy, [(t, x, x) for t in range(3)], certificate, 10,
                                            np.random.default_rng(2))
        self.assertEqual(report.n_triples, 30)
        self.assertEqual(report.violation_fraction, 0.0)

    def test_lqg_log_ratio(self):
        problem = Utils.random_problem(np.random.default_rng(3), n=2, m=1, horizon=3)
        policy = BrLqgSolver.solve(problem, 1.0)
        x, x_hat = np.array([0.3, -0.2]), np.array([0.1, 0.0])
        # a zero level makes every triple with a positive log-ratio a violation
        certificate = DpCertificate(1.0, [0.0, 0.0, 0.0])
        report = DpAudit.empirical_dp_audit(policy, [(0, x, x_hat)], certificate, 200, np.random.default_rng(4))
        rng = np.random.default_rng(4)
        expected = 0
        for _ in range(200):
            u = policy.sample(0, x, rng)
            if policy.log_density(0, x, u) - policy.log_density(0, x_hat, u) > DpAudit.TOLERANCE:
                expected += 1
        self.assertEqual(report.n_violations, expected)

    def test_composed_audit(self):
        certificate = DpCertificate(1.0, [1.0, 1.0], metric=StateMetric.euclidean())
        sequences = [(np.array([[1.0], [0.5], [0.0]]), np.array([[0.0], [0.0]]))]
        report = DpAudit.composed_audit(self.policy, sequences, certificate, 40,
                                        np.random.default_rng(5))
        self.assertEqual(report.n_triples, 40)
        self.assertEqual(report.n_violations, 0)

        tight = DpCertificate(1.0, [0.05, 0.05], metric=StateMetric.euclidean())
        report = DpAudit.composed_audit(self.policy, sequences, tight, 40, np.random.default_rng(5))
        self.assertGreater(report.n_violations, 0)

    def test_sampled_policy_is_unsupported(self):
        policy = SampledGibbsPolicy(Gaussian(np.zeros(1), np.eye(1)), lambda x, u: float(u @ u), 1.0, n_samples=64)
        with self.assertRaises(UnsupportedPolicyError):
            DpAudit.log_density_of(policy)

    def test_argmin_is_unsupported(self):
        policy = FiniteGibbsPolicy.uniform([0.0, 1.0], lambda x, u: u, float('inf'))
        with self.assertRaises(UnsupportedPolicyError):
            DpAudit.log_density_of(policy)

if __name__ == '__main__':
    unittest.main()
