import glob
import json
import math
import os
import unittest

from src.bench.SvmpcQuadrotorExperiment import SvmpcQuadrotorExperiment
from src.core.Configuration import Configuration
from src.samplers.RecedingHorizonPolicy import RecedingHorizonPolicy
from test.core.Utils import Utils


class TestSvmpcQuadrotorExperiment(unittest.TestCase):
    def setUp(self):
        self.threads_env = os.environ.pop(Configuration.THREADS_ENV, None)

    def tearDown(self):
        if self.threads_env is not None:
            os.environ[Configuration.THREADS_ENV] = self.threads_env

    def test_sampler_config(self):
        experiment = SvmpcQuadrotorExperiment(Utils.experiment_config('svmpc-quadrotor.conf'))
        config = experiment.sampler_config(100.0)
        self.assertEqual(config.n_particles, 4)
        self.assertEqual(config.n_iterations, 5)
        self.assertEqual(config.mode, 'sample')
        self.assertEqual(config.optimizer, 'adagrad')
        self.assertIsNone(config.trace_path)
        self.assertEqual(experiment.sampler_config(math.inf).mode, 'argmin')
        self.assertEqual(experiment.prior.steps, 4)
        self.assertEqual(experiment.system().name, 'nonlinear-quadrotor')
        self.assertIsInstance(experiment.policy(100.0), RecedingHorizonPolicy)

    def test_run(self):
        experiment = SvmpcQuadrotorExperiment(Utils.experiment_config('svmpc-quadrotor.conf'))
        result, _ = experiment.run()
        self.assertEqual([row.beta for row in result.rows], [100.0, math.inf])
        for row in result.rows:
            self.assertEqual(row.failure_fraction, 0.0)
            self.assertTrue(math.isfinite(row.mean_cost))
            self.assertTrue(math.isnan(row.bound))

    def test_trace(self):
        contents = []
        for threads in (1, 2):
            config = Utils.experiment_config('svmpc-quadrotor.conf', {'svgd.trace': True, 'run.threads': threads})
            experiment = SvmpcQuadrotorExperiment(config)
            experiment.run_cell(100.0, 0.2)
            paths = sorted(glob.glob(os.path.join(config.output_directory, 'svgd_trace_beta_100.0_trial_*.jsonl')))
            self.assertEqual([os.path.basename(path) for path in paths],
                             ['svgd_trace_beta_100.0_trial_0.jsonl', 'svgd_trace_beta_100.0_trial_1.jsonl'])
            trials = []
            for path in paths:
                with open(path) as f:
                    records = [json.loads(line) for line in f]
                # two plans (t = 0 and t = 2), 5 iterations of 4 particles each
                self.assertEqual(len(records), 40)
                self.assertEqual([record['t'] for record in records], [0] * 20 + [2] * 20)
                trials.append(records)
            contents.append(trials)
        self.assertEqual(contents[0], contents[1])

    def test_trace_is_reset_by_a_new_policy(self):
        config = Utils.experiment_config('svmpc-quadrotor.conf', {'svgd.trace': True})
        experiment = SvmpcQuadrotorExperiment(config)
        experiment.run_cell(100.0, 0.2)
        experiment.policy(100.0)
        self.assertEqual(glob.glob(os.path.join(config.output_directory, 'svgd_trace_*')), [])

if __name__ == '__main__':
    unittest.main()
