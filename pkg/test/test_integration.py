import csv
import os
import subprocess
import sys
import tempfile
import unittest

from src.core.Configuration import Configuration
from test.core.Utils import Utils

"""
    The purpose of this class is not to test the experiments themselves, but rather run the command line end-to-end on
    the small test configurations: exit codes, output files, and byte-identical CSVs whatever the number of threads.
"""
class TestIntegration(unittest.TestCase):
    def setUp(self):
        self.out = tempfile.mkdtemp(prefix='brdp-integration-')
        self.env = dict(os.environ)
        self.env.pop(Configuration.THREADS_ENV, None)

    def execute(self, *arguments, env=None):
        command = [sys.executable, '-m', 'src.main'] + list(arguments)
        return subprocess.run(command, stdout=subprocess.PIPE, stderr=subprocess.STDOUT, universal_newlines=True,
                              env=env or self.env)

    def read(self, filename, directory=None):
        with open(os.path.join(directory or self.out, filename)) as f:
            return f.read()

    def test_run(self):
        result = self.execute('run', '--config', 'test/resources/conf/lqg-quadrotor.conf', '--out', self.out)
        self.assertEqual(result.returncode, 0, result.stdout)
        for filename in ('lqg-quadrotor.csv', 'lqg-quadrotor.json', 'lqg-quadrotor_trajectories.jsonl',
                         'lqg-quadrotor_baseline.csv', 'summary.md'):
            self.assertTrue(os.path.isfile(os.path.join(self.out, filename)), filename)
        rows = list(csv.DictReader(self.read('lqg-quadrotor.csv').splitlines()))
        self.assertEqual(len(rows), 6)
        self.assertEqual(sum(row['is_beta_star'] == 'true' for row in rows), 2)

    def test_sweep(self):
        result = self.execute('sweep', '--config', 'test/resources/conf/lqg-quadrotor.conf', '--out', self.out,
                              '--experiment', 'lqg-quadrotor', '--beta', '1:100:3', '--sigma', '0,0.2',
                              '--trials', '5')
        self.assertEqual(result.returncode, 0, result.stdout)
        rows = list(csv.DictReader(self.read('lqg-quadrotor.csv').splitlines()))
        self.assertEqual(len(rows), 8)
        self.assertEqual({row['sigma2'] for row in rows}, {'0', '0.20000000000000001'})
        self.assertTrue(all(row['n_trials'] == '5' for row in rows))

    def test_double_slit(self):
        result = self.execute('run', '--config', 'test/resources/conf/double-slit.conf', '--out', self.out)
        self.assertEqual(result.returncode, 0, result.stdout)
        self.assertEqual(len(self.read('double-slit_trajectories.jsonl').splitlines()), 3)

    def test_threads_give_identical_csv(self):
        serial = self.execute('run', '--config', 'test/resources/conf/lqg-quadrotor.conf', '--out', self.out,
                              '--threads', '1')
        self.assertEqual(serial.returncode, 0, serial.stdout)
        parallel_out = tempfile.mkdtemp(prefix='brdp-integration-')
        env = dict(self.env)
        env[Configuration.THREADS_ENV] = '4'
        parallel = self.execute('run', '--config', 'test/resources/conf/lqg-quadrotor.conf', '--out', parallel_out,
                                env=env)
        self.assertEqual(parallel.returncode, 0, parallel.stdout)
        self.assertEqual(self.read('lqg-quadrotor.csv'), self.read('lqg-quadrotor.csv', parallel_out))
        self.assertEqual(self.read('lqg-quadrotor_baseline.csv'),
                         self.read('lqg-quadrotor_baseline.csv', parallel_out))

    def test_seed_override(self):
        first = self.execute('run', '--config', 'test/resources/conf/double-slit.conf', '--out', self.out,
                             '--seed', '12')
        self.assertEqual(first.returncode, 0, first.stdout)
        raw = self.read('double-slit.json')
        self.assertIn('"seed": 12', raw)

    def test_configuration_errors(self):
        for filename in ('invalid.conf', 'no-seed.conf', 'missing.conf'):
            result = self.execute('run', '--config', 'test/resources/conf/' + filename, '--out', self.out)
            self.assertEqual(result.returncode, 2, filename + ': ' + result.stdout)

    def test_quadrotor_configuration_error(self):
        filepath = Utils.write_configuration(['experiment.id = lqg-quadrotor', 'sweep.beta = 1:10:2',
                                              'sweep.sigma2 = [0.0]', 'run.n_trials = 2', 'run.seed = 1',
                                              'quadrotor.x0_var = [-1, 0, 0, 0, 0, 0]'])
        result = self.execute('run', '--config', filepath, '--out', self.out)
        self.assertEqual(result.returncode, 2, result.stdout)

    def test_numerical_error(self):
        # the hover linearization fails its finite-difference check at this gravity
        filepath = Utils.write_configuration(['experiment.id = lqg-quadrotor', 'sweep.beta = 1:10:2',
                                              'sweep.sigma2 = [0.0]', 'run.n_trials = 2', 'run.seed = 1',
                                              'quadrotor.gravity = 1e12'])
        result = self.execute('run', '--config', filepath, '--out', self.out)
        self.assertEqual(result.returncode, 3, result.stdout)

if __name__ == '__main__':
    unittest.main()
