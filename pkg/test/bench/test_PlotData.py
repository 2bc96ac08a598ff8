import math
import os
import tempfile
import unittest

from src.bench.PlotData import PlotData
from src.bench.SweepResult import SweepResult, SweepRow


class TestPlotData(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp(prefix='brdp-plot-')

    def test_emit_and_parse(self):
        result = SweepResult('lqg-quadrotor')
        result.add(SweepRow('lqg-quadrotor', 0.1, 0.0, 1.0 / 3.0, 0.25, 0.0, 40, bound=12.5))
        result.add(SweepRow('lqg-quadrotor', math.inf, 0.0, 2.0, 0.5, 0.0, 40, is_beta_star=True))
        result.add(SweepRow('lqg-quadrotor', 10.0, 0.4, math.nan, math.nan, 1.0, 40, bound=math.inf))
        filepath = PlotData.emit_plotdata(result, self.directory)
        self.assertEqual(filepath, os.path.join(self.directory, 'lqg-quadrotor.csv'))

        with open(filepath) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], ','.join(PlotData.COLUMNS))
        self.assertIn('nan', lines[2])
        self.assertTrue(lines[3].startswith('lqg-quadrotor,inf,'))
        self.assertIn('true', lines[3])

        parsed = PlotData.parse(filepath)
        self.assertEqual(parsed.rows, result.rows)
        self.assertEqual(parsed.rows[0].mean_cost, 1.0 / 3.0)

    def test_empty_sweep(self):
        filepath = PlotData.emit_plotdata(SweepResult('double-slit'), self.directory)
        with open(filepath) as f:
            self.assertEqual(f.read(), ','.join(PlotData.COLUMNS) + '\n')
        parsed = PlotData.parse(filepath)
        self.assertEqual(parsed.experiment, 'double-slit')
        self.assertEqual(parsed.rows, [])

    def test_baseline(self):
        comparison = {'experiment': 'double-slit', 'beta': 10.0, 'sigma2': 0.0, 'mean_cost': 1.0,
                      'baseline_mean_cost': 1.5, 'mean_difference': -0.5, 'difference_ci95': 0.1, 'n_pairs': 3}
        filepath = PlotData.emit_baseline('double-slit', [comparison], self.directory)
        self.assertTrue(filepath.endswith('double-slit_baseline.csv'))
        with open(filepath) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[1], 'double-slit,10,0,1,1.5,-0.5,0.10000000000000001,3')

    def test_format_value(self):
        self.assertEqual(PlotData.format_value(False), 'false')
        self.assertEqual(PlotData.format_value(math.nan), 'nan')
        self.assertEqual(PlotData.format_value(-math.inf), '-inf')
        self.assertEqual(PlotData.format_value(7), '7')

if __name__ == '__main__':
    unittest.main()
