#!/usr/lib/brdp/environment/bin/python
import csv
import os

from src.bench.SweepResult import SweepResult, SweepRow

"""
    CSV export of a sweep for external plotting. Reals are written with 17 significant digits so a re-parse gives the
    same 64-bit values; inf / nan are spelled "inf" / "nan", flags "true" / "false".
"""
class PlotData:
    COLUMNS = ['experiment', 'beta', 'sigma2', 'mean_cost', 'std_cost', 'failure_fraction', 'n_trials',
               'is_beta_star', 'bound']
    BASELINE_COLUMNS = ['experiment', 'beta', 'sigma2', 'mean_cost', 'baseline_mean_cost', 'mean_difference',
                        'difference_ci95', 'n_pairs']

    @staticmethod
    def format_value(value):
        if isinstance(value, bool):
            return 'true' if value else 'false'
        if isinstance(value, float):
            return '%.17g' % value
        return str(value)

    @staticmethod
    def filepath(directory, experiment, suffix=''):
        return os.path.join(directory, experiment + suffix + '.csv')

    """
        Write <directory>/<experiment>.csv and return its path. An empty sweep gives a header-only file.
    """
    @staticmethod
    def emit_plotdata(result, directory):
        filepath = PlotData.filepath(directory, result.experiment)
        PlotData._write(filepath, PlotData.COLUMNS, [row.to_dict() for row in result.rows])
        return filepath

    @staticmethod
    def emit_baseline(experiment, comparisons, directory):
        filepath = PlotData.filepath(directory, experiment, '_baseline')
        PlotData._write(filepath, PlotData.BASELINE_COLUMNS, comparisons)
        return filepath

    @staticmethod
    def _write(filepath, columns, records):
        with open(filepath, 'w', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(columns)
            for record in records:
                writer.writerow([PlotData.format_value(record[column]) for column in columns])

    @staticmethod
    def parse(filepath):
        with open(filepath, 'r', newline='') as f:
            reader = csv.DictReader(f)
            records = list(reader)
        experiment = records[0]['experiment'] if records else os.path.splitext(os.path.basename(filepath))[0]
        result = SweepResult(experiment)
        for record in records:
            result.add(SweepRow(experiment=record['experiment'], beta=float(record['beta']),
                                sigma2=float(record['sigma2']), mean_cost=float(record['mean_cost']),
                                std_cost=float(record['std_cost']), failure_fraction=float(record['failure_fraction']),
                                n_trials=int(record['n_trials']), is_beta_star=record['is_beta_star'] == 'true',
                                bound=float(record['bound'])))
        return result
