#!/usr/lib/brdp/environment/bin/python
import importlib
import json
import logging
import math
import os
from functools import wraps

import inflection
import numpy as np

from src.bench.ExperimentConfig import ExperimentConfig
from src.bench.PlotData import PlotData
from src.bench.PolicyCache import PolicyCache
from src.bench.SummaryReport import SummaryReport
from src.bench.SweepResult import SweepResult, SweepRow
from src.core.CostSummary import CostSummary
from src.core.Errors import BrdpError, CellError, ConfigurationError, NumericalError
from src.core.Rollout import Rollout
from src.core.Trajectory import Trajectory

"""
    Custom decorator to identify the (beta, sigma2) cell of any error raised while it is computed.
"""
def cell_errors(run_cell):
    def _decorator(experiment, beta, sigma2, *args, **kwargs):
        try:
            return run_cell(experiment, beta, sigma2, *args, **kwargs)
        except CellError:
            raise
        except BrdpError as e:
            raise CellError(experiment.experiment_id, beta, sigma2, e)
        except np.linalg.LinAlgError as e:
            raise CellError(experiment.experiment_id, beta, sigma2, NumericalError(str(e)))
        except ValueError as e:
            raise CellError(experiment.experiment_id, beta, sigma2, ConfigurationError(str(e)))

    return wraps(run_cell)(_decorator)


"""
    A sweep over (beta, sigma2) cells. Subclasses build the system, the estimator and the policy of a cell, and can
    certify it (DP certificate + robustness bound). All cells share the same per-trial streams (seed of the
    configuration), so the cells of one sigma2 are paired.
    The subclass of an experiment id is found by name: "lqg-quadrotor" -> src.bench.LqgQuadrotorExperiment.
"""
class Experiment:
    logger = logging.getLogger('Experiment')

    def __init__(self, config):
        self.config = config
        self.experiment_id = config.experiment_id
        self.cache = PolicyCache(config.configuration)

    @staticmethod
    def class_name(experiment_id):
        return inflection.camelize(inflection.underscore(experiment_id)) + 'Experiment'

    @staticmethod
    def for_config(config):
        name = Experiment.class_name(config.experiment_id)
        try:
            module = importlib.import_module('src.bench.' + name)
        except ImportError:
            raise ConfigurationError('No implementation for the experiment "' + config.experiment_id + '".')
        return getattr(module, name)(config)

    def system(self):
        raise NotImplementedError

    def estimator(self, sigma2):
        raise NotImplementedError

    def policy(self, beta):
        raise NotImplementedError

    """
        (certificate, robustness report) of a cell, or None when the experiment cannot certify it
    """
    def certify(self, beta, sigma2, policy, estimator):
        return None

    """
        Extra per-cell values for the JSON output
    """
    def describe_cell(self, trajectories):
        return {}

    @cell_errors
    def run_cell(self, beta, sigma2):
        system = self.system()
        estimator = self.estimator(sigma2)
        policy = self.policy(beta)
        trajectories = Rollout.run_many(system, policy, estimator, self.config.n_trials, self.config.seed,
                                        threads=self.config.threads)
        costs = np.array([trajectory.total_cost for trajectory in trajectories])
        summary = CostSummary.from_costs(costs)
        details = dict(self.describe_cell(trajectories))

        bound = math.nan
        if self.config.certify() and math.isfinite(beta):
            certified = self.certify(beta, sigma2, policy, estimator)
            if certified is not None:
                certificate, report = certified
                bound = report.bound
                details['certificate'] = certificate.to_dict()
                details['robustness'] = report.to_dict()

        Experiment.logger.info(self.experiment_id + ' beta=' + str(beta) + ' sigma2=' + str(sigma2) + ': mean cost '
                               + str(summary.mean) + ', failures ' + str(summary.failure_fraction))
        row = SweepRow(experiment=self.experiment_id, beta=beta, sigma2=sigma2, mean_cost=summary.mean,
                       std_cost=summary.std, failure_fraction=summary.failure_fraction, n_trials=summary.n_trials,
                       bound=bound)
        return row, details, costs, trajectories[:self.config.trajectory_samples]

    """
        Run every cell, flag beta* per sigma2. Returns (SweepResult, sampled trajectories per cell).
    """
    def run(self):
        result = SweepResult(self.experiment_id)
        samples = {}
        for beta, sigma2 in self.config.cells():
            row, details, costs, trajectories = self.run_cell(beta, sigma2)
            result.add(row, details=details, costs=costs)
            samples[(beta, sigma2)] = trajectories
        result.mark_beta_star()
        return result, samples

    """
        Paired comparison of every finite beta with the beta = inf baseline of the same sigma2. The baseline is run
        when the sweep did not include it.
    """
    def compare_baseline(self, result):
        comparisons = []
        for sigma2 in result.sigma2_values():
            key = (math.inf, sigma2)
            if key not in result.costs:
                row, _, costs, _ = self.run_cell(math.inf, sigma2)
                result.costs[key] = costs
            baseline = result.costs[key]
            for row in result.rows_for(sigma2):
                if math.isinf(row.beta):
                    continue
                difference, half_width, n_pairs = Experiment.paired_difference(result.costs[row.key()], baseline)
                comparisons.append({
                    'experiment': self.experiment_id,
                    'beta': row.beta,
                    'sigma2': sigma2,
                    'mean_cost': row.mean_cost,
                    'baseline_mean_cost': CostSummary.from_costs(baseline).mean,
                    'mean_difference': difference,
                    'difference_ci95': half_width,
                    'n_pairs': n_pairs,
                })
        return comparisons

    """
        Mean and 95% half-width of costs - baseline over the trials finite in both runs
    """
    @staticmethod
    def paired_difference(costs, baseline):
        costs = np.asarray(costs, dtype=float)
        baseline = np.asarray(baseline, dtype=float)
        finite = np.isfinite(costs) & np.isfinite(baseline)
        differences = costs[finite] - baseline[finite]
        if differences.size == 0:
            return math.nan, math.nan, 0
        if differences.size == 1:
            return float(differences[0]), math.inf, 1
        half_width = 1.959963984540054 * float(np.std(differences, ddof=1)) / math.sqrt(differences.size)
        return float(np.mean(differences)), half_width, int(differences.size)

    """
        Write the CSV, JSON, trajectory samples, baseline table and summary of a sweep in the output directory
    """
    def persist(self, result, samples, comparisons=None):
        directory = self.config.output_directory
        try:
            os.makedirs(directory, exist_ok=True)
            marker = os.path.join(directory, '.write-test')
            with open(marker, 'w') as f:
                f.write('')
            os.remove(marker)
        except OSError as e:
            raise ConfigurationError('Output directory "' + str(directory) + '" is not writable: ' + str(e))

        paths = [PlotData.emit_plotdata(result, directory)]

        json_path = os.path.join(directory, self.experiment_id + '.json')
        with open(json_path, 'w') as f:
            json.dump({'config': self.config.to_dict(), 'result': result.to_dict()}, f, indent=2, sort_keys=True)
        paths.append(json_path)

        trajectories_path = os.path.join(directory, self.experiment_id + '_trajectories.jsonl')
        if os.path.exists(trajectories_path):
            os.remove(trajectories_path)
        for key in sorted(samples):
            Trajectory.dump(samples[key], trajectories_path)
        paths.append(trajectories_path)

        if comparisons is not None:
            paths.append(PlotData.emit_baseline(self.experiment_id, comparisons, directory))
        paths.append(SummaryReport.render(result, comparisons, os.path.join(directory, 'summary.md')))
        Experiment.logger.info('Results written to ' + directory)
        return paths

    """
        Full pipeline of the CLI: sweep, baseline comparison (when the sweep contains finite betas), persistence
    """
    @staticmethod
    def run_experiment(configuration):
        config = ExperimentConfig(configuration)
        experiment = Experiment.for_config(config)
        result, samples = experiment.run()
        comparisons = experiment.compare_baseline(result) if config.betas else None
        experiment.persist(result, samples, comparisons)
        return result
