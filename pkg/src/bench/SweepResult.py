#!/usr/lib/brdp/environment/bin/python
import logging
import math

from src.core.Errors import UnboundedGridError
from src.dp.RobustnessBound import RobustnessBound

"""
    One (beta, sigma2) cell of a sweep. bound is nan when the cell was not certified.
"""
class SweepRow:
    def __init__(self, experiment, beta, sigma2, mean_cost, std_cost, failure_fraction, n_trials, is_beta_star=False,
                 bound=math.nan):
        self.experiment = experiment
        self.beta = float(beta)
        self.sigma2 = float(sigma2)
        self.mean_cost = float(mean_cost)
        self.std_cost = float(std_cost)
        self.failure_fraction = float(failure_fraction)
        self.n_trials = int(n_trials)
        self.is_beta_star = bool(is_beta_star)
        self.bound = float(bound)

    def key(self):
        return self.beta, self.sigma2

    def to_dict(self):
        return {
            'experiment': self.experiment,
            'beta': self.beta,
            'sigma2': self.sigma2,
            'mean_cost': self.mean_cost,
            'std_cost': self.std_cost,
            'failure_fraction': self.failure_fraction,
            'n_trials': self.n_trials,
            'is_beta_star': self.is_beta_star,
            'bound': self.bound,
        }

    def __eq__(self, other):
        if not isinstance(other, SweepRow):
            return NotImplemented
        return all(_same(a, b) for a, b in zip(self.to_dict().values(), other.to_dict().values()))

    def __repr__(self):
        return 'SweepRow(' + str(self.to_dict()) + ')'


def _same(a, b):
    if isinstance(a, float) and isinstance(b, float) and math.isnan(a) and math.isnan(b):
        return True
    return a == b


"""
    Rows of one experiment, kept in (beta ascending, sigma2 ascending) order. details holds per-cell data that only
    goes to the JSON output (certificates, robustness reports, passage fractions); costs holds the per-trial costs of
    every cell for the paired baseline comparison, it is never persisted.
"""
class SweepResult:
    logger = logging.getLogger('SweepResult')

    def __init__(self, experiment, rows=None):
        self.experiment = experiment
        self.rows = []
        self.details = {}
        self.costs = {}
        self.beta_star_bound = {}
        for row in rows or []:
            self.add(row)

    def add(self, row, details=None, costs=None):
        self.rows.append(row)
        self.rows.sort(key=SweepRow.key)
        if details:
            self.details[row.key()] = details
        if costs is not None:
            self.costs[row.key()] = costs

    def sigma2_values(self):
        return sorted({row.sigma2 for row in self.rows})

    def rows_for(self, sigma2):
        return [row for row in self.rows if row.sigma2 == sigma2]

    def row(self, beta, sigma2):
        for row in self.rows:
            if row.beta == beta and row.sigma2 == sigma2:
                return row
        raise KeyError((beta, sigma2))

    """
        Flag beta* per sigma2: the cells with the fewest failed trials first, then the grid argmin of their mean cost
        over the successful trials, ties toward the smaller beta. The argmin of J_off + bound is kept separately for
        the certified cells.
    """
    def mark_beta_star(self):
        for sigma2 in self.sigma2_values():
            rows = self.rows_for(sigma2)
            for row in rows:
                row.is_beta_star = False
            candidates = [row for row in rows if math.isfinite(row.mean_cost)]
            if not candidates:
                SweepResult.logger.warning('No finite mean cost for sigma2=' + str(sigma2) + ', no beta* flagged.')
                continue
            fewest = min(row.failure_fraction for row in candidates)
            candidates = [row for row in candidates if row.failure_fraction == fewest]
            beta_star, _ = RobustnessBound.optimize_beta([row.beta for row in candidates],
                                                         [row.mean_cost for row in candidates])
            for row in rows:
                row.is_beta_star = row.beta == beta_star

            certified = [row for row in rows if not math.isnan(row.bound)]
            if certified:
                try:
                    self.beta_star_bound[sigma2] = RobustnessBound.optimize_beta(
                        [row.beta for row in certified],
                        [self.offline_cost(row) + row.bound for row in certified])
                except UnboundedGridError:
                    SweepResult.logger.info('Every bound is infinite for sigma2=' + str(sigma2) + '.')

    def offline_cost(self, row):
        report = self.details.get(row.key(), {}).get('robustness')
        return report['j_off']['mean'] if report else row.mean_cost

    def to_dict(self):
        return {
            'experiment': self.experiment,
            'rows': [row.to_dict() for row in self.rows],
            'details': [dict(beta=key[0], sigma2=key[1], **value) for key, value in sorted(self.details.items())],
            'beta_star_bound': [{'sigma2': sigma2, 'beta': value[0], 'bound': value[1]}
                                for sigma2, value in sorted(self.beta_star_bound.items())],
        }
