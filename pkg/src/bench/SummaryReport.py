#!/usr/lib/brdp/environment/bin/python
import math
import os

from jinja2 import Environment, FileSystemLoader, StrictUndefined

"""
    Markdown summary of a sweep: one table per sigma2 with the measured costs, the beta* flag and the bounds, then the
    baseline comparison when there is one.
"""
class SummaryReport:
    TEMPLATE_DIRECTORY = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'templates')
    TEMPLATE = 'summary.md.j2'

    @staticmethod
    def number(value):
        if value is None:
            return ''
        if isinstance(value, float):
            if math.isnan(value):
                return '-'
            if math.isinf(value):
                return 'inf' if value > 0 else '-inf'
            return '%.6g' % value
        return str(value)

    @staticmethod
    def environment():
        environment = Environment(loader=FileSystemLoader(SummaryReport.TEMPLATE_DIRECTORY), undefined=StrictUndefined,
                                  trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
        environment.filters['number'] = SummaryReport.number
        return environment

    @staticmethod
    def tables(result):
        tables = []
        for sigma2 in result.sigma2_values():
            bound_star = result.beta_star_bound.get(sigma2)
            tables.append({
                'sigma2': sigma2,
                'rows': result.rows_for(sigma2),
                'beta_star': next((row.beta for row in result.rows_for(sigma2) if row.is_beta_star), None),
                'beta_star_bound': None if bound_star is None else bound_star[0],
            })
        return tables

    """
        Render the summary of a SweepResult (and the baseline comparisons, if any) to filepath
    """
    @staticmethod
    def render(result, comparisons, filepath):
        template = SummaryReport.environment().get_template(SummaryReport.TEMPLATE)
        text = template.render(experiment=result.experiment, tables=SummaryReport.tables(result),
                               comparisons=comparisons or [])
        with open(filepath, 'w') as f:
            f.write(text)
        return filepath
