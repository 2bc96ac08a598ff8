#!/usr/lib/brdp/environment/bin/python

import logging
import sys

from cement import App, Controller, ex

from src.bench.Experiment import Experiment
from src.core.Configuration import Configuration
from src.core.Errors import BrdpError, ConfigurationError

"""
    Command line of the benchmarks:
        python -m src.main run --config conf/brdp.conf [--out DIR] [--threads N] [--seed S]
        python -m src.main sweep --experiment lqg-quadrotor --beta 1e-1:1e3:20 --sigma 0,0.2,0.4 --trials 1000
    Exit status: 0 on success, 2 for a configuration error, 3 for a numerical failure.
"""
COMMON_ARGUMENTS = [
    (['--config'], {'help': 'configuration file (default: ' + Configuration.FILEPATH + ')', 'dest': 'config',
                    'default': None}),
    (['--out'], {'help': 'output directory, overrides output.directory', 'dest': 'out', 'default': None}),
    (['--threads'], {'help': 'worker threads, ' + Configuration.THREADS_ENV + ' wins over this value',
                     'dest': 'threads', 'type': int, 'default': None}),
    (['--seed'], {'help': 'seed of the per-trial streams, overrides run.seed', 'dest': 'seed', 'type': int,
                  'default': None}),
]


class BrdpController(Controller):
    logger = logging.getLogger('BrdpController')

    class Meta:
        label = 'base'
        description = 'Bounded-rational controllers with differential-privacy certificates'

    def _default(self):
        self.app.args.print_help()

    @ex(label='run', help='run the sweep described by a configuration file', arguments=COMMON_ARGUMENTS)
    def run_config(self):
        configuration = BrdpController.load_configuration(self.app.pargs)
        self.app.result = Experiment.run_experiment(configuration)

    @ex(label='sweep', help='run a sweep given on the command line, other values come from the configuration file',
        arguments=COMMON_ARGUMENTS + [
            (['--experiment'], {'help': 'double-slit, lqg-quadrotor or svmpc-quadrotor', 'dest': 'experiment',
                                'required': True}),
            (['--beta'], {'help': 'log-spaced beta grid min:max:count', 'dest': 'beta', 'required': True}),
            (['--sigma'], {'help': 'comma-separated sigma2 values', 'dest': 'sigma', 'default': None}),
            (['--trials'], {'help': 'trials per cell', 'dest': 'trials', 'type': int, 'default': None}),
        ])
    def sweep(self):
        pargs = self.app.pargs
        configuration = BrdpController.load_configuration(pargs)
        configuration.set('experiment.id', pargs.experiment)
        configuration.set('sweep.beta', pargs.beta)
        if pargs.sigma is not None:
            configuration.set('sweep.sigma2', BrdpController.parse_sigma(pargs.sigma))
        if pargs.trials is not None:
            configuration.set('run.n_trials', pargs.trials)
        self.app.result = Experiment.run_experiment(configuration)

    """
        Load the configuration file, apply the command line overrides and set up the logging level
    """
    @staticmethod
    def load_configuration(pargs):
        if pargs.config is not None:
            Configuration.FILEPATH = pargs.config
        configuration = Configuration()
        if pargs.out is not None:
            configuration.set('output.directory', pargs.out)
        if pargs.threads is not None:
            configuration.set('run.threads', pargs.threads)
        if pargs.seed is not None:
            configuration.set('run.seed', pargs.seed)

        logging.getLogger().setLevel(logging.DEBUG if configuration.is_development() else logging.INFO)
        BrdpController.logger.debug('Configuration loaded from ' + configuration.filepath)
        return configuration

    @staticmethod
    def parse_sigma(text):
        value = Configuration.parse_value(text)
        if isinstance(value, list):
            return [float(v) for v in value]
        try:
            return [float(part) for part in str(value).split(',') if part.strip()]
        except ValueError:
            raise ConfigurationError('Invalid --sigma "' + text + '", expected comma-separated numbers.')


class BrdpApp(App):
    class Meta:
        label = 'brdp'
        base_controller = 'base'
        handlers = [BrdpController]
        exit_on_close = False

    result = None


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    with BrdpApp(argv=argv) as app:
        try:
            app.run()
        except BrdpError as e:
            app.log.error(e.message)
            app.exit_code = e.exit_code
    return app.exit_code


if __name__ == '__main__':
    sys.exit(main())
