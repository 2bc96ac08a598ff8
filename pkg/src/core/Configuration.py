#!/usr/lib/brdp/environment/bin/python
import json
import math
import os

import numpy as np

from src.core.Errors import ConfigurationError

"""
    Every configuration variable must be accessed through a method.
    The file is a flat list of "section.key = value" lines. Values are parsed as JSON literals when possible,
    "inf" / "-inf" are floats, anything else is kept as a string (grid specs like "1e-1:1e3:20" included).
"""
class Configuration:
    # This value can be overrided by the user
    FILEPATH = 'conf/brdp.conf'

    THREADS_ENV = 'BRDP_THREADS'

    def __init__(self, filepath=None):
        self.conf = {}
        self.load(filepath=filepath or Configuration.FILEPATH)

    """
        Read the configuration file
    """
    def load(self, filepath):
        try:
            with open(filepath, 'r') as f:
                lines = f.readlines()
        except OSError as e:
            raise ConfigurationError('Impossible to read the configuration file "' + str(filepath) + '": ' + str(e))

        self.filepath = filepath
        self.conf = {}
        for number, raw in enumerate(lines, start=1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if '=' not in line:
                raise ConfigurationError('Line ' + str(number) + ' of ' + filepath + ' is not a "key = value" pair.')
            key, value = [part.strip() for part in line.split('=', 1)]
            self.set(key, Configuration.parse_value(value))

    """
        Parse a single value of the configuration file
    """
    @staticmethod
    def parse_value(value):
        lowered = value.lower()
        if lowered in ('inf', '+inf', 'infinity'):
            return math.inf
        if lowered in ('-inf', '-infinity'):
            return -math.inf
        try:
            return json.loads(value)
        except ValueError:
            return value

    """
        Set (or override) a value. Keys have at most one dot.
    """
    def set(self, key, value):
        if key.count('.') > 1 or key.startswith('.') or key.endswith('.'):
            raise ConfigurationError('Invalid key "' + key + '": only one level of sections is allowed.')
        self.conf[key] = value

    def get(self, key, default=None):
        return self.conf.get(key, default)

    """
        Return a mandatory value, raise a ConfigurationError if it is missing
    """
    def require(self, key):
        if key not in self.conf:
            raise ConfigurationError('Missing configuration value "' + key + '".')
        return self.conf[key]

    def has(self, key):
        return key in self.conf

    """
        Return the experiment id (double-slit, lqg-quadrotor, svmpc-quadrotor)
    """
    def experiment_id(self):
        return self.require('experiment.id')

    """
        Return the finite, log-spaced beta grid given as "min:max:count"
    """
    def beta_grid(self):
        return Configuration.parse_grid(self.require('sweep.beta'))

    """
        Indicates if the sweep also contains beta = inf (LQR / argmin-MPC baseline)
    """
    def include_inf(self):
        return bool(self.get('sweep.include_inf', True))

    """
        List of estimation-noise scales sigma2
    """
    def sigma2_values(self):
        values = self.get('sweep.sigma2', [0.0, 0.2, 0.4])
        if not isinstance(values, list):
            values = [values]
        return [float(v) for v in values]

    def n_trials(self):
        return int(self.require('run.n_trials'))

    """
        The seed has no default: a sweep must always be reproducible.
    """
    def seed(self):
        seed = self.require('run.seed')
        if not isinstance(seed, int) or seed < 0:
            raise ConfigurationError('run.seed must be a non-negative integer, got ' + repr(seed) + '.')
        return seed

    """
        Number of worker threads. The BRDP_THREADS environment variable wins over the file and the command line.
    """
    def threads(self):
        env = os.environ.get(Configuration.THREADS_ENV)
        if env is not None and env.strip():
            try:
                return max(1, int(env))
            except ValueError:
                raise ConfigurationError(Configuration.THREADS_ENV + ' must be an integer, got "' + env + '".')
        return max(1, int(self.get('run.threads', 1)))

    def output_directory(self):
        return self.get('output.directory', 'results')

    def trajectory_samples(self):
        return int(self.get('output.trajectory_samples', 5))

    """
        Indicates if we are in a development mode (= debug logs) or not.
    """
    def is_development(self):
        return bool(self.get('development', False))

    """
        Return the maximum amount of time (in seconds) we keep a solved policy in cache.
        Value <= 0 means disabled.
    """
    def cache_timeout(self):
        if self.get('cache.timeout_s', 600) <= 0:
            return 0
        return self.get('cache.timeout_s', 600)

    """
        Return the maximum number of solved policies we can keep in the cache.
    """
    def cache_max_elements(self):
        if self.get('cache.max_elements', 64) <= 0:
            return 0
        return self.get('cache.max_elements', 64)

    """
        Return every "section.*" value as a dictionary without the section prefix.
    """
    def section(self, name):
        prefix = name + '.'
        return {key[len(prefix):]: value for key, value in self.conf.items() if key.startswith(prefix)}

    """
        Parse a grid spec "min:max:count" into a log-spaced numpy array
    """
    @staticmethod
    def parse_grid(spec):
        if isinstance(spec, list):
            grid = np.array(spec, dtype=float)
        else:
            parts = str(spec).split(':')
            if len(parts) != 3:
                raise ConfigurationError('Invalid grid "' + str(spec) + '", expected min:max:count.')
            try:
                low, high, count = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError:
                raise ConfigurationError('Invalid grid "' + str(spec) + '", expected min:max:count.')
            if low <= 0 or high < low or count < 1:
                raise ConfigurationError('Invalid grid "' + str(spec) + '": need 0 < min <= max and count >= 1.')
            grid = np.logspace(np.log10(low), np.log10(high), count) if count > 1 else np.array([low])
        if grid.size == 0:
            raise ConfigurationError('Empty grid.')
        return grid
