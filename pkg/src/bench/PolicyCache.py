#!/usr/lib/brdp/environment/bin/python
import logging
import threading

from expiringdict import ExpiringDict

"""
    Solved policies kept by key (beta for the BR-LQG sweep), so the sigma2 cells of one beta reuse a single solve.
    A timeout or a size <= 0 in the configuration disables the cache.
"""
class PolicyCache:
    logger = logging.getLogger('PolicyCache')

    def __init__(self, configuration):
        self.max_elements = configuration.cache_max_elements()
        self.timeout = configuration.cache_timeout()
        self.lock = threading.Lock()
        self.reset_cache()

    def enabled(self):
        return self.max_elements > 0 and self.timeout > 0

    """
        Drop every stored policy
    """
    def reset_cache(self):
        self.cache = ExpiringDict(max_len=self.max_elements, max_age_seconds=self.timeout) if self.enabled() else None

    """
        Return the policy stored for key, or solve() it and store the result
    """
    def get_or_solve(self, key, solve):
        if self.cache is None:
            return solve()
        with self.lock:
            policy = self.cache.get(key)
            if policy is not None:
                PolicyCache.logger.debug('Cache hit for ' + str(key))
                return policy
        policy = solve()
        with self.lock:
            self.cache[key] = policy
        return policy

    def __len__(self):
        return 0 if self.cache is None else len(self.cache)
