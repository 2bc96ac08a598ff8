import unittest

from src.bench.PolicyCache import PolicyCache
from src.core.Configuration import Configuration
from test.core.Utils import Utils


class TestPolicyCache(unittest.TestCase):
    def setUp(self):
        self.calls = 0

    def solve(self):
        self.calls += 1
        return object()

    def cache(self, lines):
        return PolicyCache(Configuration(Utils.write_configuration(lines)))

    def test_get_or_solve(self):
        cache = PolicyCache(Configuration('test/resources/conf/lqg-quadrotor.conf'))
        self.assertTrue(cache.enabled())
        first = cache.get_or_solve(1.0, self.solve)
        self.assertIs(cache.get_or_solve(1.0, self.solve), first)
        self.assertEqual(self.calls, 1)
        cache.get_or_solve(2.0, self.solve)
        self.assertEqual(len(cache), 2)

    def test_reset_cache(self):
        cache = self.cache(['cache.timeout_s = 60'])
        cache.get_or_solve(1.0, self.solve)
        cache.reset_cache()
        self.assertEqual(len(cache), 0)
        cache.get_or_solve(1.0, self.solve)
        self.assertEqual(self.calls, 2)

    def test_max_elements(self):
        cache = self.cache(['cache.max_elements = 2'])
        for key in range(5):
            cache.get_or_solve(key, self.solve)
        self.assertEqual(len(cache), 2)

    def test_disabled(self):
        for lines in (['cache.max_elements = 0'], ['cache.timeout_s = -1']):
            cache = self.cache(lines)
            self.assertFalse(cache.enabled())
            cache.get_or_solve(1.0, self.solve)
            cache.get_or_solve(1.0, self.solve)
            self.assertEqual(len(cache), 0)
        self.assertEqual(self.calls, 4)

if __name__ == '__main__':
    unittest.main()
