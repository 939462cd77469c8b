import pytest

from oblivis import ahe
from oblivis.primitives import GroupParams, SessionConfig, derive_c, gen_group
from oblivis.rng import Rng


@pytest.fixture(scope="session")
def cfg():
    return SessionConfig(lam=32, sigma=256, group_bits=512)


@pytest.fixture(scope="session")
def group(cfg):
    """Test-profile 512-bit group, generated once per run."""
    return gen_group(cfg.group_bits, b"test-fixture-group")


@pytest.fixture(scope="session")
def toy_group():
    """Small group for exhaustive / high-volume loops."""
    return gen_group(64, b"toy-fixture-group")


@pytest.fixture(scope="session")
def toy_cfg():
    return SessionConfig(lam=32, sigma=256, group_bits=64)


@pytest.fixture(scope="session")
def tiny_group():
    """Hand-checkable group: p = 23 = 2*11 + 1, g = 4 generates order 11."""
    return GroupParams(p=23, q=11, g=4, c=derive_c(23, 4))


@pytest.fixture(scope="session")
def ahe_keys(cfg):
    return ahe.kgen(cfg.ahe_bits, Rng(b"ahe-fixture"))


@pytest.fixture()
def rng():
    return Rng(b"per-test")


def random_message(cfg, rng):
    return rng.randbytes(cfg.sigma_bytes - 4)


class ScriptedRng:
    """Feeds preset draws to protocol functions for transcript tests."""

    def __init__(self, values):
        self.values = list(values)

    def _next(self):
        if not self.values:
            raise AssertionError("scripted rng exhausted")
        return self.values.pop(0)

    def randbelow(self, n):
        return self._next() % n

    def randrange(self, lo, hi):
        return lo + self._next() % (hi - lo)

    def randbits(self, k):
        return self._next() % (1 << k)

    def bit(self):
        return self._next() & 1

    def randbytes(self, n):
        value = self._next()
        if isinstance(value, bytes):
            assert len(value) == n
            return value
        return int(value).to_bytes(n, "big")

    def child(self, label):
        return self
