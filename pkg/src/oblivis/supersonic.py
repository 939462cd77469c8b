"""Pad-and-swap 1-out-of-2 OT among sender, one proxy, and receiver.

Information-theoretic and public-key free: the receiver shares pad keys
with the sender ahead of time and XOR-shares its choice bit between sender
and proxy; two controlled swaps keyed by the shares compose to a swap keyed
by the choice bit itself, so the first element of the doubly-swapped pair
is always the pad encryption of m_s. The proxy forwards exactly one
ciphertext and discards the other.
"""

from dataclasses import dataclass

from .errors import ParameterError, SessionError
from .primitives import pad_message, share_bit, swap_pair, unpad_message, xor_bytes


@dataclass(frozen=True)
class PadKeys:
    k0: bytes
    k1: bytes


def setup(cfg, rng):
    """Fresh sigma-bit pad keys; single use is enforced by the session."""
    return PadKeys(k0=rng.randbytes(cfg.sigma_bytes), k1=rng.randbytes(cfg.sigma_bytes))


def gen_query(cfg, s, rng):
    if s not in (0, 1):
        raise ParameterError("choice index must be a bit")
    return share_bit(s, rng)


def gen_res(cfg, m0, m1, keys, s1):
    """Pad-encrypt both messages and swap under the sender's share."""
    c0 = xor_bytes(pad_message(m0, cfg.sigma), keys.k0)
    c1 = xor_bytes(pad_message(m1, cfg.sigma), keys.k1)
    return swap_pair(s1, (c0, c1))


def obl_filter(res, s2):
    """Swap under the proxy's share, forward the first element only."""
    return swap_pair(s2, res)[0]


def retrieve(cfg, res, keys, s):
    if len(res) != cfg.sigma_bytes:
        raise ParameterError("ciphertext has wrong length")
    key = keys.k0 if s == 0 else keys.k1
    return unpad_message(xor_bytes(res, key))


class SupersonicSession:
    """Binds pad keys to one transfer; reuse of either phase is rejected."""

    def __init__(self, cfg, session_id=b""):
        self.cfg = cfg
        self.session_id = session_id
        self._keys = None
        self._responded = False

    def setup(self, rng):
        if self._keys is not None:
            raise SessionError("pad keys already issued for this session")
        self._keys = setup(self.cfg, rng)
        return self._keys

    def gen_query(self, s, rng):
        return gen_query(self.cfg, s, rng)

    def gen_res(self, m0, m1, s1):
        if self._keys is None:
            raise SessionError("no pad keys in this session")
        if self._responded:
            raise SessionError("pad keys already consumed")
        self._responded = True
        return gen_res(self.cfg, m0, m1, self._keys, s1)

    def obl_filter(self, res, s2):
        return obl_filter(res, s2)

    def retrieve(self, res, s):
        if self._keys is None:
            raise SessionError("no pad keys in this session")
        return retrieve(self.cfg, res, self._keys, s)
