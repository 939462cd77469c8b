"""Seedable CSPRNG.

SHAKE-256 run in counter mode over a 32-byte key. Deterministic under a
fixed seed, and forkable into independent labelled child streams so that
per-role / per-slot randomness is reproducible regardless of evaluation
order (sequential vs. parallel schedulers must agree byte-for-byte).
"""

import hashlib
import secrets

_BLOCK = 512


class Rng:
    """Deterministic random stream with fork support."""

    __slots__ = ("_key", "_counter", "_buf", "_pos")

    def __init__(self, seed):
        if not isinstance(seed, (bytes, bytearray)):
            raise TypeError("seed must be bytes")
        self._key = hashlib.shake_256(b"oblivis-rng" + bytes(seed)).digest(32)
        self._counter = 0
        self._buf = b""
        self._pos = 0

    @classmethod
    def from_seed(cls, seed):
        """Build an Rng from an int, str, bytes, or None (fresh entropy)."""
        if seed is None:
            return cls(secrets.token_bytes(32))
        if isinstance(seed, int):
            width = max(1, (seed.bit_length() + 7) // 8)
            return cls(seed.to_bytes(width, "big"))
        if isinstance(seed, str):
            return cls(seed.encode())
        return cls(seed)

    def _refill(self):
        block = self._key + self._counter.to_bytes(8, "big")
        self._buf = hashlib.shake_256(block).digest(_BLOCK)
        self._pos = 0
        self._counter += 1

    def randbytes(self, n):
        out = bytearray()
        while n > 0:
            if self._pos >= len(self._buf):
                self._refill()
            take = min(n, len(self._buf) - self._pos)
            out += self._buf[self._pos : self._pos + take]
            self._pos += take
            n -= take
        return bytes(out)

    def randbits(self, k):
        if k <= 0:
            return 0
        nbytes = (k + 7) // 8
        value = int.from_bytes(self.randbytes(nbytes), "big")
        return value >> (nbytes * 8 - k)

    def randbelow(self, n):
        if n <= 0:
            raise ValueError("randbelow needs n > 0")
        k = n.bit_length()
        while True:
            value = self.randbits(k)
            if value < n:
                return value

    def randrange(self, lo, hi):
        if hi <= lo:
            raise ValueError("empty range")
        return lo + self.randbelow(hi - lo)

    def bit(self):
        return self.randbits(1)

    def child(self, label):
        """Derive an independent stream; the parent state is untouched."""
        if isinstance(label, str):
            label = label.encode()
        return Rng(hashlib.shake_256(self._key + b"/" + label).digest(32))
