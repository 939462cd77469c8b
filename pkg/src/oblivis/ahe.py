"""Additive homomorphic encryption (Paillier).

Three algorithms — key generation, encryption, decryption — plus
homomorphic addition of ciphertexts and multiplication of a ciphertext by a
plaintext scalar. Ciphertexts carry an 8-byte fingerprint of the public key
they were produced under; every operation checks it.
"""

import hashlib
import math
from dataclasses import dataclass

from . import _mathops
from .counters import COUNTERS
from .errors import CapacityError, KeyMismatchError, ParameterError


@dataclass(frozen=True)
class AhePublicKey:
    n: int
    fingerprint: bytes

    @property
    def n_sq(self):
        return self.n * self.n

    @property
    def ciphertext_width(self):
        """Fixed serialization width (bytes) of one ciphertext."""
        return (self.n_sq.bit_length() + 7) // 8

    def serialize(self):
        from .primitives import ser_int

        return ser_int(self.n)

    @classmethod
    def deserialize(cls, buf):
        from .primitives import deser_int

        n, _ = deser_int(buf, 0)
        return cls(n=n, fingerprint=_fingerprint(n))


@dataclass(frozen=True)
class AheSecretKey:
    n: int
    phi: int
    mu: int
    fingerprint: bytes


@dataclass(frozen=True)
class AheKeyPair:
    pk: AhePublicKey
    sk: AheSecretKey
    plaintext_bits: int


@dataclass(frozen=True)
class AheCiphertext:
    value: int
    pk_fingerprint: bytes

    def serialize(self, pk):
        width = pk.ciphertext_width
        return self.pk_fingerprint + width.to_bytes(4, "big") + self.value.to_bytes(width, "big")

    @classmethod
    def deserialize(cls, buf, offset=0):
        fp = buf[offset : offset + 8]
        width = int.from_bytes(buf[offset + 8 : offset + 12], "big")
        end = offset + 12 + width
        value = int.from_bytes(buf[offset + 12 : end], "big")
        return cls(value=value, pk_fingerprint=fp), end


def _fingerprint(n):
    from .primitives import ser_int

    return hashlib.shake_256(b"oblivis-ahe" + ser_int(n)).digest(8)


def _gen_prime(bits, rng, max_candidates=1_000_000):
    for _ in range(max_candidates):
        cand = rng.randbits(bits) | (1 << (bits - 1)) | 1
        if _mathops.is_prime(cand):
            return cand
    raise ParameterError("prime search exhausted its candidate budget")


def kgen(plaintext_bits, rng):
    """Generate a keypair whose modulus has exactly plaintext_bits bits."""
    if plaintext_bits < 64:
        raise ParameterError("plaintext_bits must be at least 64")
    COUNTERS.ahe_op += 1
    half = plaintext_bits // 2
    while True:
        p = _gen_prime(plaintext_bits - half, rng)
        q = _gen_prime(half, rng)
        if p == q:
            continue
        n = p * q
        if n.bit_length() == plaintext_bits:
            break
    phi = (p - 1) * (q - 1)
    mu = _mathops.invert(phi, n)
    fp = _fingerprint(n)
    return AheKeyPair(
        pk=AhePublicKey(n=n, fingerprint=fp),
        sk=AheSecretKey(n=n, phi=phi, mu=mu, fingerprint=fp),
        plaintext_bits=plaintext_bits,
    )


def enc(pk, m, rng):
    """Encrypt m in [0, n) under fresh randomness. Uses g = n + 1."""
    n = pk.n
    if not 0 <= m < n:
        raise CapacityError("plaintext outside [0, n)")
    COUNTERS.ahe_op += 1
    n_sq = pk.n_sq
    while True:
        r = rng.randrange(1, n)
        if math.gcd(r, n) == 1:
            break
    c = (1 + m * n) % n_sq * _mathops.powmod(r, n, n_sq) % n_sq
    return AheCiphertext(value=c, pk_fingerprint=pk.fingerprint)


def dec(sk, c):
    """Exact plaintext of c; raises KeyMismatchError on a foreign key."""
    if c.pk_fingerprint != sk.fingerprint:
        raise KeyMismatchError("ciphertext was produced under a different key")
    COUNTERS.ahe_op += 1
    n = sk.n
    u = _mathops.powmod(c.value, sk.phi, n * n)
    return (u - 1) // n * sk.mu % n


def _require_same_key(c1, c2):
    if c1.pk_fingerprint != c2.pk_fingerprint:
        raise KeyMismatchError("ciphertexts under different keys")


def hom_add(pk, c1, c2):
    """Ciphertext whose plaintext is the sum (mod n) of the operands'."""
    _require_same_key(c1, c2)
    if c1.pk_fingerprint != pk.fingerprint:
        raise KeyMismatchError("ciphertext does not match pk")
    COUNTERS.ahe_op += 1
    return AheCiphertext(
        value=c1.value * c2.value % pk.n_sq, pk_fingerprint=c1.pk_fingerprint
    )


def hom_scale(pk, c, k):
    """Ciphertext whose plaintext is k times the operand's (k >= 0)."""
    if k < 0:
        raise ParameterError("scalar must be non-negative")
    if c.pk_fingerprint != pk.fingerprint:
        raise KeyMismatchError("ciphertext does not match pk")
    COUNTERS.ahe_op += 1
    return AheCiphertext(
        value=_mathops.powmod(c.value, k, pk.n_sq), pk_fingerprint=c.pk_fingerprint
    )


def encrypt_one_hot(pk, length, index, rng):
    """Elementwise encryption of the 0/1 indicator of one position."""
    if not 0 <= index < length:
        raise ParameterError("index outside vector")
    return tuple(
        enc(pk, 1 if t == index else 0, rng) for t in range(length)
    )


def hom_select(pk, one_hot, scalars):
    """Homomorphic dot product of an encrypted one-hot vector with
    plaintext scalars: decrypts to scalars[v] when slot v holds the 1.

    No overflow occurs because exactly one slot is nonzero, so the
    homomorphic sum equals a single term.
    """
    if len(one_hot) != len(scalars):
        raise ParameterError("vector length mismatch")
    for k in scalars:
        if not 0 <= k < pk.n:
            raise CapacityError("scalar outside plaintext space")
    acc = hom_scale(pk, one_hot[0], scalars[0])
    for slot, k in zip(one_hot[1:], scalars[1:]):
        acc = hom_add(pk, acc, hom_scale(pk, slot, k))
    return acc
