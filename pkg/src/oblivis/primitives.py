"""Core primitives: subgroup arithmetic, random-oracle hashes, bit sharing,
controlled swaps, and message padding.

The group is the prime-order-q subgroup of quadratic residues modulo a safe
prime p = 2q + 1. All exponents are reduced mod q; division is performed by
exponentiation with a negated exponent, never by computing a modular inverse
in the group. The public constant C is derived by hashing a transcript
string into the subgroup, so no party knows its discrete logarithm.
"""

import hashlib
from dataclasses import dataclass

from . import _mathops
from .counters import COUNTERS
from .errors import GroupError, PaddingError, ParameterError
from .rng import Rng

_H_TAG = b"\x48"
_G_TAG = b"\x47"

# RFC 3526 group 14: 2048-bit safe prime; 2 generates the quadratic-residue
# subgroup (p = 7 mod 8).
_RFC3526_P2048 = int(
    "FFFFFFFFFFFFFFFFC90FDAA22168C234C4C6628B80DC1CD129024E088A67CC74"
    "020BBEA63B139B22514A08798E3404DDEF9519B3CD3A431B302B0A6DF25F1437"
    "4FE1356D6D51C245E485B576625E7EC6F44C42E9A637ED6B0BFF5CB6F406B7ED"
    "EE386BFB5A899FA5AE9F24117C4B1FE649286651ECE45B3DC2007CB8A163BF05"
    "98DA48361C55D39A69163FA8FD24CF5F83655D23DCA3AD961C62F356208552BB"
    "9ED529077096966D670C354E4ABC9804F1746C08CA18217C32905E462E36CE3B"
    "E39E772C180E86039B2783A2EC07A28FB5C55DF06F4C52C9DE2BCBF695581718"
    "3995497CEA956AE515D2261898FA051015728E5A8AACAA68FFFFFFFFFFFFFFFF",
    16,
)


def ser_int(x):
    """Unsigned big-endian bytes behind a 4-byte big-endian length prefix."""
    if x < 0:
        raise ParameterError("cannot serialize negative integer")
    width = max(1, (x.bit_length() + 7) // 8)
    return width.to_bytes(4, "big") + x.to_bytes(width, "big")


def deser_int(buf, offset=0):
    """Inverse of ser_int; returns (value, next_offset)."""
    width = int.from_bytes(buf[offset : offset + 4], "big")
    end = offset + 4 + width
    if end > len(buf):
        raise ParameterError("truncated integer field")
    return int.from_bytes(buf[offset + 4 : end], "big"), end


def int_to_fixed(x, width):
    return x.to_bytes(width, "big")


def xor_bytes(a, b):
    if len(a) != len(b):
        raise ParameterError("xor operands differ in length")
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(len(a), "big")


@dataclass(frozen=True)
class GroupParams:
    """Public parameters (C, p, g) plus the subgroup order q.

    Invariants: p = 2q + 1 with p, q prime; g generates the order-q
    subgroup; C lies in that subgroup with unknown discrete logarithm.
    """

    p: int
    q: int
    g: int
    c: int

    def validate(self):
        if self.p != 2 * self.q + 1:
            raise GroupError("p != 2q + 1")
        if not _mathops.is_prime(self.p) or not _mathops.is_prime(self.q):
            raise GroupError("p or q is composite")
        if self.g in (0, 1) or self.g >= self.p:
            raise GroupError("bad generator")
        if _mathops.powmod(self.g, self.q, self.p) != 1:
            raise GroupError("g does not generate the order-q subgroup")
        if _mathops.powmod(self.c, self.q, self.p) != 1:
            raise GroupError("C is outside the subgroup")
        return self

    @property
    def element_width(self):
        """Fixed serialization width (bytes) for one group element."""
        return (self.p.bit_length() + 7) // 8

    @property
    def exponent_width(self):
        return (self.q.bit_length() + 7) // 8

    def serialize(self):
        return ser_int(self.p) + ser_int(self.q) + ser_int(self.g) + ser_int(self.c)

    @classmethod
    def deserialize(cls, buf):
        p, off = deser_int(buf, 0)
        q, off = deser_int(buf, off)
        g, off = deser_int(buf, off)
        c, off = deser_int(buf, off)
        return cls(p=p, q=q, g=g, c=c)


@dataclass(frozen=True)
class SessionConfig:
    """Session-wide sizes: tag length, padded message length, group size.

    lam is the tag/share security parameter in bits, sigma the padded
    message length in bits. ahe_bits sizes the homomorphic plaintext space
    and must clear every value the protocols push through it: group
    elements (group_bits) and tagged pads (sigma + lam), with slack.
    """

    lam: int = 32
    sigma: int = 256
    group_bits: int = 512
    ahe_bits: int = 0
    group_source: str = "generated"  # "generated" | "rfc3526"

    def __post_init__(self):
        if self.lam < 8 or self.lam % 8:
            raise ParameterError("lam must be a multiple of 8, at least 8")
        if self.sigma <= 0 or self.sigma % 8:
            raise ParameterError("sigma must be a positive multiple of 8")
        if self.ahe_bits == 0:
            need = max(self.group_bits, self.sigma + self.lam) + 16
            object.__setattr__(self, "ahe_bits", (need + 63) // 64 * 64)
        if self.ahe_bits < max(self.group_bits, self.sigma + self.lam) + 8:
            raise ParameterError("ahe_bits below plaintext capacity rule")

    @property
    def sigma_bytes(self):
        return self.sigma // 8

    @property
    def lam_bytes(self):
        return self.lam // 8


TEST_PROFILE = SessionConfig(lam=32, sigma=256, group_bits=512, group_source="generated")
PRODUCTION_PROFILE = SessionConfig(
    lam=128, sigma=256, group_bits=2048, group_source="rfc3526"
)

_PROFILES = {"test": TEST_PROFILE, "production": PRODUCTION_PROFILE}


def profile(name):
    try:
        return _PROFILES[name]
    except KeyError:
        raise ParameterError(f"unknown profile {name!r}") from None


def derive_c(p, g):
    """Hash (p, g) into the quadratic-residue subgroup.

    The digest is squared mod p, so membership holds by construction and
    the discrete log of the result stays unknown; deriving C as g**a with a
    known exponent is exactly what this avoids.
    """
    counter = 0
    width = 2 * ((p.bit_length() + 7) // 8)
    while True:
        data = b"oblivis-C" + ser_int(p) + ser_int(g)
        if counter:
            data += counter.to_bytes(2, "big")
        x = int.from_bytes(hashlib.shake_256(data).digest(width), "big") % p
        c = x * x % p
        if c not in (0, 1):
            return c
        counter += 1


def gen_group(group_bits, seed, max_candidates=2_000_000):
    """Generate a safe-prime group deterministically from seed.

    group_bits is the bit length of p. Fresh candidates for q are drawn
    from the seeded stream until both q and p = 2q + 1 are prime; the
    generator is a random quadratic residue. Raises GroupError when the
    candidate budget is exhausted.
    """
    if group_bits < 8:
        raise ParameterError("group_bits must be at least 8")
    rng = Rng(seed) if isinstance(seed, (bytes, bytearray)) else Rng.from_seed(seed)
    qbits = group_bits - 1
    for _ in range(max_candidates):
        q = rng.randbits(qbits) | (1 << (qbits - 1)) | 1
        p = 2 * q + 1
        if p.bit_length() != group_bits:
            continue
        if not _mathops.is_prime(q):
            continue
        if not _mathops.is_prime(p):
            continue
        while True:
            h = rng.randrange(2, p - 1)
            g = h * h % p
            if g != 1:
                break
        return GroupParams(p=p, q=q, g=g, c=derive_c(p, g))
    raise GroupError("safe-prime search exhausted its candidate budget")


_STANDARD_GROUP = None


def standard_group():
    """The fixed 2048-bit production group (RFC 3526) with derived C."""
    global _STANDARD_GROUP
    if _STANDARD_GROUP is None:
        p = _RFC3526_P2048
        _STANDARD_GROUP = GroupParams(p=p, q=(p - 1) // 2, g=2, c=derive_c(p, 2))
    return _STANDARD_GROUP


def group_for(config, seed):
    """Resolve the session group for a config: fixed or seed-generated."""
    if config.group_source == "rfc3526":
        return standard_group()
    return gen_group(config.group_bits, seed)


def is_group_element(params, x):
    return 1 <= x < params.p and _mathops.powmod(x, params.q, params.p) == 1


def group_exp(params, base, exponent):
    """base**exponent mod p with a subgroup-membership check on base."""
    if not is_group_element(params, base):
        raise GroupError("base is not a subgroup element")
    COUNTERS.group_exp += 1
    return _mathops.powmod(base, exponent % params.q, params.p)


def exp_in_group(params, base, exponent):
    """Exponentiation for bases already known to lie in the subgroup.

    Callers validate received elements once at the trust boundary and use
    this on the hot path; the membership check in group_exp costs a second
    exponentiation.
    """
    COUNTERS.group_exp += 1
    return _mathops.powmod(base, exponent % params.q, params.p)


def group_mul(params, a, b):
    COUNTERS.group_mul += 1
    return a * b % params.p


def group_inv(params, x):
    """Inverse within the subgroup: x**(q-1), since x**q = 1."""
    COUNTERS.group_exp += 1
    return _mathops.powmod(x, params.q - 1, params.p)


def hash_H(data, sigma):
    """Random oracle H: {0,1}* -> {0,1}^sigma (domain tag 0x48)."""
    if sigma <= 0 or sigma % 8:
        raise ParameterError("sigma must be a positive multiple of 8")
    return hashlib.shake_256(_H_TAG + data).digest(sigma // 8)


def hash_G(data, sigma, lam):
    """Random oracle G: {0,1}* -> {0,1}^(sigma+lam) (domain tag 0x47)."""
    if sigma <= 0 or sigma % 8 or lam < 0 or lam % 8:
        raise ParameterError("sigma/lam must be multiples of 8")
    return hashlib.shake_256(_G_TAG + data).digest((sigma + lam) // 8)


def parse(lam, y):
    """Split y into (u1, u2) with |u2| = lam bits and u1 || u2 = y."""
    if lam < 0 or lam % 8:
        raise ParameterError("lam must be a non-negative multiple of 8")
    tail = lam // 8
    if len(y) < tail:
        raise ParameterError("input shorter than lam bits")
    cut = len(y) - tail
    return y[:cut], y[cut:]


def share_bit(s, rng):
    """2-of-2 XOR sharing of one bit: s1 uniform, s2 = s1 ^ s."""
    if s not in (0, 1):
        raise ParameterError("share_bit takes a bit")
    s1 = rng.bit()
    return s1, s1 ^ s


def share_bytes(secret, rng):
    """2-of-2 XOR sharing of a byte string."""
    r1 = rng.randbytes(len(secret))
    return r1, xor_bytes(r1, secret)


def swap_pair(s, pair):
    """Controlled swap: identity when s = 0, transposition when s = 1."""
    if s not in (0, 1):
        raise ParameterError("swap_pair takes a bit")
    a, b = pair
    return (b, a) if s else (a, b)


def permute_pair(rng, pair):
    """Swap under a fresh uniform bit; returns (pair, applied_bit)."""
    b = rng.bit()
    return swap_pair(b, pair), b


def pad_message(data, sigma):
    """Length-prefixed zero padding to exactly sigma/8 bytes."""
    limit = sigma // 8 - 4
    if len(data) > limit:
        raise PaddingError(f"message exceeds {limit} bytes at sigma={sigma}")
    return len(data).to_bytes(4, "big") + data + b"\x00" * (limit - len(data))


def unpad_message(padded):
    """Strict inverse of pad_message; rejects any malformed filler."""
    if len(padded) < 4:
        raise PaddingError("padded block too short")
    length = int.from_bytes(padded[:4], "big")
    if length > len(padded) - 4:
        raise PaddingError("declared length exceeds block")
    if any(padded[4 + length :]):
        raise PaddingError("nonzero filler")
    return padded[4 : 4 + length]
