"""The two-message 1-out-of-2 OT over the safe-prime subgroup, plus the
generic four-algorithm 1-out-of-n interface the response compiler consumes
and a naive n-lane instantiation of it.

Only beta0 travels on the wire in the 1-of-2 protocol; the sender
recomputes beta1 = C / beta0.
"""

from dataclasses import dataclass

from . import primitives as prim
from .errors import GroupError, ParameterError
from .primitives import (
    exp_in_group,
    group_exp,
    group_inv,
    group_mul,
    hash_H,
    int_to_fixed,
    is_group_element,
    pad_message,
    unpad_message,
    xor_bytes,
)


@dataclass(frozen=True)
class NpQuery:
    beta0: int


@dataclass(frozen=True)
class NpSecret:
    r: int
    s: int


@dataclass(frozen=True)
class ResponsePair:
    """Sender ciphertext pair; each slot is (group element, masked bytes)."""

    e0: tuple
    e1: tuple

    def slots(self):
        return (self.e0, self.e1)


def encrypt_slot(cfg, pk, beta, message_padded, y):
    """One response slot: (g^y, H(beta^y) xor m). Shared by every protocol
    that answers with this shape, so their sender paths are byte-identical
    given equal inputs."""
    key = exp_in_group(pk, beta, y)
    mask = hash_H(int_to_fixed(key, pk.element_width), cfg.sigma)
    return (exp_in_group(pk, pk.g, y), xor_bytes(mask, message_padded))


def encrypt_pair(cfg, pk, betas, messages, ys):
    m0 = pad_message(messages[0], cfg.sigma)
    m1 = pad_message(messages[1], cfg.sigma)
    return ResponsePair(
        e0=encrypt_slot(cfg, pk, betas[0], m0, ys[0]),
        e1=encrypt_slot(cfg, pk, betas[1], m1, ys[1]),
    )


def decrypt_slot(cfg, pk, slot, exponent):
    key = group_exp(pk, slot[0], exponent)
    mask = hash_H(int_to_fixed(key, pk.element_width), cfg.sigma)
    if len(slot[1]) != cfg.sigma_bytes:
        raise ParameterError("masked field has wrong length")
    return unpad_message(xor_bytes(mask, slot[1]))


def init(cfg, rng):
    """Sender-side initialization: fresh group parameters."""
    return prim.gen_group(cfg.group_bits, rng.randbytes(32))


def gen_query(pk, s, rng):
    """Receiver query: beta_s = g^r, beta_{1-s} = C / beta_s; send beta0."""
    if s not in (0, 1):
        raise ParameterError("choice index must be a bit")
    r = rng.randrange(1, pk.q)
    beta_s = exp_in_group(pk, pk.g, r)
    if s == 0:
        beta0 = beta_s
    else:
        beta0 = group_mul(pk, pk.c, group_inv(pk, beta_s))
    return NpQuery(beta0=beta0), NpSecret(r=r, s=s)


def gen_res(cfg, m0, m1, pk, query, rng):
    """Sender response: recompute beta1 and encrypt both messages."""
    beta0 = query.beta0
    if not is_group_element(pk, beta0):
        raise GroupError("query element outside subgroup")
    beta1 = group_mul(pk, pk.c, group_inv(pk, beta0))
    y0 = rng.randbelow(pk.q)
    y1 = rng.randbelow(pk.q)
    return encrypt_pair(cfg, pk, (beta0, beta1), (m0, m1), (y0, y1))


def retrieve(cfg, res, secret, pk):
    slot = res.slots()[secret.s]
    return decrypt_slot(cfg, pk, slot, secret.r)


class OneOfNSuite:
    """Four-algorithm 1-out-of-n OT interface.

    A conforming suite also exposes the per-element component count `w`,
    an integer encoding for each component, and single-element retrieval —
    the hooks the response compiler needs to compress a response without
    understanding its structure.
    """

    n = None
    w = None

    def init(self, cfg, rng):
        raise NotImplementedError

    def gen_query(self, cfg, pk, s, rng):
        raise NotImplementedError

    def gen_res(self, cfg, messages, pk, query, rng):
        raise NotImplementedError

    def retrieve(self, cfg, res, query, secret, pk, s):
        return self.retrieve_element(cfg, res[s], secret, pk)

    def retrieve_element(self, cfg, element, secret, pk):
        raise NotImplementedError

    def encode_component(self, cfg, pk, j, comp):
        raise NotImplementedError

    def decode_component(self, cfg, pk, j, value):
        raise NotImplementedError

    def max_component_bits(self, cfg, pk):
        raise NotImplementedError


class NaiveOneOfN(OneOfNSuite):
    """n parallel beta lanes in the two-message pattern.

    The receiver knows the discrete log of beta_s only; every other lane is
    blinded through C. The response carries all n elements, which is
    exactly the O(n) download the compiler exists to remove.
    """

    w = 2

    def __init__(self, n):
        if n < 1:
            raise ParameterError("n must be positive")
        self.n = n

    def init(self, cfg, rng):
        return prim.gen_group(cfg.group_bits, rng.randbytes(32))

    def gen_query(self, cfg, pk, s, rng):
        if not 0 <= s < self.n:
            raise ParameterError("choice index out of range")
        r = rng.randrange(1, pk.q)
        betas = []
        for t in range(self.n):
            if t == s:
                betas.append(exp_in_group(pk, pk.g, r))
            else:
                rt = rng.randrange(1, pk.q)
                betas.append(group_mul(pk, pk.c, exp_in_group(pk, pk.g, pk.q - rt)))
        return tuple(betas), NpSecret(r=r, s=s)

    def gen_res(self, cfg, messages, pk, query, rng):
        if len(messages) != self.n or len(query) != self.n:
            raise ParameterError("message/query vector length mismatch")
        for beta in query:
            if not is_group_element(pk, beta):
                raise GroupError("query element outside subgroup")
        out = []
        for t in range(self.n):
            y = rng.randbelow(pk.q)
            out.append(encrypt_slot(cfg, pk, query[t], pad_message(messages[t], cfg.sigma), y))
        return out

    def retrieve_element(self, cfg, element, secret, pk):
        return decrypt_slot(cfg, pk, element, secret.r)

    def encode_component(self, cfg, pk, j, comp):
        if j == 0:
            return comp
        return int.from_bytes(comp, "big")

    def decode_component(self, cfg, pk, j, value):
        if j == 0:
            return value
        return value.to_bytes(cfg.sigma_bytes, "big")

    def max_component_bits(self, cfg, pk):
        return max(pk.p.bit_length(), cfg.sigma)


def one_of_n_suite(n):
    """Naive 1-of-n suite; the compiler's test substrate."""
    if not 2 <= n <= 1024:
        raise ParameterError("n must be in [2, 1024]")
    return NaiveOneOfN(n)
