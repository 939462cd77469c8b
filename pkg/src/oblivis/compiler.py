"""Response compiler: wraps any 1-out-of-n suite so the receiver ships an
encrypted one-hot selection vector with its query and gets back a constant
number of ciphertexts instead of n response elements.

The wrapped sender runs the inner suite unchanged, then folds each of the w
per-element components across all n elements against the selection vector;
the receiver decrypts w values and hands the rebuilt element to the inner
suite's single-element retrieval.
"""

from dataclasses import dataclass

from . import ahe
from .errors import CapacityError, ParameterError
from .multireceiver import OneHotCipherVector


@dataclass(frozen=True)
class CompiledQuery:
    inner: object
    one_hot: OneHotCipherVector

    @property
    def n(self):
        return self.one_hot.z


@dataclass(frozen=True)
class CompiledResponse:
    slots: tuple  # w ciphertexts, independent of n

    @property
    def w(self):
        return len(self.slots)


class CompiledSuite:
    """A 1-out-of-n suite with O(1) response size."""

    def __init__(self, inner):
        self.inner = inner
        self.n = inner.n
        self.w = inner.w

    def init(self, cfg, rng):
        return self.inner.init(cfg, rng)

    def setup_receiver(self, cfg, rng, pk=None):
        """Receiver-side homomorphic keypair; checks the capacity rule
        against the inner suite's widest component."""
        keys = ahe.kgen(cfg.ahe_bits, rng)
        if pk is not None:
            need = self.inner.max_component_bits(cfg, pk) + 8
            if keys.plaintext_bits < need:
                raise CapacityError("plaintext space below component width")
        return keys

    def gen_query(self, cfg, pk, pk_r, s, rng):
        if not 0 <= s < self.n:
            raise ParameterError("choice index out of range")
        inner_q, secret = self.inner.gen_query(cfg, pk, s, rng)
        one_hot = OneHotCipherVector(
            slots=ahe.encrypt_one_hot(pk_r, self.n, s, rng),
            pk_fingerprint=pk_r.fingerprint,
        )
        return CompiledQuery(inner=inner_q, one_hot=one_hot), secret

    def gen_res(self, cfg, messages, pk, pk_r, query, rng):
        if query.n != self.n:
            raise ParameterError("query built for a different n")
        res = self.inner.gen_res(cfg, messages, pk, query.inner, rng)
        limit = pk_r.n
        slots = []
        for j in range(self.w):
            scalars = []
            for element in res:
                value = self.inner.encode_component(cfg, pk, j, element[j])
                if value >= limit:
                    raise CapacityError("component exceeds plaintext space")
                scalars.append(value)
            slots.append(ahe.hom_select(pk_r, query.one_hot.slots, scalars))
        return CompiledResponse(slots=tuple(slots))

    def retrieve(self, cfg, res, query, secret, pk, sk_r):
        element = tuple(
            self.inner.decode_component(cfg, pk, j, ahe.dec(sk_r, res.slots[j]))
            for j in range(self.w)
        )
        return self.inner.retrieve_element(cfg, element, secret, pk)


def compile_suite(inner):
    """Wrap a suite; response size drops from n elements to w ciphertexts."""
    return CompiledSuite(inner)
