"""Multi-receiver variants over a database of z message pairs.

In the known-index variant the filtering proxy holds the record index v and
forwards only pair v of the sender's z-pair response. In the hidden-index
variant the proxy stores an encrypted one-hot vector and compresses the
response to four ciphertexts with a homomorphic dot product, learning z but
never v. Either way the receiver's download is independent of z, and the
sender's response path never takes v as an input.
"""

from dataclasses import dataclass

from . import ahe, dq, duq
from .errors import CapacityError, ParameterError
from .naor_pinkas import ResponsePair, encrypt_slot
from .primitives import pad_message
from .rng import Rng

retrieve_known_index = dq.retrieve


def _indexed_rngs(rng):
    """Fresh per-record streams: one nonce drawn from the parent (so every
    call gets new randomness) fanned out by index (so a parallel mapper
    produces the same bytes as the sequential loop)."""
    nonce = rng.randbytes(32)
    return lambda t: Rng(nonce + t.to_bytes(4, "big"))


@dataclass(frozen=True)
class MessageMatrix:
    """z message pairs [(m00, m10), ..., (m0,z-1, m1,z-1)]."""

    pairs: tuple

    def __post_init__(self):
        if len(self.pairs) < 1:
            raise ParameterError("matrix needs at least one pair")

    @property
    def z(self):
        return len(self.pairs)


@dataclass(frozen=True)
class OneHotCipherVector:
    slots: tuple
    pk_fingerprint: bytes

    @property
    def z(self):
        return len(self.slots)


@dataclass(frozen=True)
class FilteredResponse:
    """Four ciphertexts o[i][i'] holding one tagged pair, componentwise."""

    o00: ahe.AheCiphertext
    o01: ahe.AheCiphertext
    o10: ahe.AheCiphertext
    o11: ahe.AheCiphertext

    def grid(self):
        return ((self.o00, self.o01), (self.o10, self.o11))


def _seq_map(fn, items):
    return [fn(item) for item in items]


def dqmr_gen_res(cfg, matrix, pk, q1, rng, mapper=None):
    """One untagged response pair per record, fresh exponents per slot."""
    dq.check_query(pk, q1)
    mapper = mapper or _seq_map
    rng_at = _indexed_rngs(rng)

    def one(t):
        m0, m1 = matrix.pairs[t]
        slot_rng = rng_at(t)
        y0 = slot_rng.randbelow(pk.q)
        y1 = slot_rng.randbelow(pk.q)
        return ResponsePair(
            e0=encrypt_slot(cfg, pk, q1.beta0, pad_message(m0, cfg.sigma), y0),
            e1=encrypt_slot(cfg, pk, q1.beta1, pad_message(m1, cfg.sigma), y1),
        )

    return list(mapper(one, range(matrix.z)))


def dqmr_obl_filter(res, v):
    """Forward pair v, discard the rest."""
    if not 0 <= v < len(res):
        raise ParameterError("record index out of range")
    return res[v]


def duqmr_r_setup(cfg, rng):
    """Receiver's one-off homomorphic keypair, sized by the capacity rule."""
    return ahe.kgen(cfg.ahe_bits, rng)


def duqmr_t_setup(z, v, pk_j, rng):
    """Issuer's compressing vector: Enc(1) at v, Enc(0) elsewhere."""
    slots = ahe.encrypt_one_hot(pk_j, z, v, rng)
    return OneHotCipherVector(slots=slots, pk_fingerprint=pk_j.fingerprint)


def duqmr_gen_res(cfg, matrix, pk, q1, sp_sender, rng, mapper=None):
    """z tagged pairs, each independently permuted."""
    dq.check_query(pk, q1)
    mapper = mapper or _seq_map
    rng_at = _indexed_rngs(rng)

    def one(t):
        m0, m1 = matrix.pairs[t]
        return duq.gen_res(cfg, m0, m1, pk, q1, sp_sender, rng_at(t))

    return list(mapper(one, range(matrix.z)))


def duqmr_obl_filter(cfg, pk, res, w, pk_j):
    """Compress the z tagged pairs to four ciphertexts.

    Each response component is read as an unsigned big-endian integer; the
    capacity rule guarantees it fits the plaintext space.
    """
    if len(res) != w.z:
        raise ParameterError("response length does not match vector")
    if w.pk_fingerprint != pk_j.fingerprint:
        raise ParameterError("one-hot vector under a different key")
    limit = pk_j.n
    grid = []
    for i in range(2):
        row = []
        for ip in range(2):
            scalars = []
            for pair in res:
                comp = pair.slots()[i][ip]
                value = comp if ip == 0 else int.from_bytes(comp, "big")
                if value >= limit:
                    raise CapacityError("component exceeds plaintext space")
                scalars.append(value)
            row.append(ahe.hom_select(pk_j, w.slots, scalars))
        grid.append(row)
    return FilteredResponse(o00=grid[0][0], o01=grid[0][1], o10=grid[1][0], o11=grid[1][1])


def duqmr_retrieve(cfg, res, r1, r2, sk_j, pk, sp_receiver):
    """Decrypt the four components, rebuild the tagged pair, then run the
    tag-directed trial decryption."""
    masked_width = cfg.sigma_bytes + cfg.lam_bytes
    opened = []
    for row in res.grid():
        head = ahe.dec(sk_j, row[0])
        body = ahe.dec(sk_j, row[1]).to_bytes(masked_width, "big")
        opened.append((head, body))
    pair = duq.TaggedResponsePair(e0=opened[0], e1=opened[1])
    return duq.retrieve(cfg, pair, r1, r2, sp_receiver, pk)
