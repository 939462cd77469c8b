"""Envelope framing and payload codecs.

Envelope wire format: 16-byte session id, 1-byte sender role, 1-byte
receiver role, 2-byte message kind, 8-byte sequence number, 4-byte
big-endian payload length, payload.

Group elements and homomorphic ciphertexts are written at the full width of
their modulus, so payload sizes depend only on the session parameters —
never on the values — which keeps per-role byte counts comparable across
runs and database sizes.
"""

import enum
from dataclasses import dataclass

from .ahe import AheCiphertext
from .dq import DelegationRequest, FinalQuery, PartialQuery
from .duq import TaggedResponsePair
from .errors import ParameterError
from .multireceiver import FilteredResponse, OneHotCipherVector
from .naor_pinkas import NpQuery, ResponsePair
from .primitives import int_to_fixed


class Role(enum.IntEnum):
    S = 1
    R = 2
    T = 3
    P = 4
    P1 = 5
    P2 = 6


class Kind(enum.IntEnum):
    PUBLIC_KEY = 1
    QUERY = 2
    REQUEST = 3
    PARTIAL_QUERY = 4
    FINAL_QUERY = 5
    RESPONSE = 6
    ISSUER_SHARE = 7
    ISSUER_TAG_S = 8
    ISSUER_TAG_R = 9
    TAGGED_RESPONSE = 10
    MATRIX_RESPONSE = 11
    ONE_HOT_VECTOR = 12
    FILTERED_RESPONSE = 13
    AHE_PUBLIC_KEY = 14
    COMPILED_QUERY = 15
    COMPILED_RESPONSE = 16
    SS_KEYS = 17
    SS_SHARE_S = 18
    SS_SHARE_P = 19
    SS_PAIR = 20
    SS_FINAL = 21


@dataclass(frozen=True)
class PartyEnvelope:
    session_id: bytes
    from_role: Role
    to_role: Role
    kind: Kind
    payload: bytes
    seq: int

    def encode(self):
        if len(self.session_id) != 16:
            raise ParameterError("session id must be 16 bytes")
        return (
            self.session_id
            + bytes([self.from_role, self.to_role])
            + int(self.kind).to_bytes(2, "big")
            + self.seq.to_bytes(8, "big")
            + len(self.payload).to_bytes(4, "big")
            + self.payload
        )

    @classmethod
    def decode(cls, buf, offset=0):
        sid = buf[offset : offset + 16]
        from_role = Role(buf[offset + 16])
        to_role = Role(buf[offset + 17])
        kind = Kind(int.from_bytes(buf[offset + 18 : offset + 20], "big"))
        seq = int.from_bytes(buf[offset + 20 : offset + 28], "big")
        size = int.from_bytes(buf[offset + 28 : offset + 32], "big")
        end = offset + 32 + size
        if end > len(buf):
            raise ParameterError("truncated envelope")
        return cls(sid, from_role, to_role, kind, buf[offset + 32 : end], seq), end


# -- payload codecs ---------------------------------------------------------


def enc_request(pk, req):
    return bytes([req.s_share]) + int_to_fixed(req.r_blind, pk.exponent_width)


def dec_request(pk, buf):
    return DelegationRequest(
        s_share=buf[0], r_blind=int.from_bytes(buf[1:], "big")
    )


def enc_exponent(pk, r):
    return int_to_fixed(r, pk.exponent_width)


def dec_exponent(pk, buf):
    return int.from_bytes(buf, "big")


def enc_element_pair(pk, a, b):
    w = pk.element_width
    return int_to_fixed(a, w) + int_to_fixed(b, w)


def dec_element_pair(pk, buf):
    w = pk.element_width
    return int.from_bytes(buf[:w], "big"), int.from_bytes(buf[w : 2 * w], "big")


def enc_partial_query(pk, q2):
    return enc_element_pair(pk, q2.delta0, q2.delta1)


def dec_partial_query(pk, buf):
    d0, d1 = dec_element_pair(pk, buf)
    return PartialQuery(delta0=d0, delta1=d1)


def enc_final_query(pk, q1):
    return enc_element_pair(pk, q1.beta0, q1.beta1)


def dec_final_query(pk, buf):
    b0, b1 = dec_element_pair(pk, buf)
    return FinalQuery(beta0=b0, beta1=b1)


def enc_np_query(pk, q):
    return int_to_fixed(q.beta0, pk.element_width)


def dec_np_query(pk, buf):
    return NpQuery(beta0=int.from_bytes(buf, "big"))


def _enc_slot(pk, slot):
    return int_to_fixed(slot[0], pk.element_width) + slot[1]


def _dec_slot(pk, buf, masked_width):
    w = pk.element_width
    head = int.from_bytes(buf[:w], "big")
    return (head, buf[w : w + masked_width]), w + masked_width


def enc_response_pair(pk, res):
    return _enc_slot(pk, res.e0) + _enc_slot(pk, res.e1)


def dec_response_pair(pk, cfg, buf, tagged=False):
    masked = cfg.sigma_bytes + (cfg.lam_bytes if tagged else 0)
    e0, off = _dec_slot(pk, buf, masked)
    e1, _ = _dec_slot(pk, buf[off:], masked)
    return TaggedResponsePair(e0=e0, e1=e1) if tagged else ResponsePair(e0=e0, e1=e1)


def enc_matrix_response(pk, pairs):
    out = len(pairs).to_bytes(4, "big")
    for pair in pairs:
        out += enc_response_pair(pk, pair)
    return out


def dec_matrix_response(pk, cfg, buf, tagged=False):
    z = int.from_bytes(buf[:4], "big")
    masked = cfg.sigma_bytes + (cfg.lam_bytes if tagged else 0)
    step = 2 * (pk.element_width + masked)
    pairs = []
    off = 4
    for _ in range(z):
        pairs.append(dec_response_pair(pk, cfg, buf[off : off + step], tagged))
        off += step
    return pairs


def enc_cipher_vector(pk_j, ciphers):
    out = len(ciphers).to_bytes(4, "big")
    for c in ciphers:
        out += c.serialize(pk_j)
    return out


def dec_cipher_vector(buf):
    z = int.from_bytes(buf[:4], "big")
    off = 4
    out = []
    for _ in range(z):
        c, off = AheCiphertext.deserialize(buf, off)
        out.append(c)
    return tuple(out)


def enc_one_hot(pk_j, w):
    return enc_cipher_vector(pk_j, w.slots)


def dec_one_hot(buf):
    slots = dec_cipher_vector(buf)
    return OneHotCipherVector(slots=slots, pk_fingerprint=slots[0].pk_fingerprint)


def enc_filtered(pk_j, res):
    return b"".join(c.serialize(pk_j) for row in res.grid() for c in row)


def dec_filtered(buf):
    vals = []
    off = 0
    for _ in range(4):
        c, off = AheCiphertext.deserialize(buf, off)
        vals.append(c)
    return FilteredResponse(o00=vals[0], o01=vals[1], o10=vals[2], o11=vals[3])


def enc_compiled_query(pk, pk_j, query):
    betas = query.inner
    out = len(betas).to_bytes(4, "big")
    for beta in betas:
        out += int_to_fixed(beta, pk.element_width)
    return out + enc_one_hot(pk_j, query.one_hot)


def dec_compiled_query(pk, buf):
    from .compiler import CompiledQuery

    n = int.from_bytes(buf[:4], "big")
    w = pk.element_width
    off = 4
    betas = []
    for _ in range(n):
        betas.append(int.from_bytes(buf[off : off + w], "big"))
        off += w
    return CompiledQuery(inner=tuple(betas), one_hot=dec_one_hot(buf[off:]))


def enc_compiled_response(pk_j, res):
    out = len(res.slots).to_bytes(4, "big")
    for c in res.slots:
        out += c.serialize(pk_j)
    return out


def dec_compiled_response(buf):
    from .compiler import CompiledResponse

    return CompiledResponse(slots=dec_cipher_vector(buf))
