"""Delegated-unknown-query OT.

A query issuer holds the choice bit; the receiver never learns it. The
issuer shares the bit to the proxies and hands a lambda-bit tag r3 to both
sender and receiver. The sender appends r3 to each message, encrypts under
the wider oracle G, and randomly permutes the response pair; the receiver
trial-decrypts both slots and keeps the one whose trailing lambda bits
equal r3.
"""

from dataclasses import dataclass

from . import dq
from .errors import ParameterError, RetrievalError
from .primitives import (
    exp_in_group,
    group_exp,
    hash_G,
    int_to_fixed,
    pad_message,
    parse,
    permute_pair,
    share_bit,
    swap_pair,
    unpad_message,
    xor_bytes,
)


@dataclass(frozen=True)
class IssuerRequest:
    """What the issuer hands out: shares for the proxies, the tag for S,
    and (s2, r3) for R. R's copy omits s1, so s stays hidden from R."""

    share1: int
    share2: int
    sp_sender: bytes
    sp_receiver: tuple


@dataclass(frozen=True)
class TaggedResponsePair:
    e0: tuple
    e1: tuple

    def slots(self):
        return (self.e0, self.e1)


def r_request(pk, rng):
    """Receiver-side delegation: two blinders, no choice bit, no group work."""
    r1 = rng.randbelow(pk.q)
    r2 = rng.randbelow(pk.q)
    return r1, r2


def t_request(cfg, s, rng):
    if s not in (0, 1):
        raise ParameterError("choice index must be a bit")
    s1, s2 = share_bit(s, rng)
    r3 = rng.randbytes(cfg.lam_bytes)
    return IssuerRequest(share1=s1, share2=s2, sp_sender=r3, sp_receiver=(s2, r3))


def p2_gen_query(r2, s2, pk):
    return dq.p2_gen_query(dq.DelegationRequest(s_share=s2, r_blind=r2), pk)


def p1_gen_query(r1, s1, q2, pk):
    return dq.p1_gen_query(dq.DelegationRequest(s_share=s1, r_blind=r1), q2, pk)


def tagged_slot(cfg, pk, beta, message, r3, y):
    """(g^y, G(beta^y) xor (m || r3)); the tag rides the last lam bits."""
    payload = pad_message(message, cfg.sigma) + r3
    key = exp_in_group(pk, beta, y)
    mask = hash_G(int_to_fixed(key, pk.element_width), cfg.sigma, cfg.lam)
    return (exp_in_group(pk, pk.g, y), xor_bytes(mask, payload))


def gen_res(cfg, m0, m1, pk, q1, sp_sender, rng, _forced_swap=None):
    """Tag, encrypt, and randomly permute the pair. _forced_swap pins the
    permutation bit for exhaustive-path tests only."""
    dq.check_query(pk, q1)
    if len(sp_sender) != cfg.lam_bytes:
        raise ParameterError("tag has wrong length")
    y0 = rng.randbelow(pk.q)
    y1 = rng.randbelow(pk.q)
    e0 = tagged_slot(cfg, pk, q1.beta0, m0, sp_sender, y0)
    e1 = tagged_slot(cfg, pk, q1.beta1, m1, sp_sender, y1)
    if _forced_swap is None:
        pair, _ = permute_pair(rng, (e0, e1))
    else:
        pair = swap_pair(_forced_swap, (e0, e1))
    return TaggedResponsePair(e0=pair[0], e1=pair[1])


def open_tagged_slot(cfg, pk, slot, exponent):
    """Trial-decrypt one slot; returns (payload bytes, tag bytes)."""
    if len(slot[1]) != cfg.sigma_bytes + cfg.lam_bytes:
        raise ParameterError("masked field has wrong length")
    key = group_exp(pk, slot[0], exponent)
    mask = hash_G(int_to_fixed(key, pk.element_width), cfg.sigma, cfg.lam)
    return parse(cfg.lam, xor_bytes(mask, slot[1]))


def retrieve(cfg, res: TaggedResponsePair, r1, r2, sp_receiver, pk):
    """Try both slots; exactly one must carry the issuer's tag.

    Returns message bytes only — nothing in the return value names the
    index the tag selected.
    """
    s2, r3 = sp_receiver
    x = dq.choice_exponent(r1, r2, s2, pk.q)
    hits = []
    for slot in res.slots():
        u1, u2 = open_tagged_slot(cfg, pk, slot, x)
        if u2 == r3:
            hits.append(u1)
    if not hits:
        raise RetrievalError("no slot carried the expected tag")
    if len(hits) > 1:
        raise RetrievalError("both slots carried the expected tag")
    return unpad_message(hits[0])
