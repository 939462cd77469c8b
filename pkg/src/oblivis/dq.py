"""Delegated-query OT.

The receiver XOR-shares its choice bit between two proxies and hands each a
blinding exponent; the proxies build, in sequence, a query pair with the
same shape an honest two-message receiver would have produced. The sender
checks beta0 * beta1 = C, answers exactly as in the base protocol, and the
receiver extracts with x = r2 + r1 * (-1)^s2.

The receiver's request phase performs no group exponentiations and no
big-integer multiplications; the instrumentation counters verify this.
"""

from dataclasses import dataclass

from .errors import AbortError, GroupError, ParameterError
from .naor_pinkas import ResponsePair, decrypt_slot, encrypt_pair
from .primitives import (
    exp_in_group,
    group_mul,
    is_group_element,
    share_bit,
)


@dataclass(frozen=True)
class DelegationRequest:
    s_share: int
    r_blind: int


@dataclass(frozen=True)
class PartialQuery:
    delta0: int
    delta1: int


@dataclass(frozen=True)
class FinalQuery:
    beta0: int
    beta1: int


@dataclass(frozen=True)
class ReceiverState:
    s: int
    s1: int
    s2: int
    r1: int
    r2: int


def request(cfg, pk, s, rng):
    """Receiver-side delegation: split s, pick blinders, no group work."""
    if s not in (0, 1):
        raise ParameterError("choice index must be a bit")
    s1, s2 = share_bit(s, rng)
    r1 = rng.randbelow(pk.q)
    r2 = rng.randbelow(pk.q)
    req1 = DelegationRequest(s_share=s1, r_blind=r1)
    req2 = DelegationRequest(s_share=s2, r_blind=r2)
    return req1, req2, ReceiverState(s=s, s1=s1, s2=s2, r1=r1, r2=r2)


def p2_gen_query(req2, pk):
    """First proxy hop: delta_{s2} = g^{r2}, delta_{1-s2} = C / g^{r2}."""
    own = exp_in_group(pk, pk.g, req2.r_blind)
    other = group_mul(pk, pk.c, exp_in_group(pk, pk.g, pk.q - req2.r_blind))
    pair = (own, other) if req2.s_share == 0 else (other, own)
    return PartialQuery(delta0=pair[0], delta1=pair[1])


def p1_gen_query(req1, q2, pk):
    """Second hop: beta_{s1} = delta0 * g^{r1}, beta_{1-s1} = delta1 / g^{r1}."""
    if not is_group_element(pk, q2.delta0) or not is_group_element(pk, q2.delta1):
        raise GroupError("partial query outside subgroup")
    own = group_mul(pk, q2.delta0, exp_in_group(pk, pk.g, req1.r_blind))
    other = group_mul(pk, q2.delta1, exp_in_group(pk, pk.g, pk.q - req1.r_blind))
    pair = (own, other) if req1.s_share == 0 else (other, own)
    return FinalQuery(beta0=pair[0], beta1=pair[1])


def check_query(pk, q1, role="S", phase="gen_res"):
    """Sender-side abort check: C must equal beta0 * beta1."""
    if not is_group_element(pk, q1.beta0) or not is_group_element(pk, q1.beta1):
        raise AbortError("query element outside subgroup", role=role, phase=phase)
    if group_mul(pk, q1.beta0, q1.beta1) != pk.c:
        raise AbortError("beta0 * beta1 != C", role=role, phase=phase)


def gen_res(cfg, m0, m1, pk, q1, rng):
    check_query(pk, q1)
    y0 = rng.randbelow(pk.q)
    y1 = rng.randbelow(pk.q)
    return encrypt_pair(cfg, pk, (q1.beta0, q1.beta1), (m0, m1), (y0, y1))


def choice_exponent(r1, r2, s2, q):
    """x = r2 + r1 * (-1)^s2 mod q; the sign table follows the share s2."""
    return (r2 - r1) % q if s2 else (r2 + r1) % q


def retrieve(cfg, res: ResponsePair, state: ReceiverState, pk):
    x = choice_exponent(state.r1, state.r2, state.s2, pk.q)
    return decrypt_slot(cfg, pk, res.slots()[state.s], x)
