"""Self-check suites behind the `verify` CLI command.

Each check is a callable that raises AssertionError on failure; suites are
grouped per module. These are corridor versions of the full test suite,
sized to run in seconds, and they exercise the real code paths (a planted
sign flip in the delegated retrieval, for instance, fails the dq suite).
"""

from dataclasses import dataclass

from . import ahe, compiler, dq, duq, multireceiver as mr
from . import naor_pinkas as np_ot, supersonic as ss
from .errors import AbortError, PaddingError
from .harness import Role, assert_sender_push, run_session, strawman_fixture
from .primitives import (
    SessionConfig,
    gen_group,
    group_exp,
    group_mul,
    hash_G,
    hash_H,
    pad_message,
    parse,
    share_bit,
    swap_pair,
    unpad_message,
    xor_bytes,
)
from .rng import Rng

_CFG = SessionConfig(lam=32, sigma=256, group_bits=256)
_STATE = {}


def _group():
    if "group" not in _STATE:
        _STATE["group"] = gen_group(_CFG.group_bits, b"verify-group")
    return _STATE["group"]


def _ahe_keys():
    if "ahe" not in _STATE:
        _STATE["ahe"] = ahe.kgen(_CFG.ahe_bits, Rng(b"verify-ahe"))
    return _STATE["ahe"]


def _msg(rng):
    return rng.randbytes(_CFG.sigma_bytes - 4)


# -- primitives ---------------------------------------------------------------


def check_share_xor():
    rng = Rng(b"share")
    for s in (0, 1):
        for _ in range(500):
            s1, s2 = share_bit(s, rng)
            assert s1 ^ s2 == s


def check_swap_involution():
    rng = Rng(b"swap")
    for _ in range(200):
        pair = (rng.randbytes(4), rng.randbytes(4))
        a, b = rng.bit(), rng.bit()
        assert swap_pair(a, swap_pair(a, pair)) == pair
        assert swap_pair(b, swap_pair(a, pair)) == swap_pair(a ^ b, pair)


def check_parse_roundtrip():
    rng = Rng(b"parse")
    for lam in (0, 8, 32, 64):
        for extra in range(0, 64, 8):
            y = rng.randbytes((lam + extra) // 8)
            u1, u2 = parse(lam, y)
            assert u1 + u2 == y and len(u2) == lam // 8


def check_group_homomorphism():
    g = _group()
    rng = Rng(b"hom")
    for _ in range(25):
        a, b = rng.randbelow(g.q), rng.randbelow(g.q)
        lhs = group_mul(g, group_exp(g, g.g, a), group_exp(g, g.g, b))
        assert lhs == group_exp(g, g.g, (a + b) % g.q)


def check_padding():
    rng = Rng(b"pad")
    for size in (0, 1, 13, _CFG.sigma_bytes - 4):
        data = rng.randbytes(size)
        assert unpad_message(pad_message(data, _CFG.sigma)) == data
    bad = bytearray(pad_message(b"x", _CFG.sigma))
    bad[-1] ^= 1
    try:
        unpad_message(bytes(bad))
    except PaddingError:
        return
    raise AssertionError("tampered padding accepted")


def check_hash_lengths():
    for sigma in (8, 256, 1024):
        assert len(hash_H(b"x", sigma)) == sigma // 8
    assert len(hash_G(b"x", 256, 128)) == (256 + 128) // 8
    assert hash_H(b"x", 256) != hash_G(b"x", 256, 32)[:32]


# -- ahe ----------------------------------------------------------------------


def check_ahe_roundtrip():
    keys = _ahe_keys()
    rng = Rng(b"rt")
    for _ in range(30):
        m = rng.randbelow(keys.pk.n)
        assert ahe.dec(keys.sk, ahe.enc(keys.pk, m, rng)) == m


def check_ahe_homomorphism():
    keys = _ahe_keys()
    rng = Rng(b"homs")
    n = keys.pk.n
    for _ in range(15):
        m1, m2, k = rng.randbelow(n), rng.randbelow(n), rng.randbelow(1 << 64)
        total = ahe.hom_add(keys.pk, ahe.enc(keys.pk, m1, rng), ahe.enc(keys.pk, m2, rng))
        assert ahe.dec(keys.sk, total) == (m1 + m2) % n
        scaled = ahe.hom_scale(keys.pk, ahe.enc(keys.pk, m1, rng), k)
        assert ahe.dec(keys.sk, scaled) == m1 * k % n


def check_ahe_one_hot():
    keys = _ahe_keys()
    rng = Rng(b"onehot")
    for z in (1, 4):
        vals = [rng.randbelow(keys.pk.n) for _ in range(z)]
        for v in range(z):
            hot = ahe.encrypt_one_hot(keys.pk, z, v, rng)
            assert ahe.dec(keys.sk, ahe.hom_select(keys.pk, hot, vals)) == vals[v]


# -- protocols ----------------------------------------------------------------


def check_naor_pinkas():
    g = _group()
    rng = Rng(b"np")
    for s in (0, 1):
        for _ in range(5):
            m0, m1 = _msg(rng), _msg(rng)
            q, sp = np_ot.gen_query(g, s, rng)
            res = np_ot.gen_res(_CFG, m0, m1, g, q, rng)
            assert np_ot.retrieve(_CFG, res, sp, g) == (m0, m1)[s]


def check_dq_all_share_combos():
    g = _group()
    rng = Rng(b"dqgrid")
    for s in (0, 1):
        for s1 in (0, 1):
            for _ in range(5):
                m0, m1 = _msg(rng), _msg(rng)
                s2 = s1 ^ s
                r1, r2 = rng.randbelow(g.q), rng.randbelow(g.q)
                state = dq.ReceiverState(s=s, s1=s1, s2=s2, r1=r1, r2=r2)
                q2 = dq.p2_gen_query(dq.DelegationRequest(s2, r2), g)
                q1 = dq.p1_gen_query(dq.DelegationRequest(s1, r1), q2, g)
                res = dq.gen_res(_CFG, m0, m1, g, q1, rng)
                assert dq.retrieve(_CFG, res, state, g) == (m0, m1)[s]


def check_dq_abort_on_tamper():
    g = _group()
    rng = Rng(b"tamper")
    _, req2, state = dq.request(_CFG, g, 0, rng)
    q2 = dq.p2_gen_query(req2, g)
    q1 = dq.p1_gen_query(dq.DelegationRequest(state.s1, state.r1), q2, g)
    bad = dq.FinalQuery(beta0=q1.beta0, beta1=group_mul(g, q1.beta1, g.g))
    try:
        dq.gen_res(_CFG, b"a", b"b", g, bad, rng)
    except AbortError:
        return
    raise AssertionError("tampered query not rejected")


def check_duq_paths():
    g = _group()
    rng = Rng(b"duq")
    for s in (0, 1):
        for s1 in (0, 1):
            for forced in (0, 1):
                m0, m1 = _msg(rng), _msg(rng)
                s2 = s1 ^ s
                r3 = rng.randbytes(_CFG.lam_bytes)
                r1, r2 = duq.r_request(g, rng)
                q2 = duq.p2_gen_query(r2, s2, g)
                q1 = duq.p1_gen_query(r1, s1, q2, g)
                res = duq.gen_res(_CFG, m0, m1, g, q1, r3, rng, _forced_swap=forced)
                got = duq.retrieve(_CFG, res, r1, r2, (s2, r3), g)
                assert got == (m0, m1)[s]


def check_multireceiver():
    g = _group()
    rng = Rng(b"mr")
    z = 3
    matrix = mr.MessageMatrix(
        pairs=tuple((_msg(rng), _msg(rng)) for _ in range(z))
    )
    keys = _ahe_keys()
    for s in (0, 1):
        for v in range(z):
            _, req2, state = dq.request(_CFG, g, s, rng)
            q2 = dq.p2_gen_query(req2, g)
            q1 = dq.p1_gen_query(dq.DelegationRequest(state.s1, state.r1), q2, g)
            res = mr.dqmr_gen_res(_CFG, matrix, g, q1, rng)
            got = mr.retrieve_known_index(_CFG, mr.dqmr_obl_filter(res, v), state, g)
            assert got == matrix.pairs[v][s]

            vector = mr.duqmr_t_setup(z, v, keys.pk, rng)
            issued = duq.t_request(_CFG, s, rng)
            r1, r2 = duq.r_request(g, rng)
            q2 = duq.p2_gen_query(r2, issued.share2, g)
            q1 = duq.p1_gen_query(r1, issued.share1, q2, g)
            tagged = mr.duqmr_gen_res(_CFG, matrix, g, q1, issued.sp_sender, rng)
            filtered = mr.duqmr_obl_filter(_CFG, g, tagged, vector, keys.pk)
            got = mr.duqmr_retrieve(_CFG, filtered, r1, r2, keys.sk, g, issued.sp_receiver)
            assert got == matrix.pairs[v][s]


def check_compiler():
    g = _group()
    rng = Rng(b"compiler")
    suite = compiler.compile_suite(np_ot.one_of_n_suite(4))
    keys = _ahe_keys()
    messages = [_msg(rng) for _ in range(4)]
    sizes = set()
    for s in range(4):
        q, sp = suite.gen_query(_CFG, g, keys.pk, s, rng)
        res = suite.gen_res(_CFG, messages, g, keys.pk, q, rng)
        sizes.add(len(res.slots))
        assert suite.retrieve(_CFG, res, q, sp, g, keys.sk) == messages[s]
    assert sizes == {suite.w}


def check_supersonic():
    rng = Rng(b"ss")
    for s1 in (0, 1):
        for s2 in (0, 1):
            s = s1 ^ s2
            m0, m1 = _msg(rng), _msg(rng)
            keys = ss.setup(_CFG, rng)
            pair = ss.gen_res(_CFG, m0, m1, keys, s1)
            final = ss.obl_filter(pair, s2)
            assert ss.retrieve(_CFG, final, keys, s) == (m0, m1)[s]
            expected = xor_bytes(
                pad_message((m0, m1)[s], _CFG.sigma), (keys.k0, keys.k1)[s]
            )
            assert final == expected


def check_harness():
    rng = Rng(b"harness")
    g = _group()
    m0, m1 = _msg(rng), _msg(rng)
    first = run_session("dq", {Role.S: (m0, m1), Role.R: 1}, seed=11, config=_CFG, group=g)
    again = run_session("dq", {Role.S: (m0, m1), Role.R: 1}, seed=11, config=_CFG, group=g)
    assert first.outputs[Role.R] == m1
    assert first.log.encode_all() == again.log.encode_all()
    assert assert_sender_push(first.log)

    pairs = [(_msg(rng), _msg(rng)) for _ in range(4)]
    runner = strawman_fixture(2)
    leaked = runner({Role.S: pairs, Role.R: (1, 2)}, seed=3, config=_CFG, group=g)
    assert leaked.outputs[Role.R] == pairs[2][1]
    assert not assert_sender_push(leaked.log)


@dataclass
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str = ""


SUITES = {
    "primitives": [
        check_share_xor,
        check_swap_involution,
        check_parse_roundtrip,
        check_group_homomorphism,
        check_padding,
        check_hash_lengths,
    ],
    "ahe": [check_ahe_roundtrip, check_ahe_homomorphism, check_ahe_one_hot],
    "naor-pinkas": [check_naor_pinkas],
    "dq": [check_dq_all_share_combos, check_dq_abort_on_tamper],
    "duq": [check_duq_paths],
    "mr": [check_multireceiver],
    "compiler": [check_compiler],
    "supersonic": [check_supersonic],
    "harness": [check_harness],
}


def run_suite(which="all"):
    if which == "all":
        names = list(SUITES)
    elif which in SUITES:
        names = [which]
    else:
        raise KeyError(f"unknown suite {which!r}")
    results = []
    for suite in names:
        for check in SUITES[suite]:
            try:
                check()
                results.append(CheckResult(suite, check.__name__, True))
            except Exception as exc:  # noqa: BLE001 - report, don't crash
                results.append(CheckResult(suite, check.__name__, False, str(exc)))
    return results
