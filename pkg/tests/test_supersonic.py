import pytest

from conftest import random_message
from straightline import SWAP_PARITY_ROWS, pad_and_swap_forwarded

from oblivis import counters, supersonic as ss
from oblivis.errors import ParameterError, SessionError
from oblivis.primitives import pad_message, xor_bytes
from oblivis.rng import Rng


class TestSetupAndQuery:
    def test_key_lengths(self, cfg, rng):
        keys = ss.setup(cfg, rng)
        assert len(keys.k0) == cfg.sigma_bytes and len(keys.k1) == cfg.sigma_bytes

    def test_keys_independent(self, cfg, rng):
        keys = ss.setup(cfg, rng)
        assert keys.k0 != keys.k1

    def test_seeded_reproducibility(self, cfg):
        assert ss.setup(cfg, Rng(b"k")) == ss.setup(cfg, Rng(b"k"))

    def test_share_identities(self, cfg, rng):
        for s in (0, 1):
            s1, s2 = ss.gen_query(cfg, s, rng)
            assert s1 ^ s2 == s

    def test_share_uniformity(self, cfg):
        rng = Rng(b"ss-chi")
        ones = sum(ss.gen_query(cfg, 1, rng)[0] for _ in range(10_000))
        stat = (ones - 5000) ** 2 / 5000 + ((10_000 - ones) - 5000) ** 2 / 5000
        assert stat < 6.634896601


class TestResponsePath:
    def test_no_swap_case(self, cfg, rng):
        keys = ss.setup(cfg, rng)
        pair = ss.gen_res(cfg, b"m0", b"m1", keys, 0)
        assert pair[0] == xor_bytes(pad_message(b"m0", cfg.sigma), keys.k0)

    def test_swap_case(self, cfg, rng):
        keys = ss.setup(cfg, rng)
        pair = ss.gen_res(cfg, b"m0", b"m1", keys, 1)
        assert pair[0] == xor_bytes(pad_message(b"m1", cfg.sigma), keys.k1)

    @pytest.mark.parametrize("s1,s2,s", SWAP_PARITY_ROWS)
    def test_swap_parity_table(self, cfg, rng, s1, s2, s):
        # the forwarded element is always the pad encryption of m_{s1^s2}
        m0, m1 = b"row zero", b"row one"
        keys = ss.setup(cfg, rng)
        forwarded = ss.obl_filter(ss.gen_res(cfg, m0, m1, keys, s1), s2)
        assert forwarded == pad_and_swap_forwarded(m0, m1, keys.k0, keys.k1, cfg.sigma, s1, s2)
        assert ss.retrieve(cfg, forwarded, keys, s) == (m0, m1)[s]

    def test_bulk_random_roundtrips(self, cfg):
        rng = Rng(b"ss-bulk")
        for i in range(10_000):
            s = i & 1
            m0 = random_message(cfg, rng)
            m1 = random_message(cfg, rng)
            keys = ss.setup(cfg, rng)
            s1, s2 = ss.gen_query(cfg, s, rng)
            got = ss.retrieve(cfg, ss.obl_filter(ss.gen_res(cfg, m0, m1, keys, s1), s2), keys, s)
            assert got == (m0, m1)[s]

    def test_wrong_length_rejected(self, cfg, rng):
        keys = ss.setup(cfg, rng)
        with pytest.raises(ParameterError):
            ss.retrieve(cfg, b"short", keys, 0)

    def test_no_public_key_operations(self, cfg, rng):
        with counters.track() as t:
            keys = ss.setup(cfg, rng)
            s1, s2 = ss.gen_query(cfg, 1, rng)
            final = ss.obl_filter(ss.gen_res(cfg, b"a", b"b", keys, s1), s2)
            ss.retrieve(cfg, final, keys, 1)
        assert t.pubkey_ops == 0 and t.group_mul == 0


class TestSessionBinding:
    def test_single_use(self, cfg, rng):
        session = ss.SupersonicSession(cfg)
        session.setup(rng)
        s1, s2 = session.gen_query(0, rng)
        session.gen_res(b"a", b"b", s1)
        with pytest.raises(SessionError):
            session.gen_res(b"a", b"b", s1)

    def test_setup_twice_rejected(self, cfg, rng):
        session = ss.SupersonicSession(cfg)
        session.setup(rng)
        with pytest.raises(SessionError):
            session.setup(rng)

    def test_respond_before_setup_rejected(self, cfg, rng):
        session = ss.SupersonicSession(cfg)
        with pytest.raises(SessionError):
            session.gen_res(b"a", b"b", 0)

    def test_full_session_flow(self, cfg, rng):
        session = ss.SupersonicSession(cfg, session_id=b"sess-1")
        session.setup(rng)
        s1, s2 = session.gen_query(1, rng)
        final = session.obl_filter(session.gen_res(b"m0", b"m1", s1), s2)
        assert session.retrieve(final, 1) == b"m1"
