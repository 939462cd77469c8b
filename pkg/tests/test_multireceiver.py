import pytest

from conftest import random_message
from straightline import two_message_response

from oblivis import ahe, dq, duq, multireceiver as mr
from oblivis.errors import AbortError, KeyMismatchError, ParameterError
from oblivis.harness import ParallelMapper
from oblivis.rng import Rng



def make_matrix(cfg, rng, z):
    return mr.MessageMatrix(
        pairs=tuple((random_message(cfg, rng), random_message(cfg, rng)) for _ in range(z))
    )


def dq_query(cfg, group, s, rng):
    req1, req2, state = dq.request(cfg, group, s, rng)
    q2 = dq.p2_gen_query(req2, group)
    return dq.p1_gen_query(req1, q2, group), state


def duq_query(cfg, group, s, rng):
    issued = duq.t_request(cfg, s, rng)
    r1, r2 = duq.r_request(group, rng)
    q2 = duq.p2_gen_query(r2, issued.share2, group)
    q1 = duq.p1_gen_query(r1, issued.share1, q2, group)
    return q1, issued, r1, r2


class TestKnownIndexVariant:
    @pytest.mark.parametrize("z", [1, 4, 16])
    def test_response_shape(self, cfg, group, rng, z):
        matrix = make_matrix(cfg, rng, z)
        q1, _ = dq_query(cfg, group, 0, rng)
        res = mr.dqmr_gen_res(cfg, matrix, group, q1, rng)
        assert len(res) == z

    def test_single_pair_matches_single_protocol_shape(self, cfg, group, rng):
        matrix = make_matrix(cfg, rng, 1)
        q1, state = dq_query(cfg, group, 1, rng)
        res = mr.dqmr_gen_res(cfg, matrix, group, q1, rng)
        got = mr.retrieve_known_index(cfg, mr.dqmr_obl_filter(res, 0), state, group)
        assert got == matrix.pairs[0][1]

    def test_filter_picks_exact_pair(self, cfg, group, rng):
        matrix = make_matrix(cfg, rng, 3)
        q1, _ = dq_query(cfg, group, 0, rng)
        res = mr.dqmr_gen_res(cfg, matrix, group, q1, rng)
        assert mr.dqmr_obl_filter(res, 2) is res[2]

    def test_filter_bounds(self, cfg, group, rng):
        matrix = make_matrix(cfg, rng, 2)
        q1, _ = dq_query(cfg, group, 0, rng)
        res = mr.dqmr_gen_res(cfg, matrix, group, q1, rng)
        with pytest.raises(ParameterError):
            mr.dqmr_obl_filter(res, 2)

    def test_exhaustive_grid_z4(self, cfg, group):
        rng = Rng(b"dqmr-grid")
        matrix = make_matrix(cfg, rng, 4)
        for s in (0, 1):
            for v in range(4):
                q1, state = dq_query(cfg, group, s, rng)
                res = mr.dqmr_gen_res(cfg, matrix, group, q1, rng)
                got = mr.retrieve_known_index(cfg, mr.dqmr_obl_filter(res, v), state, group)
                assert got == matrix.pairs[v][s]

    def test_abort_on_tampered_query(self, cfg, group, rng):
        from oblivis.primitives import group_mul

        matrix = make_matrix(cfg, rng, 2)
        q1, _ = dq_query(cfg, group, 0, rng)
        bad = dq.FinalQuery(beta0=q1.beta0, beta1=group_mul(group, q1.beta1, group.g))
        with pytest.raises(AbortError):
            mr.dqmr_gen_res(cfg, matrix, group, bad, rng)

    def test_seeded_transcript_matches_oracle(self, toy_cfg, toy_group):
        g = toy_group
        rng = Rng(b"mr-oracle")
        m = mr.MessageMatrix(pairs=((b"a0", b"b0"), (b"a1", b"b1")))
        q1, _ = dq_query(toy_cfg, g, 0, rng)
        res = mr.dqmr_gen_res(toy_cfg, m, g, q1, Rng(b"mr-ys"))
        nonce = Rng(b"mr-ys").randbytes(32)
        for t in range(2):
            slot_rng = Rng(nonce + t.to_bytes(4, "big"))
            y0 = slot_rng.randbelow(g.q)
            y1 = slot_rng.randbelow(g.q)
            expected = two_message_response(
                g.p, g.g, toy_cfg.sigma, q1.beta0, q1.beta1, y0, y1, *m.pairs[t]
            )
            assert res[t].slots() == expected

    def test_parallel_mapper_equals_sequential(self, cfg, group, rng):
        matrix = make_matrix(cfg, rng, 8)
        q1, _ = dq_query(cfg, group, 0, rng)
        seq = mr.dqmr_gen_res(cfg, matrix, group, q1, Rng(b"par"))
        par = mr.dqmr_gen_res(cfg, matrix, group, q1, Rng(b"par"), mapper=ParallelMapper())
        assert seq == par

    def test_repeated_calls_draw_fresh_randomness(self, cfg, group, rng):
        matrix = make_matrix(cfg, rng, 2)
        q1, _ = dq_query(cfg, group, 0, rng)
        shared = Rng(b"shared-stream")
        first = mr.dqmr_gen_res(cfg, matrix, group, q1, shared)
        second = mr.dqmr_gen_res(cfg, matrix, group, q1, shared)
        assert first != second


class TestHiddenIndexVariant:
    def test_setup_capacity(self, cfg, rng):
        keys = mr.duqmr_r_setup(cfg, rng)
        assert keys.plaintext_bits >= max(cfg.group_bits, cfg.sigma + cfg.lam) + 8

    def test_one_hot_vector(self, ahe_keys, rng):
        vec = mr.duqmr_t_setup(4, 2, ahe_keys.pk, rng)
        opened = [ahe.dec(ahe_keys.sk, c) for c in vec.slots]
        assert opened == [0, 0, 1, 0]

    def test_single_slot_vector(self, ahe_keys, rng):
        vec = mr.duqmr_t_setup(1, 0, ahe_keys.pk, rng)
        assert vec.z == 1
        assert ahe.dec(ahe_keys.sk, vec.slots[0]) == 1

    def test_vector_bounds(self, ahe_keys, rng):
        with pytest.raises(ParameterError):
            mr.duqmr_t_setup(3, 3, ahe_keys.pk, rng)

    def test_tagged_response_shape(self, cfg, group, rng):
        matrix = make_matrix(cfg, rng, 4)
        q1, issued, _, _ = duq_query(cfg, group, 0, rng)
        res = mr.duqmr_gen_res(cfg, matrix, group, q1, issued.sp_sender, rng)
        assert len(res) == 4
        for pair in res:
            assert isinstance(pair, duq.TaggedResponsePair)

    def test_per_pair_swap_frequency(self, toy_cfg, toy_group):
        rng = Rng(b"mr-swaps")
        matrix = mr.MessageMatrix(pairs=((b"x", b"y"),))
        swaps = 0
        runs = 1000
        for _ in range(runs):
            q1, issued, r1, r2 = duq_query(toy_cfg, toy_group, 0, rng)
            res = mr.duqmr_gen_res(toy_cfg, matrix, toy_group, q1, issued.sp_sender, rng)
            s2, r3 = issued.sp_receiver
            x = dq.choice_exponent(r1, r2, s2, toy_group.q)
            _, u2 = duq.open_tagged_slot(toy_cfg, toy_group, res[0].slots()[0], x)
            if u2 != r3:
                swaps += 1
        assert 0.45 <= swaps / runs <= 0.55

    def test_filter_output_is_always_four_ciphertexts(self, cfg, group, ahe_keys, rng):
        for z in (1, 5):
            matrix = make_matrix(cfg, rng, z)
            q1, issued, _, _ = duq_query(cfg, group, 0, rng)
            res = mr.duqmr_gen_res(cfg, matrix, group, q1, issued.sp_sender, rng)
            vec = mr.duqmr_t_setup(z, 0, ahe_keys.pk, rng)
            filtered = mr.duqmr_obl_filter(cfg, group, res, vec, ahe_keys.pk)
            assert len([c for row in filtered.grid() for c in row]) == 4

    def test_filter_selects_pair_exactly(self, cfg, group, ahe_keys, rng):
        z = 4
        matrix = make_matrix(cfg, rng, z)
        q1, issued, _, _ = duq_query(cfg, group, 0, rng)
        res = mr.duqmr_gen_res(cfg, matrix, group, q1, issued.sp_sender, rng)
        masked_width = cfg.sigma_bytes + cfg.lam_bytes
        for v in range(z):
            vec = mr.duqmr_t_setup(z, v, ahe_keys.pk, rng)
            filtered = mr.duqmr_obl_filter(cfg, group, res, vec, ahe_keys.pk)
            for i, row in enumerate(filtered.grid()):
                head = ahe.dec(ahe_keys.sk, row[0])
                body = ahe.dec(ahe_keys.sk, row[1]).to_bytes(masked_width, "big")
                assert (head, body) == res[v].slots()[i]

    def test_full_pipeline_grid(self, cfg, group, ahe_keys):
        rng = Rng(b"duqmr-grid")
        z = 4
        matrix = make_matrix(cfg, rng, z)
        for s in (0, 1):
            for v in range(z):
                q1, issued, r1, r2 = duq_query(cfg, group, s, rng)
                res = mr.duqmr_gen_res(cfg, matrix, group, q1, issued.sp_sender, rng)
                vec = mr.duqmr_t_setup(z, v, ahe_keys.pk, rng)
                filtered = mr.duqmr_obl_filter(cfg, group, res, vec, ahe_keys.pk)
                got = mr.duqmr_retrieve(
                    cfg, filtered, r1, r2, ahe_keys.sk, group, issued.sp_receiver
                )
                assert got == matrix.pairs[v][s]

    def test_wrong_secret_key_rejected(self, cfg, group, ahe_keys, rng):
        matrix = make_matrix(cfg, rng, 2)
        q1, issued, r1, r2 = duq_query(cfg, group, 0, rng)
        res = mr.duqmr_gen_res(cfg, matrix, group, q1, issued.sp_sender, rng)
        vec = mr.duqmr_t_setup(2, 0, ahe_keys.pk, rng)
        filtered = mr.duqmr_obl_filter(cfg, group, res, vec, ahe_keys.pk)
        other = ahe.kgen(ahe_keys.plaintext_bits, Rng(b"other"))
        with pytest.raises(KeyMismatchError):
            mr.duqmr_retrieve(cfg, filtered, r1, r2, other.sk, group, issued.sp_receiver)

    def test_sender_never_receives_record_index(self):
        # structural: neither response generator takes v
        import inspect

        for fn in (mr.dqmr_gen_res, mr.duqmr_gen_res):
            assert "v" not in inspect.signature(fn).parameters
