"""Multi-party session harness.

Each protocol role runs as an independent generator-based state machine
that only ever sees envelopes addressed to it; a driver delivers envelopes
FIFO through a transport and records every frame in an append-only routing
log. One master seed fans out into per-role streams, so a fixed seed yields
a byte-identical log; the optional parallel mapper only parallelizes
per-record response loops whose randomness is derived per index, which
keeps parallel and sequential logs identical.
"""

import socket
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from . import ahe, compiler, dq, duq, multireceiver as mr, naor_pinkas as np_ot
from . import supersonic as ss
from . import wire
from .errors import AbortError, ParameterError
from .primitives import GroupParams, TEST_PROFILE, group_for
from .rng import Rng
from .wire import Kind, PartyEnvelope, Role

PROTOCOLS = ("naor-pinkas", "dq", "duq", "dqmr", "duqmr", "compiled", "supersonic")


@dataclass
class RoutingLog:
    entries: list = field(default_factory=list)

    def append(self, env):
        self.entries.append(env)

    def __len__(self):
        return len(self.entries)

    def bytes_to_role(self, role):
        role = Role[role] if isinstance(role, str) else role
        return sum(len(e.payload) for e in self.entries if e.to_role == role)

    def kinds(self):
        return [e.kind for e in self.entries]

    def encode_all(self):
        return b"".join(e.encode() for e in self.entries)

    def export_lines(self):
        return [
            f"{e.session_id.hex()} {e.from_role.name} {e.to_role.name} "
            f"{e.kind.name} {e.seq} {e.payload.hex()}"
            for e in self.entries
        ]


def bytes_to_role(log, role):
    return log.bytes_to_role(role)


def assert_sender_push(log):
    """True iff the receiver never sends a frame directly to the sender."""
    return not any(
        e.from_role == Role.R and e.to_role == Role.S for e in log.entries
    )


class InProcessTransport:
    """Delivers envelopes as-is."""

    def transmit(self, env):
        return env

    def close(self):
        pass


class SocketTransport:
    """Round-trips every envelope through a loopback stream socket using
    the length-prefixed wire encoding, so the logged frames are exactly
    what crossed a real socket."""

    def __init__(self):
        self._a, self._b = socket.socketpair()

    def transmit(self, env):
        data = env.encode()
        self._a.sendall(data)
        buf = b""
        while len(buf) < len(data):
            buf += self._b.recv(65536)
        decoded, _ = PartyEnvelope.decode(buf)
        return decoded

    def close(self):
        self._a.close()
        self._b.close()


def sequential_mapper(fn, items):
    return [fn(item) for item in items]


class ParallelMapper:
    """Order-preserving thread-pool map for per-record response loops."""

    def __init__(self, workers=4):
        self.workers = workers

    def __call__(self, fn, items):
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            return list(pool.map(fn, items))


@dataclass
class SessionResult:
    outputs: dict
    log: RoutingLog
    deliveries: dict


class _RoleIO:
    def __init__(self, driver, role):
        self._driver = driver
        self.role = role
        self.output = None
        self.has_output = False

    def send(self, to_role, kind, payload):
        self._driver.post(self.role, to_role, kind, payload)

    def set_output(self, value):
        self.output = value
        self.has_output = True


class _Driver:
    def __init__(self, session_id, transport, log):
        self.session_id = session_id
        self.transport = transport
        self.log = log
        self.queue = []
        self.seq = 0
        self.ios = {}
        self.gens = {}
        self.deliveries = {}
        self.current_role = None

    def add_role(self, role, gen_factory):
        io = _RoleIO(self, role)
        self.ios[role] = io
        self.gens[role] = gen_factory(io)
        self.deliveries[role] = []

    def post(self, from_role, to_role, kind, payload):
        env = PartyEnvelope(
            session_id=self.session_id,
            from_role=from_role,
            to_role=to_role,
            kind=kind,
            payload=payload,
            seq=self.seq,
        )
        self.seq += 1
        env = self.transport.transmit(env)
        self.log.append(env)
        self.queue.append(env)

    def run(self):
        for role, gen in self.gens.items():
            self.current_role = role
            self._advance(gen, None, prime=True)
        while self.queue:
            env = self.queue.pop(0)
            role = env.to_role
            if role not in self.gens:
                raise ParameterError(f"envelope for absent role {role.name}")
            self.deliveries[role].append(env)
            self.current_role = role
            self._advance(self.gens[role], env)
        outputs = {}
        for role, io in self.ios.items():
            if io.has_output:
                outputs[role] = io.output
        return outputs

    def _advance(self, gen, env, prime=False):
        try:
            if prime:
                next(gen)
            else:
                gen.send(env)
        except StopIteration:
            pass
        except AbortError as exc:
            raise AbortError(
                str(exc), role=self.current_role.name, phase=exc.phase
            ) from exc


def _collect(kinds):
    """Generator helper: yield until one envelope of every kind arrived."""
    got = {}
    while set(kinds) - got.keys():
        env = yield
        got[env.kind] = env
    return got


# -- role state machines -----------------------------------------------------


def _np_sender(io, cfg, group, m0, m1, rng):
    io.send(Role.R, Kind.PUBLIC_KEY, group.serialize())
    env = yield
    query = wire.dec_np_query(group, env.payload)
    res = np_ot.gen_res(cfg, m0, m1, group, query, rng)
    io.send(Role.R, Kind.RESPONSE, wire.enc_response_pair(group, res))


def _np_receiver(io, cfg, s, rng):
    env = yield
    pk = GroupParams.deserialize(env.payload)
    query, secret = np_ot.gen_query(pk, s, rng)
    io.send(Role.S, Kind.QUERY, wire.enc_np_query(pk, query))
    env = yield
    res = wire.dec_response_pair(pk, cfg, env.payload)
    io.set_output(np_ot.retrieve(cfg, res, secret, pk))


def _dq_sender(io, cfg, group, m0, m1, rng, audience):
    for role in audience:
        io.send(role, Kind.PUBLIC_KEY, group.serialize())
    env = yield
    q1 = wire.dec_final_query(group, env.payload)
    res = dq.gen_res(cfg, m0, m1, group, q1, rng)
    io.send(Role.R, Kind.RESPONSE, wire.enc_response_pair(group, res))


def _dq_receiver(io, cfg, s, rng):
    env = yield
    pk = GroupParams.deserialize(env.payload)
    req1, req2, state = dq.request(cfg, pk, s, rng)
    io.send(Role.P1, Kind.REQUEST, wire.enc_request(pk, req1))
    io.send(Role.P2, Kind.REQUEST, wire.enc_request(pk, req2))
    env = yield
    res = wire.dec_response_pair(pk, cfg, env.payload)
    io.set_output(dq.retrieve(cfg, res, state, pk))


def _dq_proxy2(io):
    got = yield from _collect([Kind.PUBLIC_KEY, Kind.REQUEST])
    pk = GroupParams.deserialize(got[Kind.PUBLIC_KEY].payload)
    req2 = wire.dec_request(pk, got[Kind.REQUEST].payload)
    q2 = dq.p2_gen_query(req2, pk)
    io.send(Role.P1, Kind.PARTIAL_QUERY, wire.enc_partial_query(pk, q2))


def _dq_proxy1(io):
    got = yield from _collect([Kind.PUBLIC_KEY, Kind.REQUEST, Kind.PARTIAL_QUERY])
    pk = GroupParams.deserialize(got[Kind.PUBLIC_KEY].payload)
    req1 = wire.dec_request(pk, got[Kind.REQUEST].payload)
    q2 = wire.dec_partial_query(pk, got[Kind.PARTIAL_QUERY].payload)
    q1 = dq.p1_gen_query(req1, q2, pk)
    io.send(Role.S, Kind.FINAL_QUERY, wire.enc_final_query(pk, q1))


def _duq_sender(io, cfg, group, m0, m1, rng):
    for role in (Role.R, Role.T, Role.P1, Role.P2):
        io.send(role, Kind.PUBLIC_KEY, group.serialize())
    got = yield from _collect([Kind.ISSUER_TAG_S, Kind.FINAL_QUERY])
    r3 = got[Kind.ISSUER_TAG_S].payload
    q1 = wire.dec_final_query(group, got[Kind.FINAL_QUERY].payload)
    res = duq.gen_res(cfg, m0, m1, group, q1, r3, rng)
    io.send(Role.R, Kind.TAGGED_RESPONSE, wire.enc_response_pair(group, res))


def _duq_receiver(io, cfg, rng):
    env = yield
    pk = GroupParams.deserialize(env.payload)
    r1, r2 = duq.r_request(pk, rng)
    io.send(Role.P1, Kind.REQUEST, wire.enc_exponent(pk, r1))
    io.send(Role.P2, Kind.REQUEST, wire.enc_exponent(pk, r2))
    got = yield from _collect([Kind.ISSUER_TAG_R, Kind.TAGGED_RESPONSE])
    tag_payload = got[Kind.ISSUER_TAG_R].payload
    sp_receiver = (tag_payload[0], tag_payload[1:])
    res = wire.dec_response_pair(pk, cfg, got[Kind.TAGGED_RESPONSE].payload, tagged=True)
    io.set_output(duq.retrieve(cfg, res, r1, r2, sp_receiver, pk))


def _duq_issuer(io, cfg, s, rng):
    yield  # PUBLIC_KEY
    issued = duq.t_request(cfg, s, rng)
    io.send(Role.P1, Kind.ISSUER_SHARE, bytes([issued.share1]))
    io.send(Role.P2, Kind.ISSUER_SHARE, bytes([issued.share2]))
    io.send(Role.S, Kind.ISSUER_TAG_S, issued.sp_sender)
    io.send(Role.R, Kind.ISSUER_TAG_R, bytes([issued.share2]) + issued.sp_sender)


def _duq_proxy2(io):
    got = yield from _collect([Kind.PUBLIC_KEY, Kind.REQUEST, Kind.ISSUER_SHARE])
    pk = GroupParams.deserialize(got[Kind.PUBLIC_KEY].payload)
    r2 = wire.dec_exponent(pk, got[Kind.REQUEST].payload)
    s2 = got[Kind.ISSUER_SHARE].payload[0]
    q2 = duq.p2_gen_query(r2, s2, pk)
    io.send(Role.P1, Kind.PARTIAL_QUERY, wire.enc_partial_query(pk, q2))


def _duq_proxy1(io):
    got = yield from _collect(
        [Kind.PUBLIC_KEY, Kind.REQUEST, Kind.ISSUER_SHARE, Kind.PARTIAL_QUERY]
    )
    pk = GroupParams.deserialize(got[Kind.PUBLIC_KEY].payload)
    r1 = wire.dec_exponent(pk, got[Kind.REQUEST].payload)
    s1 = got[Kind.ISSUER_SHARE].payload[0]
    q2 = wire.dec_partial_query(pk, got[Kind.PARTIAL_QUERY].payload)
    q1 = duq.p1_gen_query(r1, s1, q2, pk)
    io.send(Role.S, Kind.FINAL_QUERY, wire.enc_final_query(pk, q1))


def _dqmr_sender(io, cfg, group, matrix, rng, mapper):
    for role in (Role.R, Role.P1, Role.P2):
        io.send(role, Kind.PUBLIC_KEY, group.serialize())
    env = yield
    q1 = wire.dec_final_query(group, env.payload)
    res = mr.dqmr_gen_res(cfg, matrix, group, q1, rng, mapper=mapper)
    io.send(Role.P1, Kind.MATRIX_RESPONSE, wire.enc_matrix_response(group, res))


def _dqmr_proxy1(io, cfg, v):
    got = yield from _collect([Kind.PUBLIC_KEY, Kind.REQUEST, Kind.PARTIAL_QUERY])
    pk = GroupParams.deserialize(got[Kind.PUBLIC_KEY].payload)
    req1 = wire.dec_request(pk, got[Kind.REQUEST].payload)
    q2 = wire.dec_partial_query(pk, got[Kind.PARTIAL_QUERY].payload)
    io.send(Role.S, Kind.FINAL_QUERY, wire.enc_final_query(pk, dq.p1_gen_query(req1, q2, pk)))
    env = yield
    pairs = wire.dec_matrix_response(pk, cfg, env.payload)
    picked = mr.dqmr_obl_filter(pairs, v)
    io.send(Role.R, Kind.RESPONSE, wire.enc_response_pair(pk, picked))
    io.set_output(len(pairs))


def _duqmr_sender(io, cfg, group, matrix, rng, mapper):
    for role in (Role.R, Role.T, Role.P1, Role.P2):
        io.send(role, Kind.PUBLIC_KEY, group.serialize())
    got = yield from _collect([Kind.ISSUER_TAG_S, Kind.FINAL_QUERY])
    r3 = got[Kind.ISSUER_TAG_S].payload
    q1 = wire.dec_final_query(group, got[Kind.FINAL_QUERY].payload)
    res = mr.duqmr_gen_res(cfg, matrix, group, q1, r3, rng, mapper=mapper)
    payload = len(res).to_bytes(4, "big") + b"".join(
        wire.enc_response_pair(group, pair) for pair in res
    )
    io.send(Role.P1, Kind.MATRIX_RESPONSE, payload)


def _duqmr_receiver(io, cfg, rng):
    env = yield
    pk = GroupParams.deserialize(env.payload)
    keys = mr.duqmr_r_setup(cfg, rng)
    # pk_j goes to the issuer (who encrypts under it) and the filtering
    # proxy (who computes under it); the sender never uses it, and an R->S
    # frame would break the sender-push property.
    io.send(Role.T, Kind.AHE_PUBLIC_KEY, keys.pk.serialize())
    io.send(Role.P1, Kind.AHE_PUBLIC_KEY, keys.pk.serialize())
    r1, r2 = duq.r_request(pk, rng)
    io.send(Role.P1, Kind.REQUEST, wire.enc_exponent(pk, r1))
    io.send(Role.P2, Kind.REQUEST, wire.enc_exponent(pk, r2))
    got = yield from _collect([Kind.ISSUER_TAG_R, Kind.FILTERED_RESPONSE])
    tag_payload = got[Kind.ISSUER_TAG_R].payload
    sp_receiver = (tag_payload[0], tag_payload[1:])
    res = wire.dec_filtered(got[Kind.FILTERED_RESPONSE].payload)
    io.set_output(mr.duqmr_retrieve(cfg, res, r1, r2, keys.sk, pk, sp_receiver))


def _duqmr_issuer(io, cfg, v, s, z, rng):
    got = yield from _collect([Kind.PUBLIC_KEY, Kind.AHE_PUBLIC_KEY])
    pk_j = ahe.AhePublicKey.deserialize(got[Kind.AHE_PUBLIC_KEY].payload)
    vector = mr.duqmr_t_setup(z, v, pk_j, rng)
    io.send(Role.P1, Kind.ONE_HOT_VECTOR, wire.enc_one_hot(pk_j, vector))
    issued = duq.t_request(cfg, s, rng)
    io.send(Role.P1, Kind.ISSUER_SHARE, bytes([issued.share1]))
    io.send(Role.P2, Kind.ISSUER_SHARE, bytes([issued.share2]))
    io.send(Role.S, Kind.ISSUER_TAG_S, issued.sp_sender)
    io.send(Role.R, Kind.ISSUER_TAG_R, bytes([issued.share2]) + issued.sp_sender)


def _duqmr_proxy1(io, cfg):
    got = yield from _collect(
        [
            Kind.PUBLIC_KEY,
            Kind.AHE_PUBLIC_KEY,
            Kind.ONE_HOT_VECTOR,
            Kind.REQUEST,
            Kind.ISSUER_SHARE,
            Kind.PARTIAL_QUERY,
        ]
    )
    pk = GroupParams.deserialize(got[Kind.PUBLIC_KEY].payload)
    pk_j = ahe.AhePublicKey.deserialize(got[Kind.AHE_PUBLIC_KEY].payload)
    vector = wire.dec_one_hot(got[Kind.ONE_HOT_VECTOR].payload)
    r1 = wire.dec_exponent(pk, got[Kind.REQUEST].payload)
    s1 = got[Kind.ISSUER_SHARE].payload[0]
    q2 = wire.dec_partial_query(pk, got[Kind.PARTIAL_QUERY].payload)
    q1 = duq.p1_gen_query(r1, s1, q2, pk)
    io.send(Role.S, Kind.FINAL_QUERY, wire.enc_final_query(pk, q1))
    env = yield
    pairs = wire.dec_matrix_response(pk, cfg, env.payload, tagged=True)
    filtered = mr.duqmr_obl_filter(cfg, pk, pairs, vector, pk_j)
    io.send(Role.R, Kind.FILTERED_RESPONSE, wire.enc_filtered(pk_j, filtered))
    io.set_output(len(pairs))


def _compiled_sender(io, cfg, group, messages, suite, rng):
    io.send(Role.R, Kind.PUBLIC_KEY, group.serialize())
    got = yield from _collect([Kind.AHE_PUBLIC_KEY, Kind.COMPILED_QUERY])
    pk_r = ahe.AhePublicKey.deserialize(got[Kind.AHE_PUBLIC_KEY].payload)
    query = wire.dec_compiled_query(group, got[Kind.COMPILED_QUERY].payload)
    res = suite.gen_res(cfg, messages, group, pk_r, query, rng)
    io.send(Role.R, Kind.COMPILED_RESPONSE, wire.enc_compiled_response(pk_r, res))


def _compiled_receiver(io, cfg, s, suite, rng):
    env = yield
    pk = GroupParams.deserialize(env.payload)
    keys = suite.setup_receiver(cfg, rng, pk=pk)
    io.send(Role.S, Kind.AHE_PUBLIC_KEY, keys.pk.serialize())
    query, secret = suite.gen_query(cfg, pk, keys.pk, s, rng)
    io.send(Role.S, Kind.COMPILED_QUERY, wire.enc_compiled_query(pk, keys.pk, query))
    env = yield
    res = wire.dec_compiled_response(env.payload)
    io.set_output(suite.retrieve(cfg, res, query, secret, pk, keys.sk))


def _ss_receiver(io, cfg, s, rng):
    keys = ss.setup(cfg, rng)
    io.send(Role.S, Kind.SS_KEYS, keys.k0 + keys.k1)
    s1, s2 = ss.gen_query(cfg, s, rng)
    io.send(Role.S, Kind.SS_SHARE_S, bytes([s1]))
    io.send(Role.P, Kind.SS_SHARE_P, bytes([s2]))
    env = yield
    io.set_output(ss.retrieve(cfg, env.payload, keys, s))


def _ss_sender(io, cfg, m0, m1):
    got = yield from _collect([Kind.SS_KEYS, Kind.SS_SHARE_S])
    raw = got[Kind.SS_KEYS].payload
    keys = ss.PadKeys(k0=raw[: cfg.sigma_bytes], k1=raw[cfg.sigma_bytes :])
    s1 = got[Kind.SS_SHARE_S].payload[0]
    pair = ss.gen_res(cfg, m0, m1, keys, s1)
    io.send(Role.P, Kind.SS_PAIR, pair[0] + pair[1])


def _ss_proxy(io, cfg):
    got = yield from _collect([Kind.SS_SHARE_P, Kind.SS_PAIR])
    s2 = got[Kind.SS_SHARE_P].payload[0]
    raw = got[Kind.SS_PAIR].payload
    pair = (raw[: cfg.sigma_bytes], raw[cfg.sigma_bytes :])
    io.send(Role.R, Kind.SS_FINAL, ss.obl_filter(pair, s2))


# -- session assembly --------------------------------------------------------


_REQUIRED_INPUTS = {
    "naor-pinkas": (Role.S, Role.R),
    "dq": (Role.S, Role.R),
    "duq": (Role.S, Role.T),
    "dqmr": (Role.S, Role.R, Role.P1),
    "duqmr": (Role.S, Role.T),
    "compiled": (Role.S, Role.R),
    "supersonic": (Role.S, Role.R),
}


def _normalize_inputs(protocol, inputs):
    out = {}
    for key, value in inputs.items():
        out[Role[key] if isinstance(key, str) else key] = value
    missing = [r.name for r in _REQUIRED_INPUTS[protocol] if r not in out]
    if missing:
        raise ParameterError(f"{protocol} needs inputs for roles {', '.join(missing)}")
    return out


def _as_matrix(value):
    if isinstance(value, mr.MessageMatrix):
        return value
    return mr.MessageMatrix(pairs=tuple(tuple(p) for p in value))


def run_session(
    protocol,
    inputs,
    seed,
    config=None,
    parallel=False,
    transport=None,
    group=None,
):
    """Execute one protocol session; returns per-role outputs and the log.

    Inputs follow each protocol's ideal functionality; roles with empty
    input are simply omitted, and roles with empty output are absent from
    the result.
    """
    if protocol not in PROTOCOLS:
        raise ParameterError(f"unknown protocol {protocol!r}")
    cfg = config or TEST_PROFILE
    inputs = _normalize_inputs(protocol, inputs)
    master = Rng.from_seed(seed)
    session_id = master.child("session-id").randbytes(16)
    transport = transport or InProcessTransport()
    mapper = ParallelMapper() if parallel else None
    log = RoutingLog()
    driver = _Driver(session_id, transport, log)
    rng_for = lambda name: master.child(f"role-{name}")

    if protocol != "supersonic" and group is None:
        group = group_for(cfg, master.child("group").randbytes(32))

    if protocol == "naor-pinkas":
        m0, m1 = inputs[Role.S]
        driver.add_role(Role.S, lambda io: _np_sender(io, cfg, group, m0, m1, rng_for("S")))
        driver.add_role(Role.R, lambda io: _np_receiver(io, cfg, inputs[Role.R], rng_for("R")))
    elif protocol == "dq":
        m0, m1 = inputs[Role.S]
        audience = (Role.R, Role.P1, Role.P2)
        driver.add_role(
            Role.S, lambda io: _dq_sender(io, cfg, group, m0, m1, rng_for("S"), audience)
        )
        driver.add_role(Role.R, lambda io: _dq_receiver(io, cfg, inputs[Role.R], rng_for("R")))
        driver.add_role(Role.P2, lambda io: _dq_proxy2(io))
        driver.add_role(Role.P1, lambda io: _dq_proxy1(io))
    elif protocol == "duq":
        m0, m1 = inputs[Role.S]
        driver.add_role(Role.S, lambda io: _duq_sender(io, cfg, group, m0, m1, rng_for("S")))
        driver.add_role(Role.R, lambda io: _duq_receiver(io, cfg, rng_for("R")))
        driver.add_role(Role.T, lambda io: _duq_issuer(io, cfg, inputs[Role.T], rng_for("T")))
        driver.add_role(Role.P2, lambda io: _duq_proxy2(io))
        driver.add_role(Role.P1, lambda io: _duq_proxy1(io))
    elif protocol == "dqmr":
        matrix = _as_matrix(inputs[Role.S])
        driver.add_role(
            Role.S, lambda io: _dqmr_sender(io, cfg, group, matrix, rng_for("S"), mapper)
        )
        driver.add_role(Role.R, lambda io: _dq_receiver(io, cfg, inputs[Role.R], rng_for("R")))
        driver.add_role(Role.P2, lambda io: _dq_proxy2(io))
        driver.add_role(Role.P1, lambda io: _dqmr_proxy1(io, cfg, inputs[Role.P1]))
    elif protocol == "duqmr":
        matrix = _as_matrix(inputs[Role.S])
        v, s, z = inputs[Role.T]
        if z != matrix.z:
            raise ParameterError("issuer's z does not match the database")
        driver.add_role(
            Role.S, lambda io: _duqmr_sender(io, cfg, group, matrix, rng_for("S"), mapper)
        )
        driver.add_role(Role.R, lambda io: _duqmr_receiver(io, cfg, rng_for("R")))
        driver.add_role(Role.T, lambda io: _duqmr_issuer(io, cfg, v, s, z, rng_for("T")))
        driver.add_role(Role.P2, lambda io: _duq_proxy2(io))
        driver.add_role(Role.P1, lambda io: _duqmr_proxy1(io, cfg))
    elif protocol == "compiled":
        messages = list(inputs[Role.S])
        suite = compiler.compile_suite(np_ot.NaiveOneOfN(len(messages)))
        driver.add_role(
            Role.S, lambda io: _compiled_sender(io, cfg, group, messages, suite, rng_for("S"))
        )
        driver.add_role(
            Role.R, lambda io: _compiled_receiver(io, cfg, inputs[Role.R], suite, rng_for("R"))
        )
    elif protocol == "supersonic":
        m0, m1 = inputs[Role.S]
        driver.add_role(Role.R, lambda io: _ss_receiver(io, cfg, inputs[Role.R], rng_for("R")))
        driver.add_role(Role.S, lambda io: _ss_sender(io, cfg, m0, m1))
        driver.add_role(Role.P, lambda io: _ss_proxy(io, cfg))

    try:
        outputs = driver.run()
    finally:
        transport.close()
    return SessionResult(outputs=outputs, log=log, deliveries=driver.deliveries)


# -- strawman fixtures (negative demonstrations only) ------------------------


def strawman_fixture(approach):
    """Leaky baselines for the multi-receiver setting.

    Approach 1 sends the whole z-pair response to the receiver (download
    grows with the database); approach 2 sends the record index v to the
    sender in the clear. Both still deliver the right message.
    """
    if approach == 1:
        return _strawman_full_download
    if approach == 2:
        return _strawman_index_leak
    raise ParameterError("approach must be 1 or 2")


def _strawman_common(inputs, seed, config, group):
    cfg = config or TEST_PROFILE
    inputs = _normalize_inputs("naor-pinkas", inputs)  # strawmen take S and R
    master = Rng.from_seed(seed)
    if group is None:
        group = group_for(cfg, master.child("group").randbytes(32))
    return cfg, inputs, master, group


def _strawman_full_download(inputs, seed, config=None, group=None):
    cfg, inputs, master, group = _strawman_common(inputs, seed, config, group)
    matrix = _as_matrix(inputs[Role.S])
    s, v = inputs[Role.R]
    log = RoutingLog()
    driver = _Driver(master.child("session-id").randbytes(16), InProcessTransport(), log)

    def sender(io):
        io.send(Role.R, Kind.PUBLIC_KEY, group.serialize())
        env = yield
        query = wire.dec_np_query(group, env.payload)
        q1 = dq.FinalQuery(
            beta0=query.beta0,
            beta1=_beta1_of(group, query.beta0),
        )
        pairs = mr.dqmr_gen_res(cfg, matrix, group, q1, master.child("role-S"))
        io.send(Role.R, Kind.MATRIX_RESPONSE, wire.enc_matrix_response(group, pairs))

    def receiver(io):
        env = yield
        pk = GroupParams.deserialize(env.payload)
        query, secret = np_ot.gen_query(pk, s, master.child("role-R"))
        io.send(Role.S, Kind.QUERY, wire.enc_np_query(pk, query))
        env = yield
        pairs = wire.dec_matrix_response(pk, cfg, env.payload)
        picked = pairs[v].slots()[s]
        io.set_output(np_ot.decrypt_slot(cfg, pk, picked, secret.r))

    driver.add_role(Role.S, lambda io: sender(io))
    driver.add_role(Role.R, lambda io: receiver(io))
    outputs = driver.run()
    return SessionResult(outputs=outputs, log=log, deliveries=driver.deliveries)


def _strawman_index_leak(inputs, seed, config=None, group=None):
    cfg, inputs, master, group = _strawman_common(inputs, seed, config, group)
    matrix = _as_matrix(inputs[Role.S])
    s, v = inputs[Role.R]
    log = RoutingLog()
    driver = _Driver(master.child("session-id").randbytes(16), InProcessTransport(), log)

    def sender(io):
        io.send(Role.R, Kind.PUBLIC_KEY, group.serialize())
        env = yield
        beta0 = int.from_bytes(env.payload[: group.element_width], "big")
        want = int.from_bytes(env.payload[group.element_width :], "big")
        m0, m1 = matrix.pairs[want]
        res = np_ot.gen_res(cfg, m0, m1, group, np_ot.NpQuery(beta0=beta0), master.child("role-S"))
        io.send(Role.R, Kind.RESPONSE, wire.enc_response_pair(group, res))

    def receiver(io):
        env = yield
        pk = GroupParams.deserialize(env.payload)
        query, secret = np_ot.gen_query(pk, s, master.child("role-R"))
        payload = wire.enc_np_query(pk, query) + v.to_bytes(4, "big")
        io.send(Role.S, Kind.QUERY, payload)
        env = yield
        res = wire.dec_response_pair(pk, cfg, env.payload)
        io.set_output(np_ot.retrieve(cfg, res, secret, pk))

    driver.add_role(Role.S, lambda io: sender(io))
    driver.add_role(Role.R, lambda io: receiver(io))
    outputs = driver.run()
    return SessionResult(outputs=outputs, log=log, deliveries=driver.deliveries)


def _beta1_of(group, beta0):
    from .primitives import group_inv, group_mul

    return group_mul(group, group.c, group_inv(group, beta0))
