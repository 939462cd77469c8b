"""Phase-resolved benchmarking.

Batches are run phase-major: every invocation's phase k completes before
any phase k+1 starts, so one timer span per phase covers the whole batch
and timer overhead stays negligible. Phases follow each protocol's step
numbering; one-time parameter generation (group, homomorphic keys) happens
before the clock starts. Measurement is single-threaded unless a parallel
mapper is passed, and parallel runs are for exploration only.
"""

import csv
import platform
import time
from dataclasses import dataclass, field

from . import _mathops, ahe, compiler, dq, duq, multireceiver as mr
from . import naor_pinkas as np_ot, supersonic as ss
from .errors import ParameterError
from .primitives import TEST_PROFILE, group_for
from .rng import Rng

PHASE_COUNT = 5


def environment_string():
    return (
        f"{platform.system()}-{platform.machine()} "
        f"python{platform.python_version()} backend={_mathops.BACKEND}"
    )


@dataclass
class BenchReport:
    protocol: str
    invocations: int
    reps: int
    phase_ms: list
    total_ms: float
    environment: str = field(default_factory=environment_string)

    def csv_row(self):
        return [self.protocol, self.invocations] + [
            f"{v:.6f}" for v in self.phase_ms
        ] + [f"{self.total_ms:.6f}", self.reps]


CSV_HEADER = ["protocol", "n", "phase1", "phase2", "phase3", "phase4", "phase5", "total", "reps"]


def write_csv(path, reports):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for report in reports:
            writer.writerow(report.csv_row())


class _PhaseClock:
    def __init__(self):
        self.spans = [0.0] * PHASE_COUNT

    def phase(self, idx, fn):
        start = time.perf_counter()
        out = fn()
        self.spans[idx] += time.perf_counter() - start
        return out


def _messages(cfg, rng, count=2):
    width = cfg.sigma_bytes - 4
    return [rng.randbytes(width) for _ in range(count)]


def _run_supersonic(cfg, n, rng, clock):
    m0, m1 = _messages(cfg, rng.child("msgs"))
    r_rng = rng.child("R")
    keys = clock.phase(0, lambda: [ss.setup(cfg, r_rng) for _ in range(n)])
    shares = clock.phase(1, lambda: [ss.gen_query(cfg, i & 1, r_rng) for i in range(n)])
    pairs = clock.phase(
        2, lambda: [ss.gen_res(cfg, m0, m1, keys[i], shares[i][0]) for i in range(n)]
    )
    finals = clock.phase(3, lambda: [ss.obl_filter(pairs[i], shares[i][1]) for i in range(n)])
    clock.phase(4, lambda: [ss.retrieve(cfg, finals[i], keys[i], i & 1) for i in range(n)])


def _run_naor_pinkas(cfg, n, rng, clock, group):
    m0, m1 = _messages(cfg, rng.child("msgs"))
    r_rng, s_rng = rng.child("R"), rng.child("S")
    queries = clock.phase(0, lambda: [np_ot.gen_query(group, i & 1, r_rng) for i in range(n)])
    responses = clock.phase(
        1, lambda: [np_ot.gen_res(cfg, m0, m1, group, q, s_rng) for q, _ in queries]
    )
    clock.phase(
        2,
        lambda: [
            np_ot.retrieve(cfg, responses[i], queries[i][1], group) for i in range(n)
        ],
    )


def _run_dq(cfg, n, rng, clock, group):
    m0, m1 = _messages(cfg, rng.child("msgs"))
    r_rng, s_rng = rng.child("R"), rng.child("S")
    reqs = clock.phase(0, lambda: [dq.request(cfg, group, i & 1, r_rng) for i in range(n)])
    partials = clock.phase(1, lambda: [dq.p2_gen_query(req[1], group) for req in reqs])
    finals = clock.phase(
        2, lambda: [dq.p1_gen_query(reqs[i][0], partials[i], group) for i in range(n)]
    )
    responses = clock.phase(
        3, lambda: [dq.gen_res(cfg, m0, m1, group, q1, s_rng) for q1 in finals]
    )
    clock.phase(
        4, lambda: [dq.retrieve(cfg, responses[i], reqs[i][2], group) for i in range(n)]
    )


def _run_duq(cfg, n, rng, clock, group):
    m0, m1 = _messages(cfg, rng.child("msgs"))
    r_rng, t_rng, s_rng = rng.child("R"), rng.child("T"), rng.child("S")

    def requests():
        out = []
        for i in range(n):
            r1, r2 = duq.r_request(group, r_rng)
            out.append((r1, r2, duq.t_request(cfg, i & 1, t_rng)))
        return out

    reqs = clock.phase(0, requests)
    partials = clock.phase(
        1, lambda: [duq.p2_gen_query(r2, issued.share2, group) for (_, r2, issued) in reqs]
    )
    finals = clock.phase(
        2,
        lambda: [
            duq.p1_gen_query(reqs[i][0], reqs[i][2].share1, partials[i], group)
            for i in range(n)
        ],
    )
    responses = clock.phase(
        3,
        lambda: [
            duq.gen_res(cfg, m0, m1, group, finals[i], reqs[i][2].sp_sender, s_rng)
            for i in range(n)
        ],
    )
    clock.phase(
        4,
        lambda: [
            duq.retrieve(
                cfg, responses[i], reqs[i][0], reqs[i][1], reqs[i][2].sp_receiver, group
            )
            for i in range(n)
        ],
    )


def _run_dqmr(cfg, n, rng, clock, group, z, v, mapper):
    matrix = mr.MessageMatrix(
        pairs=tuple(tuple(_messages(cfg, rng.child(f"m{t}"))) for t in range(z))
    )
    r_rng, s_rng = rng.child("R"), rng.child("S")
    reqs = clock.phase(0, lambda: [dq.request(cfg, group, i & 1, r_rng) for i in range(n)])
    partials = clock.phase(1, lambda: [dq.p2_gen_query(req[1], group) for req in reqs])
    finals = clock.phase(
        2, lambda: [dq.p1_gen_query(reqs[i][0], partials[i], group) for i in range(n)]
    )
    responses = clock.phase(
        3,
        lambda: [
            mr.dqmr_gen_res(cfg, matrix, group, q1, s_rng, mapper=mapper) for q1 in finals
        ],
    )
    clock.phase(
        4,
        lambda: [
            dq.retrieve(cfg, mr.dqmr_obl_filter(responses[i], v), reqs[i][2], group)
            for i in range(n)
        ],
    )


def _run_duqmr(cfg, n, rng, clock, group, z, v, mapper):
    matrix = mr.MessageMatrix(
        pairs=tuple(tuple(_messages(cfg, rng.child(f"m{t}"))) for t in range(z))
    )
    r_rng, t_rng, s_rng = rng.child("R"), rng.child("T"), rng.child("S")
    keys = mr.duqmr_r_setup(cfg, rng.child("keys"))

    def requests():
        out = []
        for i in range(n):
            vector = mr.duqmr_t_setup(z, v, keys.pk, t_rng)
            r1, r2 = duq.r_request(group, r_rng)
            out.append((r1, r2, duq.t_request(cfg, i & 1, t_rng), vector))
        return out

    reqs = clock.phase(0, requests)
    partials = clock.phase(
        1, lambda: [duq.p2_gen_query(r2, issued.share2, group) for (_, r2, issued, _) in reqs]
    )
    finals = clock.phase(
        2,
        lambda: [
            duq.p1_gen_query(reqs[i][0], reqs[i][2].share1, partials[i], group)
            for i in range(n)
        ],
    )
    responses = clock.phase(
        3,
        lambda: [
            mr.duqmr_gen_res(
                cfg, matrix, group, finals[i], reqs[i][2].sp_sender, s_rng, mapper=mapper
            )
            for i in range(n)
        ],
    )

    def finish():
        for i in range(n):
            filtered = mr.duqmr_obl_filter(cfg, group, responses[i], reqs[i][3], keys.pk)
            mr.duqmr_retrieve(
                cfg, filtered, reqs[i][0], reqs[i][1], keys.sk, group, reqs[i][2].sp_receiver
            )

    clock.phase(4, finish)


def _run_compiled(cfg, n, rng, clock, group, size):
    suite = compiler.compile_suite(np_ot.NaiveOneOfN(size))
    keys = ahe.kgen(cfg.ahe_bits, rng.child("keys"))
    messages = _messages(cfg, rng.child("msgs"), count=size)
    r_rng, s_rng = rng.child("R"), rng.child("S")
    queries = clock.phase(
        0, lambda: [suite.gen_query(cfg, group, keys.pk, i % size, r_rng) for i in range(n)]
    )
    responses = clock.phase(
        1,
        lambda: [
            suite.gen_res(cfg, messages, group, keys.pk, q, s_rng) for q, _ in queries
        ],
    )
    clock.phase(
        2,
        lambda: [
            suite.retrieve(cfg, responses[i], queries[i][0], queries[i][1], group, keys.sk)
            for i in range(n)
        ],
    )


def run_bench(
    protocol,
    invocations,
    reps=50,
    config=None,
    seed=0,
    warmup=10,
    z=4,
    v=0,
    size=8,
    group=None,
    threads=1,
):
    """Benchmark a protocol batch; returns the mean-over-reps report.

    threads > 1 runs the per-record response loops on a thread pool — an
    exploration mode, excluded from acceptance comparisons.
    """
    if invocations < 1:
        raise ParameterError("invocations must be at least 1")
    if reps < 1:
        raise ParameterError("reps must be at least 1")
    cfg = config or TEST_PROFILE
    master = Rng.from_seed(seed)
    if protocol != "supersonic" and group is None:
        group = group_for(cfg, master.child("group").randbytes(32))
    mapper = None
    if threads > 1:
        from .harness import ParallelMapper

        mapper = ParallelMapper(workers=threads)

    def one_pass(n, rng, clock):
        if protocol == "supersonic":
            _run_supersonic(cfg, n, rng, clock)
        elif protocol == "naor-pinkas":
            _run_naor_pinkas(cfg, n, rng, clock, group)
        elif protocol == "dq":
            _run_dq(cfg, n, rng, clock, group)
        elif protocol == "duq":
            _run_duq(cfg, n, rng, clock, group)
        elif protocol == "dqmr":
            _run_dqmr(cfg, n, rng, clock, group, z, v, mapper)
        elif protocol == "duqmr":
            _run_duqmr(cfg, n, rng, clock, group, z, v, mapper)
        elif protocol == "compiled":
            _run_compiled(cfg, n, rng, clock, group, size)
        else:
            raise ParameterError(f"unknown protocol {protocol!r}")

    for i in range(warmup):
        one_pass(1, master.child(f"warmup-{i}"), _PhaseClock())

    phase_sums = [0.0] * PHASE_COUNT
    total_sum = 0.0
    for rep in range(reps):
        clock = _PhaseClock()
        start = time.perf_counter()
        one_pass(invocations, master.child(f"rep-{rep}"), clock)
        total_sum += time.perf_counter() - start
        for k in range(PHASE_COUNT):
            phase_sums[k] += clock.spans[k]

    return BenchReport(
        protocol=protocol,
        invocations=invocations,
        reps=reps,
        phase_ms=[s / reps * 1e3 for s in phase_sums],
        total_ms=total_sum / reps * 1e3,
    )
