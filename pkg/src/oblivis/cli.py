"""Command-line front door: protocol demos, benchmark harness, self-checks."""

import argparse
import dataclasses
import os
import sys

from . import bench as bench_mod
from . import verify as verify_mod
from .errors import AbortError, OblivisError
from .harness import PROTOCOLS, Role, run_session
from .primitives import profile
from .rng import Rng

_ALIASES = {
    "np": "naor-pinkas",
    "naor-pinkas-ot": "naor-pinkas",
    "dq-ot": "dq",
    "duq-ot": "duq",
    "dqmr-ot": "dqmr",
    "duqmr-ot": "duqmr",
    "supersonic-ot": "supersonic",
}


def _canonical_protocol(args):
    name = args.protocol or args.protocol_flag
    name = _ALIASES.get(name, name)
    if name not in PROTOCOLS:
        raise OblivisError(f"unknown protocol {name!r} (choose from {', '.join(PROTOCOLS)})")
    return name


def _resolve_seed(args):
    env = os.environ.get("OBLIVIS_SEED")
    if env is not None:
        return int(env)
    return args.seed


def _config(args):
    cfg = profile(args.profile)
    overrides = {}
    if args.sigma is not None:
        overrides["sigma"] = args.sigma
    if args.lam is not None:
        overrides["lam"] = args.lam
    if overrides:
        overrides["ahe_bits"] = 0  # re-derive from the capacity rule
        cfg = dataclasses.replace(cfg, **overrides)
    return cfg


def _demo_inputs(protocol, args, cfg, seed):
    rng = Rng.from_seed(seed).child("demo-messages")
    width = cfg.sigma_bytes - 4

    def msg():
        return rng.randbytes(width)

    if protocol in ("naor-pinkas", "dq", "duq", "supersonic"):
        inputs = {Role.S: (msg(), msg())}
        if protocol == "duq":
            inputs[Role.T] = args.s
        else:
            inputs[Role.R] = args.s
        return inputs
    if protocol == "dqmr":
        pairs = [(msg(), msg()) for _ in range(args.z)]
        return {Role.S: pairs, Role.R: args.s, Role.P1: args.v}
    if protocol == "duqmr":
        pairs = [(msg(), msg()) for _ in range(args.z)]
        return {Role.S: pairs, Role.T: (args.v, args.s, args.z)}
    if protocol == "compiled":
        messages = [msg() for _ in range(args.n or 8)]
        return {Role.S: messages, Role.R: args.s}
    raise OblivisError(f"no demo wiring for {protocol!r}")


def cmd_demo(args):
    protocol = _canonical_protocol(args)
    cfg = _config(args)
    seed = _resolve_seed(args)
    inputs = _demo_inputs(protocol, args, cfg, seed)
    try:
        result = run_session(protocol, inputs, seed=seed, config=cfg)
    except AbortError as exc:
        print(f"ABORT at role {exc.role} ({exc.phase}): {exc}", file=sys.stderr)
        return 1
    print(f"# {protocol} session, seed={seed}, profile={args.profile}")
    for env in result.log.entries:
        print(
            f"  [{env.seq:03d}] {env.from_role.name:>2} -> {env.to_role.name:<2} "
            f"{env.kind.name:<17} {len(env.payload)} bytes"
        )
    for role, value in result.outputs.items():
        shown = value.hex() if isinstance(value, bytes) else value
        print(f"output[{role.name}] = {shown}")
    return 0


def cmd_bench(args):
    protocol = _canonical_protocol(args)
    cfg = _config(args)
    seed = _resolve_seed(args)
    report = bench_mod.run_bench(
        protocol,
        invocations=args.n,
        reps=args.reps,
        config=cfg,
        seed=seed,
        z=args.z,
        size=args.size,
        threads=args.threads,
    )
    print(f"# {report.environment}")
    print(
        f"{report.protocol}: n={report.invocations} reps={report.reps} "
        f"total={report.total_ms:.3f} ms"
    )
    for k, ms in enumerate(report.phase_ms, start=1):
        print(f"  phase{k}: {ms:.4f} ms")
    if args.csv:
        bench_mod.write_csv(args.csv, [report])
        print(f"wrote {args.csv}")
    return 0


def cmd_verify(args):
    results = verify_mod.run_suite(args.suite)
    failures = 0
    for res in results:
        mark = "PASS" if res.ok else "FAIL"
        line = f"[{mark}] {res.suite}.{res.name}"
        if not res.ok:
            failures += 1
            line += f": {res.detail}"
        print(line)
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def _add_common(parser):
    parser.add_argument("--seed", type=int, default=0, help="master seed (OBLIVIS_SEED overrides)")
    parser.add_argument("--profile", choices=("test", "production"), default="test")
    parser.add_argument("--sigma", type=int, default=None, help="padded message length, bits")
    parser.add_argument("--lambda", dest="lam", type=int, default=None, help="tag length, bits")


def build_parser():
    parser = argparse.ArgumentParser(prog="oblivis", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="run one session and print the transcript")
    demo.add_argument("protocol", nargs="?", default=None)
    demo.add_argument("--protocol", dest="protocol_flag", default=None)
    demo.add_argument("--s", type=int, default=0, help="choice index")
    demo.add_argument("--v", type=int, default=0, help="record index (multi-receiver)")
    demo.add_argument("--z", type=int, default=4, help="database pairs (multi-receiver)")
    demo.add_argument("--n", type=int, default=None, help="vector size (compiled)")
    _add_common(demo)
    demo.set_defaults(fn=cmd_demo)

    bench = sub.add_parser("bench", help="phase-resolved timing")
    bench.add_argument("protocol", nargs="?", default=None)
    bench.add_argument("--protocol", dest="protocol_flag", default=None)
    bench.add_argument("--n", type=int, default=1, help="invocations per repetition")
    bench.add_argument("--reps", type=int, default=50)
    bench.add_argument("--csv", default=None, help="write a CSV report here")
    bench.add_argument("--z", type=int, default=4, help="database pairs (multi-receiver)")
    bench.add_argument("--size", type=int, default=8, help="vector size (compiled)")
    bench.add_argument(
        "--threads", type=int, default=1,
        help="thread-pool the per-record loops (exploration only)",
    )
    _add_common(bench)
    bench.set_defaults(fn=cmd_bench)

    ver = sub.add_parser("verify", help="run invariant self-checks")
    ver.add_argument("suite", nargs="?", default="all")
    ver.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "protocol") and not (args.protocol or args.protocol_flag):
        parser.error("a protocol is required (positional or --protocol)")
    try:
        return args.fn(args)
    except OblivisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
