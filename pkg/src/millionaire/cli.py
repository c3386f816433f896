"""Command-line front end.

Four commands: run a single comparison, sweep a domain exhaustively against
the oracle, reproduce the embedded reference tables, and measure
communication growth.  Exit codes double as machine-readable results:
0 = GT (or PASS), 1 = LT (or FAIL), 2 = EQ, 3+ = usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, fixtures
from .bits import to_bits
from .opf import SharedParams, eval_opf, eval_point
from .prg import DEFAULT_SEED_BITS, Seed, derive
from .protocols import (
    Outcome,
    ProtocolConfig,
    ProtocolError,
    run_protocol_a,
    run_protocol_b,
    run_protocol_c,
)

EXIT_GT = 0
EXIT_LT = 1
EXIT_EQ = 2
EXIT_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep exit code 2 reserved for EQ
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_ERROR)


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split(":")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None


def _parse_u(text: str):
    if text == "coin":
        return "coin"
    if text in ("0", "1"):
        return int(text)
    raise argparse.ArgumentTypeError("--u takes coin, 0 or 1")


def _parse_sizes(text: str) -> list[int]:
    sizes = [int(s) for s in text.split(",") if s]
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise argparse.ArgumentTypeError("sizes must be strictly ascending")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="millionaire", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--protocol", choices=["a", "b", "b-ext", "c"], required=True)
        sp.add_argument("--seed", default="01", help="master seed, hex")
        sp.add_argument("--width", type=int, default=8, help="word size for protocol a")
        sp.add_argument("--s", type=int)
        sp.add_argument("--k", type=int)
        sp.add_argument("--l", type=int, help="shared-family slack for protocol b")
        sp.add_argument("--u", type=_parse_u, default="coin")
        sp.add_argument("--complement-width", type=int, default=64)
        sp.add_argument("--d", type=int, default=8, help="input bit bound for protocol c")
        sp.add_argument("--l-point", type=int, default=16)
        sp.add_argument("--range", type=_parse_range, default=(0, 255),
                        dest="point_range", help="anchor sampling range lo:hi")
        sp.add_argument("--he-backend", default="transparent")
        sp.add_argument("--ot-backend", default="transparent",
                        choices=["transparent", "commutative-rsa"])
        sp.add_argument("--ot-modulus-bits", type=int, default=512)
        sp.add_argument("--fixture", help=f"use an embedded instance, e.g. {fixtures.POINT_FIXTURE_NAME}")

    runp = sub.add_parser("run", help="run one comparison")
    common(runp)
    runp.add_argument("--a", type=int, required=True)
    runp.add_argument("--b", type=int, required=True)
    runp.add_argument("--json", dest="json_path", help="write the full transcript as JSON")

    sweepp = sub.add_parser("sweep", help="exhaustive verification against the oracle")
    common(sweepp)
    sweepp.add_argument("--max-bits", type=int, default=6)
    sweepp.add_argument("--seeds", type=int, default=1, help="number of seeds (protocol c)")
    sweepp.add_argument("--jobs", type=int, default=1)

    sub.add_parser("tables", help="reproduce the embedded reference tables")

    benchp = sub.add_parser("bench", help="communication growth over input sizes")
    common(benchp)
    benchp.add_argument("--sizes", type=_parse_sizes, default=[8, 16, 32, 64])
    # growth only shows when OT payload words scale with d, so the benchmark
    # defaults to payload-proportional moduli and a larger slack
    benchp.set_defaults(ot_modulus_bits=0, l_point=256, point_range=(0, 1024),
                        ot_backend="commutative-rsa")

    return p


def _seed_from(args) -> Seed:
    raw = args.seed
    if len(raw) % 2:
        raw = "0" + raw
    data = bytes.fromhex(raw)
    if len(data) < DEFAULT_SEED_BITS // 8:
        data = data.rjust(DEFAULT_SEED_BITS // 8, b"\x00")
    return Seed(data)


def _shared_from(args, a: int, b: int) -> SharedParams | None:
    given = [args.s, args.k, args.l]
    if args.protocol == "b-ext" and not any(v is not None for v in given):
        n = max(2, a.bit_length(), b.bit_length())
        return SharedParams(s=n, k=n, l=n, complement_width=args.complement_width)
    if not any(v is not None for v in given):
        return None
    if not all(v is not None for v in given):
        raise ProtocolError("give all of --s, --k, --l or none")
    return SharedParams(s=args.s, k=args.k, l=args.l,
                        complement_width=args.complement_width)


def _config_from(args, a: int = 0, b: int = 0) -> ProtocolConfig:
    fixture = fixtures.point_fixture(args.fixture) if args.fixture else None
    return ProtocolConfig(
        protocol=args.protocol,
        width_w=args.width,
        shared=_shared_from(args, a, b),
        u_mode=args.u,
        point_l=args.l_point,
        point_range=args.point_range,
        d_bound=fixture.d if fixture else args.d,
        he_backend=args.he_backend,
        ot_backend=args.ot_backend,
        ot_modulus_bits=args.ot_modulus_bits,
        point_fixture=fixture,
        master_seed=_seed_from(args),
    )


def _print_outcome(protocol: str, a: int, b: int, outcome: Outcome, transcript) -> int:
    if outcome.relation is None:
        shown, code = "GE (a >= b; this protocol cannot split GT from EQ)", EXIT_GT
    else:
        shown = outcome.relation.value
        code = {"GT": EXIT_GT, "LT": EXIT_LT, "EQ": EXIT_EQ}[shown]
    print(f"protocol {protocol}: a={a} b={b} -> {shown}")
    print(f"messages={len(transcript.messages)} rounds={transcript.rounds} "
          f"bytes={transcript.bytes_total}")
    print("counters: " + " ".join(f"{k}={v}" for k, v in transcript.counters.items()))
    return code


def cmd_run(args) -> int:
    a, b = args.a, args.b
    cfg = _config_from(args, a, b)
    if args.protocol == "a":
        outcome, t = run_protocol_a(a, b, cfg)
    elif args.protocol in ("b", "b-ext"):
        outcome, t = run_protocol_b(a, b, cfg)
    else:
        outcome, t = run_protocol_c(a, b, cfg)
    code = _print_outcome(args.protocol, a, b, outcome, t)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            fh.write(t.to_json())
        print(f"transcript written to {args.json_path}")
    return code


def cmd_sweep(args) -> int:
    if args.max_bits > 12:
        raise ProtocolError("exhaustive sweeps are capped at 12 bits per input")
    seed = _seed_from(args)
    if args.protocol == "a":
        report = analysis.sweep_a(max_bits=min(args.max_bits, args.width - 1),
                                  width=args.width, seed=seed, jobs=args.jobs)
    elif args.protocol in ("b", "b-ext"):
        shared = _shared_from(args, (1 << args.max_bits) - 1, 0)
        if shared is not None and shared.complement_width < args.max_bits:
            raise ProtocolError("--complement-width smaller than the sweep domain")
        if shared is None:
            shared = SharedParams(s=3, k=2, l=5, complement_width=args.max_bits)
        report = analysis.sweep_b(max_bits=args.max_bits, shared=shared,
                                  seed=seed, jobs=args.jobs)
    else:
        seeds = [derive(seed, f"sweep{i}") for i in range(args.seeds)]
        report = analysis.sweep_c(max_bits=args.max_bits, seeds=seeds,
                                  backends=(args.ot_backend,),
                                  modulus_bits=args.ot_modulus_bits,
                                  point_l=args.l_point,
                                  point_range=args.point_range,
                                  jobs=args.jobs)
    print(report.summary())
    for note in report.notes:
        print(f"note: {note}")
    return EXIT_GT if report.passed else EXIT_LT


def _diff_table(name: str, rows: list[tuple[str, int, int]]) -> bool:
    ok = True
    print(f"\n{name}")
    print(f"{'x':>6} {'F(x)':>8} {'expected':>9} status")
    for label, got, want in rows:
        status = "ok" if got == want else "MISMATCH"
        ok &= got == want
        print(f"{label:>6} {got:>8} {want:>9} {status}")
    return ok


def cmd_tables(_args) -> int:
    ok = True

    f = fixtures.GENERAL_DEMO_MAPS
    print("general 4-bit demo: per-bit maps")
    print(f"{'pos':>4} {'f(0)':>5} {'f(1)':>5} {'gap':>4} {'running':>8}")
    running = 0
    for i, m in enumerate(f.maps, 1):
        running += m.gap
        status = "ok" if (m.gap, running) == (
            fixtures.GENERAL_DEMO_GAPS[i - 1], fixtures.GENERAL_DEMO_GAP_SUMS[i - 1]) else "MISMATCH"
        ok &= status == "ok"
        print(f"{i:>4} {m.zero_val:>5} {m.one_val:>5} {m.gap:>4} {running:>8} {status}")

    rows = [(str(to_bits(x, 4)), eval_opf(f, to_bits(x, 4)), fixtures.GENERAL_DEMO_TABLE[x])
            for x in range(16)]
    ok &= _diff_table("general 4-bit demo: image table", rows)

    p = fixtures.build_point_demo()
    print(f"\npoint 4-bit demo: maps anchored at {p.b}")
    print(f"{'pos':>4} {'f(0)':>5} {'f(1)':>5} {'rise':>5} {'fall':>5}")
    rises, falls = p.rises(), p.falls()
    for i, m in enumerate(p.maps, 1):
        r = rises.get(i, "-")
        fl = falls.get(i, "-")
        want_r = fixtures.POINT_DEMO_RISES.get(i, "-")
        want_f = fixtures.POINT_DEMO_FALLS.get(i, "-")
        status = "ok" if (r, fl) == (want_r, want_f) else "MISMATCH"
        ok &= status == "ok"
        print(f"{i:>4} {m.zero_val:>5} {m.one_val:>5} {r!s:>5} {fl!s:>5} {status}")

    rows = [(str(to_bits(x, 4)), eval_point(p, to_bits(x, 4)), fixtures.POINT_DEMO_TABLE[x])
            for x in range(16)]
    ok &= _diff_table("point 4-bit demo: image table", rows)

    print("\nall tables match" if ok else "\nTABLE MISMATCH", flush=True)
    return EXIT_GT if ok else EXIT_LT


def cmd_bench(args) -> int:
    protocol = args.protocol
    shared = None
    if protocol == "b" and all(v is not None for v in (args.s, args.k, args.l)):
        shared = SharedParams(s=args.s, k=args.k, l=args.l,
                              complement_width=args.complement_width)
    points = analysis.bench_protocol(
        protocol, args.sizes, seed=_seed_from(args),
        shared=shared,
        ot_backend=args.ot_backend,
        ot_modulus_bits=args.ot_modulus_bits,
        point_l=args.l_point,
        point_range=args.point_range,
    )
    print(f"{'size':>6} {'bytes':>9} {'messages':>9} {'rounds':>7} {'ot-bytes/transfer':>18}")
    for pt in points:
        print(f"{pt.size:>6} {pt.bytes_total:>9} {pt.messages:>9} {pt.rounds:>7} "
              f"{pt.ot_bytes_per_transfer:>18.1f}")

    xs = [float(pt.size) for pt in points]
    ys = [float(pt.bytes_total) for pt in points]
    fits = [analysis.fit_linear(xs, ys), analysis.fit_nlogn(xs, ys)]
    if len(xs) >= 3:
        fits.append(analysis.fit_quadratic(xs, ys))
    for fit in fits:
        coeffs = ", ".join(f"{c:.4g}" for c in fit.coefficients)
        residuals = ", ".join(f"{r:.1f}" for r in fit.residuals)
        print(f"fit {fit.model:<16} r2={fit.r2:.5f} coeffs=[{coeffs}] residuals=[{residuals}]")
    if protocol == "c":
        pxs = [float(pt.size) for pt in points]
        pys = [pt.ot_bytes_per_transfer for pt in points]
        per = analysis.fit_linear(pxs, pys)
        print(f"fit per-transfer bytes ~ n: r2={per.r2:.5f} slope={per.coefficients[0]:.3f}")
    return EXIT_GT


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"run": cmd_run, "sweep": cmd_sweep, "tables": cmd_tables, "bench": cmd_bench}
    try:
        return handlers[args.command](args)
    except (ProtocolError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
