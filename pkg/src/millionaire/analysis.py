"""Exhaustive verification sweeps and communication-growth measurements.

Sweeps run the real protocol engines over every input pair in a domain and
compare each outcome with the plaintext oracle; they also optionally enforce
the per-run operation-counter contract (protocol "a") and the helper-view
contract (protocol "b").  Runs are independent, so sweeps can shard across
processes.

Growth measurements run one protocol per input size, record transcript
bytes, and fit linear, n*log2(n) and quadratic models by least squares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from multiprocessing import get_context

from . import ot
from .opf import SharedParams
from .prg import Seed
from .protocols import (
    LABEL_BLINDED_V,
    LABEL_ENC_B,
    LABEL_MSB_BIT,
    LABEL_PARAMS,
    LABEL_RESULT,
    LABEL_VALUE,
    ProtocolConfig,
    oracle,
    run_protocol_a,
    run_protocol_b,
    run_protocol_c,
)
from .simnet import PartyId, Transcript

PROTOCOL_A_LABELS = [LABEL_ENC_B, LABEL_BLINDED_V, LABEL_MSB_BIT, LABEL_RESULT]
PROTOCOL_A_COUNTERS = {"enc": 2, "dec": 1, "hom_sub": 1, "hom_xor": 1, "ot_enc": 0, "ot_dec": 0}


@dataclass
class SweepReport:
    protocol: str
    pairs_checked: int = 0
    mismatches: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def merge(self, other: "SweepReport") -> None:
        self.pairs_checked += other.pairs_checked
        self.mismatches.extend(other.mismatches)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status}: protocol {self.protocol}, {self.pairs_checked} runs"
        if self.mismatches:
            line += f", first mismatch: {self.mismatches[0]}"
        return line


def check_protocol_a_run(t: Transcript) -> list[str]:
    """Contract of a single protocol-"a" transcript: labels, counters, rounds."""
    problems = []
    labels = [m.label for m in t.messages]
    if labels != PROTOCOL_A_LABELS:
        problems.append(f"message labels {labels}")
    if t.rounds != 4:
        problems.append(f"rounds {t.rounds}")
    if dict(t.counters) != PROTOCOL_A_COUNTERS:
        problems.append(f"counters {dict(t.counters)}")
    return problems


def check_ursula_view(t: Transcript) -> list[str]:
    """Contract of the helper's view in protocol "b".

    Exactly two inbound value messages (one per input holder) and her two
    outbound results; the parameter message exists but never touches her, so
    nothing in her view carries the shared constants or the coin.
    """
    problems = []
    view = t.view(PartyId.URSULA)
    inbound = [m for m in view if m.receiver is PartyId.URSULA]
    outbound = [m for m in view if m.sender is PartyId.URSULA]
    if len(view) != 4:
        problems.append(f"helper view has {len(view)} messages")
    if [m.label for m in inbound] != [LABEL_VALUE, LABEL_VALUE]:
        problems.append(f"inbound labels {[m.label for m in inbound]}")
    if {m.sender for m in inbound} != {PartyId.ALICE, PartyId.BOB}:
        problems.append("inbound values not one per input holder")
    if [m.label for m in outbound] != [LABEL_RESULT, LABEL_RESULT]:
        problems.append(f"outbound labels {[m.label for m in outbound]}")
    if any(m.label == LABEL_PARAMS for m in view):
        problems.append("parameter message visible to helper")
    params = [m for m in t.messages if m.label == LABEL_PARAMS]
    if len(params) != 1 or params[0].sender is not PartyId.ALICE or params[0].receiver is not PartyId.BOB:
        problems.append("parameter message missing or misrouted")
    return problems


# ------------------------------------------------------------------- sweeps


def _sweep_a_chunk(args) -> SweepReport:
    a_values, max_value, cfg, strict = args
    report = SweepReport("a")
    for a in a_values:
        for b in range(max_value):
            outcome, t = run_protocol_a(a, b, cfg)
            report.pairs_checked += 1
            if outcome.predicate_ge != (a >= b):
                report.mismatches.append((a, b, outcome.predicate_ge, a >= b))
            elif strict:
                problems = check_protocol_a_run(t)
                if problems:
                    report.mismatches.append((a, b, "contract", problems))
    return report


def _sweep_b_chunk(args) -> SweepReport:
    a_values, max_value, cfg0, cfg1, check_views = args
    report = SweepReport("b")
    for a in a_values:
        for b in range(max_value):
            for cfg in (cfg0, cfg1):
                outcome, t = run_protocol_b(a, b, cfg)
                report.pairs_checked += 1
                want = oracle(a, b).relation
                if outcome.relation is not want:
                    report.mismatches.append((a, b, cfg.u_mode, outcome.relation, want))
                elif check_views:
                    problems = check_ursula_view(t)
                    if problems:
                        report.mismatches.append((a, b, "view", problems))
    return report


def _sweep_c_chunk(args) -> SweepReport:
    a_values, max_value, cfg = args
    report = SweepReport("c")
    for a in a_values:
        for b in range(max_value):
            outcome, _ = run_protocol_c(a, b, cfg)
            report.pairs_checked += 1
            want = oracle(a, b).relation
            if outcome.relation is not want:
                report.mismatches.append((a, b, cfg.ot_backend, outcome.relation, want))
    return report


def _run_chunks(worker, chunk_args, jobs: int) -> SweepReport:
    if jobs <= 1:
        reports = [worker(c) for c in chunk_args]
    else:
        with get_context("fork").Pool(jobs) as pool:
            reports = pool.map(worker, chunk_args)
    merged = reports[0]
    for r in reports[1:]:
        merged.merge(r)
    return merged


def _split(n: int, parts: int) -> list[list[int]]:
    values = list(range(n))
    size = max(1, math.ceil(n / parts))
    return [values[i : i + size] for i in range(0, n, size)]


def sweep_a(max_bits: int = 7, width: int = 8, seed: Seed | None = None,
            strict: bool = True, jobs: int = 1) -> SweepReport:
    cfg = ProtocolConfig(protocol="a", width_w=width,
                         master_seed=seed or Seed.from_int(1))
    max_value = 1 << max_bits
    if max_value > 1 << (width - 1):
        raise ValueError("max_bits too large for the configured width")
    chunks = [(avs, max_value, cfg, strict) for avs in _split(max_value, max(jobs, 1) * 4)]
    report = _run_chunks(_sweep_a_chunk, chunks, jobs)
    report.notes.append("protocol a answers a >= b; equality is folded into GE")
    return report


def sweep_b(max_bits: int = 8, shared: SharedParams | None = None,
            seed: Seed | None = None, check_views: bool = True,
            jobs: int = 1) -> SweepReport:
    shared = shared or SharedParams(s=3, k=2, l=5, complement_width=max_bits)
    if shared.complement_width < max_bits:
        raise ValueError("complement width smaller than the input domain")
    base = dict(protocol="b", shared=shared, master_seed=seed or Seed.from_int(1))
    cfg0 = ProtocolConfig(u_mode=0, **base)
    cfg1 = ProtocolConfig(u_mode=1, **base)
    max_value = 1 << max_bits
    chunks = [(avs, max_value, cfg0, cfg1, check_views)
              for avs in _split(max_value, max(jobs, 1) * 4)]
    return _run_chunks(_sweep_b_chunk, chunks, jobs)


def sweep_c(max_bits: int = 8, seeds: list[Seed] | None = None,
            backends: tuple[str, ...] = ("transparent", "commutative-rsa"),
            modulus_bits: int = 128, jobs: int = 1,
            point_l: int = 16, point_range: tuple[int, int] = (0, 255)) -> SweepReport:
    seeds = seeds or [Seed.from_int(i + 1) for i in range(5)]
    max_value = 1 << max_bits
    merged = None
    for backend in backends:
        for seed in seeds:
            cfg = ProtocolConfig(
                protocol="c", d_bound=max_bits, ot_backend=backend,
                ot_modulus_bits=modulus_bits, master_seed=seed,
                point_l=point_l, point_range=point_range,
            )
            chunks = [(avs, max_value, cfg) for avs in _split(max_value, max(jobs, 1) * 4)]
            report = _run_chunks(_sweep_c_chunk, chunks, jobs)
            if merged is None:
                merged = report
            else:
                merged.merge(report)
    assert merged is not None
    return merged


# ------------------------------------------------------------------- growth


@dataclass
class BenchPoint:
    size: int
    bytes_total: int
    messages: int
    rounds: int
    ot_bytes_per_transfer: float = 0.0


def _alternating(d: int) -> int:
    v = 0
    for i in range(d - 1, -1, -2):
        v |= 1 << i
    return v


def bench_protocol(protocol: str, sizes: list[int], seed: Seed | None = None,
                   shared: SharedParams | None = None,
                   ot_backend: str = "commutative-rsa",
                   ot_modulus_bits: int = 0,
                   point_l: int = 256,
                   point_range: tuple[int, int] = (0, 1024)) -> list[BenchPoint]:
    """One deterministic run per size; sizes are input bits (or d for "c")."""
    seed = seed or Seed.from_int(7)
    points = []
    for n in sizes:
        if protocol == "a":
            cfg = ProtocolConfig(protocol="a", width_w=n + 1, master_seed=seed)
            _, t = run_protocol_a((1 << n) - 1, (1 << n) - 2, cfg)
            per_transfer = 0.0
        elif protocol in ("b", "b-ext"):
            if protocol == "b":
                params = shared or SharedParams(s=3, k=2, l=5)
            else:
                params = SharedParams(s=max(2, n), k=max(2, n), l=max(2, n))
            cfg = ProtocolConfig(protocol="b", shared=params, u_mode=1,
                                 master_seed=seed)
            _, t = run_protocol_b((1 << n) - 1, (1 << n) - 2, cfg)
            per_transfer = 0.0
        elif protocol == "c":
            b = _alternating(n)
            cfg = ProtocolConfig(protocol="c", d_bound=n, ot_backend=ot_backend,
                                 ot_modulus_bits=ot_modulus_bits, master_seed=seed,
                                 point_l=point_l, point_range=point_range)
            _, t = run_protocol_c(b ^ 1, b, cfg)
            ot_labels = {ot.LABEL_INIT, ot.LABEL_CHOICE, ot.LABEL_REPLY}
            ot_bytes = sum(len(m.payload) for m in t.messages if m.label in ot_labels)
            per_transfer = ot_bytes / n
        else:
            raise ValueError(f"unknown protocol {protocol!r}")
        points.append(BenchPoint(n, t.bytes_total, len(t.messages), t.rounds, per_transfer))
    return points


# ----------------------------------------------------------------- fitting


def _lstsq(rows: list[list[float]], ys: list[float]) -> list[float]:
    """Solve the normal equations for a small design matrix."""
    k = len(rows[0])
    ata = [[sum(r[i] * r[j] for r in rows) for j in range(k)] for i in range(k)]
    atb = [sum(r[i] * y for r, y in zip(rows, ys)) for i in range(k)]
    # Gaussian elimination with partial pivoting
    for col in range(k):
        pivot = max(range(col, k), key=lambda r: abs(ata[r][col]))
        ata[col], ata[pivot] = ata[pivot], ata[col]
        atb[col], atb[pivot] = atb[pivot], atb[col]
        if abs(ata[col][col]) < 1e-12:
            raise ValueError("singular design matrix")
        for r in range(col + 1, k):
            f = ata[r][col] / ata[col][col]
            for c in range(col, k):
                ata[r][c] -= f * ata[col][c]
            atb[r] -= f * atb[col]
    coef = [0.0] * k
    for r in range(k - 1, -1, -1):
        coef[r] = (atb[r] - sum(ata[r][c] * coef[c] for c in range(r + 1, k))) / ata[r][r]
    return coef


def _r_squared(ys: list[float], preds: list[float]) -> float:
    mean = sum(ys) / len(ys)
    ss_tot = sum((y - mean) ** 2 for y in ys)
    ss_res = sum((y - p) ** 2 for y, p in zip(ys, preds))
    if ss_tot == 0:
        return 1.0 if ss_res == 0 else 0.0
    return 1.0 - ss_res / ss_tot


@dataclass
class Fit:
    model: str
    coefficients: list[float]
    r2: float
    residuals: list[float]


def fit_linear(xs: list[float], ys: list[float]) -> Fit:
    coef = _lstsq([[x, 1.0] for x in xs], ys)
    preds = [coef[0] * x + coef[1] for x in xs]
    return Fit("a*n + b", coef, _r_squared(ys, preds), [y - p for y, p in zip(ys, preds)])


def fit_nlogn(xs: list[float], ys: list[float]) -> Fit:
    coef = _lstsq([[x * math.log2(x), 1.0] for x in xs], ys)
    preds = [coef[0] * x * math.log2(x) + coef[1] for x in xs]
    return Fit("a*n*log2(n) + b", coef, _r_squared(ys, preds), [y - p for y, p in zip(ys, preds)])


def fit_quadratic(xs: list[float], ys: list[float]) -> Fit:
    coef = _lstsq([[x * x, x, 1.0] for x in xs], ys)
    preds = [coef[0] * x * x + coef[1] * x + coef[2] for x in xs]
    return Fit("a*n^2 + b*n + c", coef, _r_squared(ys, preds), [y - p for y, p in zip(ys, preds)])
