"""Timing harness comparing the reduced-dual constructions.

Each trial measures, for ``E = {0, ..., k-1}``:

====== ==========================================================
t1     rank-one iteration started from the canonical dual
t2     ``k x k`` matrix method started from the canonical dual
t3     canonical dual of the reduced frame from scratch (baseline)
t4     matrix method started from a random non-canonical dual
t5     rank-one iteration started from the same dual
====== ==========================================================

t4 and t5 are measured for two random duals ``Z1`` and ``Z2``. Each ``e``
column is the duality error of the matching construction.
"""
from __future__ import annotations

import csv
import logging
import statistics
import time
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .dual_construction import (
    StatementReport,
    canonical_dual,
    check_statements,
    random_dual,
    reduced_canonical_dual,
    reduced_dual_iterative,
    reduced_dual_matrix,
)
from .erasure_recovery import duality_error
from .exceptions import FrameError, MrcUnattainable
from .fixtures import (
    half_zero_half_dual,
    repeated_first_frame,
    stop_at_three_dual,
    stop_at_three_frame,
    unit_half_dual,
)
from .frame_core import DEFAULT_TOL, ErasureSet, Frame, mrc_check

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "test,N,r,k,seed,t1,t2,t3,t4_z1,t5_z1,t4_z2,t5_z2,"
    "e1,e2,e3,e4_z1,e5_z1,e4_z2,e5_z2,stmtA,stmtAp,stmtB,stmtC,stmtD"
).split(",")

TIMING_COLUMNS = ("t1", "t2", "t3", "t4_z1", "t5_z1", "t4_z2", "t5_z2")
ERROR_COLUMNS = ("e1", "e2", "e3", "e4_z1", "e5_z1", "e4_z2", "e5_z2")
MAX_REGENERATIONS = 10


@dataclass
class BenchConfig:
    dim: int
    count: int
    erasures: int
    seed: int = 0
    trials: int = 1
    tol: float = DEFAULT_TOL
    out: Optional[str] = None
    error_bound: float = 1e-8

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be positive, got {self.dim}")
        if not 1 <= self.erasures < self.count:
            raise ValueError(f"need 1 <= erasures < count, got k={self.erasures}, N={self.count}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.count - self.erasures < self.dim:
            logger.warning("N - k < r: the minimal redundancy condition cannot hold")


@dataclass
class BenchRecord:
    test: str
    N: int
    r: int
    k: int
    seed: int
    t1: Optional[float] = None
    t2: Optional[float] = None
    t3: Optional[float] = None
    t4_z1: Optional[float] = None
    t5_z1: Optional[float] = None
    t4_z2: Optional[float] = None
    t5_z2: Optional[float] = None
    e1: Optional[float] = None
    e2: Optional[float] = None
    e3: Optional[float] = None
    e4_z1: Optional[float] = None
    e5_z1: Optional[float] = None
    e4_z2: Optional[float] = None
    e5_z2: Optional[float] = None
    stmtA: Optional[bool] = None
    stmtAp: Optional[bool] = None
    stmtB: Optional[bool] = None
    stmtC: Optional[bool] = None
    stmtD: Optional[bool] = None
    # not written to CSV
    stop_z1: Optional[int] = None
    stop_z2: Optional[int] = None

    def timings(self) -> dict:
        return {c: getattr(self, c) for c in TIMING_COLUMNS if getattr(self, c) is not None}

    def errors(self) -> dict:
        return {c: getattr(self, c) for c in ERROR_COLUMNS if getattr(self, c) is not None}

    def fastest(self) -> Optional[str]:
        t = self.timings()
        return min(t, key=t.get) if t else None

    def set_statements(self, report: StatementReport) -> None:
        (self.stmtA, self.stmtAp, self.stmtB, self.stmtC, self.stmtD) = report.flags()

    def within(self, bound: float) -> bool:
        return all(e <= bound for e in self.errors().values())


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def _iterative_dual(x, z, erasure, tol):
    return reduced_dual_iterative(x, z, erasure, tol).dual()


def _measure(record, label, fn, x, z, erasure, tol, x_reduced):
    """Time one construction and store ``t<label>`` / ``e<label>``; failures leave NA."""
    try:
        dual, elapsed = _timed(fn, x, z, erasure, tol)
    except FrameError as exc:
        logger.info("%s not applicable: %s", label, exc)
        return None
    setattr(record, "t" + label, elapsed)
    setattr(record, "e" + label, duality_error(x_reduced, dual))
    return dual


def _measure_instance(record, x, erasure, rng, tol, z1=None):
    x_reduced = x.reduced(erasure)
    y = canonical_dual(x, tol)
    _measure(record, "1", _iterative_dual, x, y, erasure, tol, x_reduced)
    _measure(record, "2", reduced_dual_matrix, x, y, erasure, tol, x_reduced)

    baseline, record.t3 = _timed(reduced_canonical_dual, x, erasure, tol, False)
    record.e3 = duality_error(x_reduced, baseline)

    if z1 is None:
        z1 = random_dual(x, y, rng)
    z2 = random_dual(x, y, rng)
    for tag, z in (("z1", z1), ("z2", z2)):
        _measure(record, f"4_{tag}", reduced_dual_matrix, x, z, erasure, tol, x_reduced)
        _measure(record, f"5_{tag}", _iterative_dual, x, z, erasure, tol, x_reduced)
    report1 = check_statements(x, z1, erasure, tol)
    record.set_statements(report1)
    record.stop_z1 = report1.iteration_stop
    record.stop_z2 = reduced_dual_iterative(x, z2, erasure, tol).stop
    return record


def _random_frame_with_mrc(cfg, erasure, rng):
    for attempt in range(1, MAX_REGENERATIONS + 1):
        x = Frame(rng.standard_normal((cfg.dim, cfg.count)))
        if mrc_check(x, erasure, cfg.tol):
            return x
        logger.info("attempt %d: E fails the redundancy condition, regenerating", attempt)
    raise MrcUnattainable(
        f"no frame with r={cfg.dim}, N={cfg.count} satisfied MRC for k={cfg.erasures} "
        f"after {MAX_REGENERATIONS} attempts"
    )


def run_random_bench(cfg: BenchConfig, frame: Optional[Frame] = None) -> List[BenchRecord]:
    """Run ``cfg.trials`` trials on random Gaussian frames (or on ``frame``).

    Trial ``i`` draws everything from ``numpy.random.default_rng([seed, i])``,
    so results other than timings are reproducible.
    """
    if frame is not None and frame.synthesis.shape != (cfg.dim, cfg.count):
        raise ValueError(f"frame shape {frame.synthesis.shape} does not match config ({cfg.dim}, {cfg.count})")
    erasure = ErasureSet.first(cfg.erasures, cfg.count)
    records = []
    for trial in range(cfg.trials):
        rng = np.random.default_rng([cfg.seed, trial])
        if frame is None:
            x = _random_frame_with_mrc(cfg, erasure, rng)
        else:
            if not mrc_check(frame, erasure, cfg.tol):
                raise MrcUnattainable(f"E = first {cfg.erasures} indices fails MRC for the given frame")
            x = frame
        record = BenchRecord(f"trial{trial}", cfg.count, cfg.dim, cfg.erasures, cfg.seed)
        records.append(_measure_instance(record, x, erasure, rng, cfg.tol))
    return records


def summarize(records: List[BenchRecord]) -> dict:
    """Median of every populated timing column across records."""
    out = {}
    for col in TIMING_COLUMNS:
        vals = [getattr(r, col) for r in records if getattr(r, col) is not None]
        if vals:
            out[col] = statistics.median(vals)
    return out


def _cell(name, value):
    if value is None:
        return "NA"
    if isinstance(value, bool):
        return "true" if value else "false"
    if name in TIMING_COLUMNS:
        return f"{value:.6f}"
    if name in ERROR_COLUMNS:
        return f"{value:.6e}"
    return str(value)


def emit_csv(records, path) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow([_cell(name, getattr(rec, name)) for name in CSV_HEADER])


# ------------------------------------------------------------------ demos


@dataclass
class DemoReport:
    name: str
    lines: List[str] = field(default_factory=list)
    checks: List[tuple] = field(default_factory=list)
    records: List[BenchRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def check(self, label, ok):
        self.checks.append((label, bool(ok)))

    def __str__(self):
        out = [f"== {self.name}"] + self.lines
        out += [f"[{'PASS' if ok else 'FAIL'}] {label}" for label, ok in self.checks]
        return "\n".join(out)


def _format_columns(frame: Frame, digits=4) -> str:
    cols = []
    for n in range(frame.count):
        v = frame.synthesis[:, n]
        nz = np.flatnonzero(np.abs(v) > 10.0 ** -digits)
        cols.append("0" if nz.size == 0 else " + ".join(f"{v[i]:.{digits}g}*e{i + 1}" for i in nz))
    return "(" + ", ".join(cols) + ")"


def _demo_example31(r):
    rep = DemoReport("example31")
    x, z = repeated_first_frame(r), half_zero_half_dual(r)
    n = x.count
    report = check_statements(x, z, ErasureSet.from_one_based([1, 3], n))
    rep.lines.append(f"E={{1,3}}: {report}")
    rep.check("E={1,3}: MRC for X but not for Z (A and not A')", report.stmt_A and not report.stmt_A_prime)

    expected = {
        (1,): np.column_stack([np.zeros(r), np.eye(r)]),
        (1, 2): np.eye(r),
    }
    for e, want in expected.items():
        erasure = ErasureSet.from_one_based(e, n)
        v = reduced_dual_matrix(x, z, erasure)
        rep.lines.append(f"E={set(e)}: reduced dual {_format_columns(v)}")
        rep.check(f"E={set(e)}: matrix method gives the expected dual", np.max(np.abs(v.synthesis - want)) <= 1e-12)
    return rep


def _demo_example34(r):
    rep = DemoReport("example34")
    x, z = repeated_first_frame(r), unit_half_dual(r)
    n = x.count
    a = check_statements(x, z, ErasureSet.from_one_based([1], n))
    rep.lines.append(f"E={{1}}: {a}")
    rep.check("E={1}: A' holds, B and C fail", a.stmt_A_prime and not a.stmt_B and not a.stmt_C)
    b = check_statements(x, z, ErasureSet.from_one_based([1, 2], n))
    rep.lines.append(f"E={{1,2}}: {b}")
    rep.check("E={1,2}: B and C hold, D fails at j=1", b.stmt_B and b.stmt_C and not b.stmt_D and b.iteration_stop == 1)
    return rep


def _demo_stop_at_three(r, seed=0, tol=DEFAULT_TOL):
    rep = DemoReport("test9")
    x, z1 = stop_at_three_frame(r), stop_at_three_dual(r)
    erasure = ErasureSet.first(4, x.count)
    rng = np.random.default_rng(seed)
    record = BenchRecord("test9", x.count, r, 4, seed)
    _measure_instance(record, x, erasure, rng, tol, z1=z1)
    rep.records.append(record)
    rep.lines.append(
        f"N={x.count} r={r} k=4: Z1 iteration stop at j={record.stop_z1}; "
        f"A={record.stmtA} A'={record.stmtAp} B={record.stmtB} D={record.stmtD}"
    )
    rep.lines.append("timings: " + ", ".join(f"{k}={v:.4f}s" for k, v in record.timings().items()))
    rep.lines.append("errors:  " + ", ".join(f"{k}={v:.2e}" for k, v in record.errors().items()))
    rep.check("Z1: iteration stops at j=3", record.stop_z1 == 3 and record.t5_z1 is None)
    rep.check("Z1: matrix method not applicable (MRC fails for Z1)", record.t4_z1 is None and not record.stmtAp)
    rep.check(
        "Z2: both methods complete with error <= 1e-10",
        record.e4_z2 is not None and record.e5_z2 is not None and max(record.e4_z2, record.e5_z2) <= 1e-10,
    )
    return rep


DEMOS = ("example31", "example34", "test9")


def run_fixed_demo(name: str, dim: Optional[int] = None, seed: int = 0) -> DemoReport:
    """Run one of the explicit demos in :data:`DEMOS`.

    ``dim`` defaults to 10 for the worked examples and 3000 for ``test9``.
    """
    if name == "example31":
        return _demo_example31(dim or 10)
    if name == "example34":
        return _demo_example34(dim or 10)
    if name == "test9":
        return _demo_stop_at_three(dim or 3000, seed)
    raise ValueError(f"unknown demo {name!r}; choose from {', '.join(DEMOS)}")


__all__ = [
    "BenchConfig",
    "BenchRecord",
    "CSV_HEADER",
    "DemoReport",
    "emit_csv",
    "run_fixed_demo",
    "run_random_bench",
    "summarize",
]
