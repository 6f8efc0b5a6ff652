"""Sweeps over fundamental discriminants: achirality, negative Pell
solvability and the empirical densities they produce."""
from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import genus, intarith, qform

log = logging.getLogger(__name__)

CSV_HEADER = ("D", "achiral", "nonorientable", "class_number", "wall_time_micros")


def _squarefree_mask(n: int) -> np.ndarray:
    """mask[k] is True iff k is squarefree, for 0 <= k < n."""
    mask = np.ones(max(n, 1), dtype=bool)
    mask[0] = False
    for p in range(2, math.isqrt(max(n - 1, 0)) + 1):
        mask[p * p :: p * p] = False
    return mask


def enumerate_fundamental_discriminants(X: int) -> list:
    """Fundamental discriminants 1 < D < X in ascending order."""
    if X < 5:
        return []
    sf = _squarefree_mask(X)
    k = np.arange(X)
    odd = np.flatnonzero(sf & (k % 4 == 1) & (k > 1))
    d = np.arange((X + 3) // 4)
    even = 4 * np.flatnonzero(sf[: len(d)] & np.isin(d % 4, (2, 3)))
    even = even[even < X]
    return [int(v) for v in np.sort(np.concatenate([odd, even]))]


def rho(tolerance: float = 1e-12) -> float:
    """prod_{j >= 1} (1 + 2^-j)^-1, stopped once a factor is within tolerance of 1."""
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    value, j = 1.0, 1
    while True:
        eps = 2.0**-j
        value /= 1 + eps
        if eps < tolerance:
            return value
        j += 1


def rho_partials(n: int) -> list:
    out, value = [], 1.0
    for j in range(1, n + 1):
        value /= 1 + 2.0**-j
        out.append(value)
    return out


@dataclass(frozen=True)
class SweepRecord:
    D: int
    achiral_class: bool
    nonorientable: bool
    class_number: int | None = None
    wall_time_micros: int = 0

    def csv_row(self) -> list:
        return [
            self.D,
            int(self.achiral_class),
            int(self.nonorientable),
            "" if self.class_number is None else self.class_number,
            self.wall_time_micros,
        ]


@dataclass(frozen=True)
class SweepOptions:
    class_numbers: bool = False
    # decide negative Pell for every D; otherwise it is skipped (False) when
    # some p = 3 mod 4 divides D, since -1 is then not a square mod p
    full_pell: bool = False
    jobs: int = 1
    chunk: int = 4096


@dataclass
class DensityReport:
    X: int
    n_fundamental: int
    n_achiral: int
    n_nonorientable: int
    frac_fundamental: float
    frac_achiral_among_all: float
    frac_nonorientable_among_achiral: float
    rho_reference: float
    fundamental_reference: float = 3 / math.pi**2
    failures: list = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def classify_discriminant(D: int, options: SweepOptions = SweepOptions()) -> SweepRecord:
    t0 = time.perf_counter_ns()
    achiral = genus.achiral_class(D)
    nonor = intarith.negative_pell_solvable(D) if (achiral or options.full_pell) else False
    h = qform.class_group(D).class_number if options.class_numbers else None
    return SweepRecord(D, achiral, nonor, h, (time.perf_counter_ns() - t0) // 1000)


def _work(args):
    Ds, options = args
    out = []
    for D in Ds:
        try:
            out.append(classify_discriminant(D, options))
        except Exception as exc:  # recorded, not fatal
            out.append((D, f"{type(exc).__name__}: {exc}"))
    return out


def sweep_records(X: int, options: SweepOptions = SweepOptions()):
    """Yield a SweepRecord, or a (D, diagnostic) pair on failure, per D < X in order."""
    Ds = enumerate_fundamental_discriminants(X)
    chunks = [(Ds[i : i + options.chunk], options) for i in range(0, len(Ds), options.chunk)]
    if options.jobs > 1:
        with ProcessPoolExecutor(max_workers=options.jobs) as pool:
            # map preserves submission order, which keeps the stream ascending
            for part in pool.map(_work, chunks):
                yield from part
    else:
        for c in chunks:
            yield from _work(c)


def summarize(X: int, records, failures=()) -> DensityReport:
    n = len(records)
    na = sum(r.achiral_class for r in records)
    nn = sum(r.nonorientable for r in records)
    return DensityReport(
        X=X,
        n_fundamental=n,
        n_achiral=na,
        n_nonorientable=nn,
        frac_fundamental=n / X,
        frac_achiral_among_all=na / n if n else 0.0,
        frac_nonorientable_among_achiral=nn / na if na else 0.0,
        rho_reference=rho(1e-12),
        failures=[list(f) for f in failures],
    )


def sweep(X: int, options: SweepOptions = SweepOptions()):
    """Run the sweep below X; returns (records, report)."""
    records, failures = [], []
    for item in sweep_records(X, options):
        if isinstance(item, SweepRecord):
            records.append(item)
        else:
            log.warning("D=%d skipped: %s", *item)
            failures.append(item)
    return records, summarize(X, records, failures)


def records_to_csv(records, timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        row = r.csv_row()
        if not timing:
            row[-1] = 0
        w.writerow(row)
    return buf.getvalue()


def records_to_json(records, report: DensityReport) -> str:
    payload = {"records": [asdict(r) for r in records], "report": asdict(report)}
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
