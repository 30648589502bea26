"""Run statistics: success-rate tables, nearest-rank percentiles, IQR, and the
exponential run-time-distribution fit with a Kolmogorov-Smirnov check."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .solver import RunRecord

KS_ALPHA = 0.05
KS_CRITICAL_COEFF = 1.36  # asymptotic alpha = 0.05 critical value coefficient
MIN_KS_SAMPLES = 10


def nearest_rank(sorted_samples: Sequence[float], p: float) -> float:
    """Nearest-rank percentile: value at 1-based index ceil(p * k)."""
    k = len(sorted_samples)
    if k == 0:
        raise ValueError("empty sample")
    idx = max(1, math.ceil(p * k))
    return sorted_samples[min(idx, k) - 1]


def iqr(samples: Sequence[float]) -> float:
    """75th minus 25th nearest-rank percentile."""
    if not samples:
        raise ValueError("empty sample")
    s = sorted(samples)
    return nearest_rank(s, 0.75) - nearest_rank(s, 0.25)


def exp_cdf(x: float, m: float) -> float:
    """CDF of the median-parameterized exponential model 1 - 2^(-x/m)."""
    return 1.0 - 2.0 ** (-x / m)


def fit_exponential_rtd(times: Sequence[float]) -> tuple[float, float, bool]:
    """Fit the exponential model by its empirical median and KS-test it.

    Returns (m, D, pass) where D is the sup-distance of the empirical CDF from
    1 - 2^(-x/m) and pass holds when D < 1.36/sqrt(k). The critical value is
    the asymptotic one even though m is estimated from the data, so the test
    is approximate (slightly conservative toward passing).
    """
    k = len(times)
    if k < MIN_KS_SAMPLES:
        raise ValueError(f"need at least {MIN_KS_SAMPLES} samples, got {k}")
    s = sorted(times)
    m = nearest_rank(s, 0.5)
    if m <= 0:
        return m, 1.0, False
    d = 0.0
    for i, x in enumerate(s, start=1):
        f = exp_cdf(x, m)
        d = max(d, abs(i / k - f), abs((i - 1) / k - f))
    return m, d, d < KS_CRITICAL_COEFF / math.sqrt(k)


@dataclass
class RtdSummary:
    """Aggregate over one batch of runs; None marks an unavailable statistic."""

    runs: int
    suc: int
    size_min: int
    size_avg: float
    size_max: int
    time_avg: float | None
    suc_time_avg: float | None
    steps_avg: float | None
    suc_steps_avg: float | None
    iqr_time: float | None
    ks_m: float | None
    ks_D: float | None
    ks_pass: bool | None


def summarize(records: Sequence[RunRecord], cutoff: float | None,
              target: int | None) -> RtdSummary:
    """Batch statistics: failed runs count the cutoff time and their total
    steps; suc-only averages are over successful runs. A run succeeds when its
    best cover is at most `target`."""
    if not records:
        raise ValueError("no records to summarize")
    runs = len(records)
    succ = [r for r in records
            if target is not None and r.best_size <= target]
    suc = len(succ)
    sizes = [r.best_size for r in records]

    def run_time(r: RunRecord) -> float | None:
        if target is not None and r.best_size <= target:
            return r.time_to_best
        return cutoff  # None when no wall-clock cutoff is in effect

    times = [run_time(r) for r in records]
    steps = [r.steps_to_best if (target is not None and r.best_size <= target)
             else r.total_steps for r in records]

    time_avg = None
    steps_avg = None
    suc_time_avg = None
    suc_steps_avg = None
    if suc > 0:
        steps_avg = sum(steps) / runs
        suc_time_avg = sum(r.time_to_best for r in succ) / suc
        suc_steps_avg = sum(r.steps_to_best for r in succ) / suc
        if all(t is not None for t in times):
            time_avg = sum(times) / runs

    iqr_time = None
    if suc >= math.ceil(0.75 * runs) and all(t is not None for t in times):
        iqr_time = iqr(times)

    ks_m = ks_d = None
    ks_pass = None
    if suc >= MIN_KS_SAMPLES:
        ks_m, ks_d, ks_pass = fit_exponential_rtd([r.time_to_best for r in succ])

    return RtdSummary(
        runs=runs,
        suc=suc,
        size_min=min(sizes),
        size_avg=sum(sizes) / runs,
        size_max=max(sizes),
        time_avg=time_avg,
        suc_time_avg=suc_time_avg,
        steps_avg=steps_avg,
        suc_steps_avg=suc_steps_avg,
        iqr_time=iqr_time,
        ks_m=ks_m,
        ks_D=ks_d,
        ks_pass=ks_pass,
    )
