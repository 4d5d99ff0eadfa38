"""Monte Carlo experiment harness.

Drives the path kernels over replicated ensembles and reduces the
per-replicate values into estimates with normal-quantile confidence
intervals.  Replicate r of an ensemble with p paths draws path j from
substream r * p + j, so every value is a pure function of the ensemble
spec and the replicate index; chunks are fixed-size and the reduction
runs in replicate order, which makes results bitwise independent of the
worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from ._backend import kernels
from .process_sim import EnsembleSpec
from .rng import inv_norm_cdf

_CHUNK = 2048

_FUNCTIONALS = {"perimeter": 0, "area": 1}


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo estimate with provenance.

    ``std_error`` is the sample standard deviation over sqrt(reps),
    accumulated by a single Welford pass in replicate order.
    """

    mean: float
    std_error: float
    reps: int
    spec: EnsembleSpec
    ci_level: float = 0.99

    @property
    def ci_low(self) -> float:
        return self.mean - self._z() * self.std_error

    @property
    def ci_high(self) -> float:
        return self.mean + self._z() * self.std_error

    def _z(self) -> float:
        return inv_norm_cdf(0.5 * (1.0 + self.ci_level))

    @classmethod
    def from_values(cls, values, spec: EnsembleSpec, ci_level: float = 0.99) -> "Estimate":
        vals = np.asarray(values, dtype=np.float64)
        if vals.ndim != 1 or vals.size < 2:
            raise ValueError("need a 1-D array of at least 2 values")
        if not np.isfinite(vals).all():
            raise RuntimeError("non-finite value in Monte Carlo stream")
        if not 0.0 < ci_level < 1.0:
            raise ValueError("ci_level must be inside (0, 1)")
        mean = 0.0
        m2 = 0.0
        count = 0
        for x in vals.tolist():
            count += 1
            delta = x - mean
            mean += delta / count
            m2 += delta * (x - mean)
        variance = m2 / (count - 1)
        return cls(mean=mean, std_error=math.sqrt(variance / count),
                   reps=count, spec=spec, ci_level=ci_level)


class GofReport(NamedTuple):
    """One-sample Kolmogorov-Smirnov result."""

    ks_statistic: float
    sample_count: int
    p_value_asymptotic: float


class ArgmaxSamples(NamedTuple):
    """Per-replicate combined-argmax records, in replicate order."""

    times: np.ndarray
    winner_is_bm: np.ndarray
    winner_index: np.ndarray
    max_values: np.ndarray
    second_coords: np.ndarray


class MaxMoments(NamedTuple):
    m1: Estimate
    m2: Estimate
    mprime2: Estimate


def _chunk_bounds(reps: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + _CHUNK, reps)) for lo in range(0, reps, _CHUNK)]


def _run_chunks(fn: Callable[[int, int], object], reps: int, workers: int) -> list:
    bounds = _chunk_bounds(reps)
    results: list = [None] * len(bounds)
    if workers <= 1 or len(bounds) == 1:
        for i, (lo, hi) in enumerate(bounds):
            results[i] = fn(lo, hi)
        return results
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(fn, lo, hi): i for i, (lo, hi) in enumerate(bounds)}
        for fut, i in futures.items():
            results[i] = fut.result()
    return results


def hull_functional_samples(spec: EnsembleSpec, reps: int, workers: int = 1) -> np.ndarray:
    """Per-replicate (perimeter, area) of the pooled hull, shape (reps, 2)."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    chunks = _run_chunks(
        lambda lo, hi: kernels.hull_metrics_batch(
            spec.master_seed, lo, hi, spec.m, spec.n, spec.steps),
        reps, workers)
    values = np.concatenate(chunks, axis=0)
    if not np.isfinite(values).all():
        raise RuntimeError("non-finite value in Monte Carlo stream")
    return values


def estimate_hull_functional(spec: EnsembleSpec, reps: int,
                             functional: str = "perimeter",
                             workers: int = 1,
                             ci_level: float = 0.99) -> Estimate:
    """Estimate the expected hull perimeter or area of the ensemble."""
    if functional not in _FUNCTIONALS:
        raise ValueError(f"functional must be one of {sorted(_FUNCTIONALS)}")
    if reps < 2:
        raise ValueError("reps must be at least 2")
    values = hull_functional_samples(spec, reps, workers)
    return Estimate.from_values(values[:, _FUNCTIONALS[functional]], spec, ci_level)


def argmax_samples(spec: EnsembleSpec, reps: int, workers: int = 1) -> ArgmaxSamples:
    """Combined-argmax record of every replicate (value, time, winner)."""
    if reps < 1:
        raise ValueError("reps must be at least 1")
    chunks = _run_chunks(
        lambda lo, hi: kernels.argmax_batch(
            spec.master_seed, lo, hi, spec.m, spec.n, spec.steps),
        reps, workers)
    times = np.concatenate([c[0] for c in chunks])
    is_bm = np.concatenate([c[1] for c in chunks]).astype(bool)
    index = np.concatenate([c[2] for c in chunks])
    max_values = np.concatenate([c[3] for c in chunks])
    second = np.concatenate([c[4] for c in chunks])
    if not (np.isfinite(times).all() and np.isfinite(max_values).all()
            and np.isfinite(second).all()):
        raise RuntimeError("non-finite value in Monte Carlo stream")
    return ArgmaxSamples(times, is_bm, index, max_values, second)


def sample_argmax_times(spec: EnsembleSpec, reps: int, workers: int = 1,
                        samples: ArgmaxSamples | None = None,
                        ) -> tuple[np.ndarray, tuple[float, float]]:
    """Argmax times of every replicate plus the (BM, BB) winner fractions.

    ``samples`` may pass in a precomputed :func:`argmax_samples` batch to
    avoid re-running the simulation.
    """
    if samples is None:
        samples = argmax_samples(spec, reps, workers)
    wins = int(np.count_nonzero(samples.winner_is_bm))
    total = samples.times.size
    frac_bm = wins / total
    return samples.times, (frac_bm, 1.0 - frac_bm)


def estimate_max_moments(spec: EnsembleSpec, reps: int, workers: int = 1,
                         samples: ArgmaxSamples | None = None,
                         ci_level: float = 0.99) -> MaxMoments:
    """First and second moments of the combined maximum, and the second
    moment of the transverse coordinate at the argmax time.

    Defined for the single-pair ensemble only (m = n = 1).
    """
    if spec.m != 1 or spec.n != 1:
        raise ValueError("moments are defined for the m = 1, n = 1 ensemble")
    if reps < 2:
        raise ValueError("reps must be at least 2")
    if samples is None:
        samples = argmax_samples(spec, reps, workers)
    mx = samples.max_values
    sec = samples.second_coords
    return MaxMoments(
        m1=Estimate.from_values(mx, spec, ci_level),
        m2=Estimate.from_values(mx * mx, spec, ci_level),
        mprime2=Estimate.from_values(sec * sec, spec, ci_level),
    )


def ks_test(samples, cdf: Callable) -> GofReport:
    """One-sample Kolmogorov-Smirnov test against a reference CDF.

    ``cdf`` may accept arrays or scalars; it must be nondecreasing over
    the sample range.  The p-value is the asymptotic Kolmogorov series
    evaluated with 140 terms.
    """
    xs = np.sort(np.asarray(samples, dtype=np.float64))
    n = xs.size
    if n == 0:
        raise ValueError("samples must be nonempty")
    if not np.isfinite(xs).all():
        raise ValueError("samples must be finite")
    try:
        ref = np.asarray(cdf(xs), dtype=np.float64)
        if ref.shape != xs.shape:
            raise TypeError
    except (TypeError, ValueError):
        ref = np.array([float(cdf(float(v))) for v in xs])
    if not np.isfinite(ref).all():
        raise ValueError("cdf produced non-finite values")
    positions = np.arange(1, n + 1, dtype=np.float64)
    d_plus = float(np.max(positions / n - ref))
    d_minus = float(np.max(ref - (positions - 1.0) / n))
    d = max(d_plus, d_minus, 0.0)
    return GofReport(
        ks_statistic=d,
        sample_count=n,
        p_value_asymptotic=_kolmogorov_sf(math.sqrt(n) * d),
    )


def _kolmogorov_sf(lam: float) -> float:
    # Alternating exponential series; 140 terms is far past convergence
    # for every lambda that can reach here.
    if lam <= 0.0:
        return 1.0
    total = 0.0
    for k in range(1, 141):
        total += (-1.0) ** (k - 1) * math.exp(-2.0 * (k * lam) ** 2)
    return min(max(2.0 * total, 0.0), 1.0)
