"""Reproducible sampling of planar Brownian paths and argmax records.

Paths live on the uniform grid {k/steps : k = 0..steps}; the bridge is
the exact grid transform W(t) - t W(1) of a fresh Brownian path, so its
endpoint is pinned to the origin exactly.  Each path consumes exactly one
RNG substream, which makes every sample a pure function of
(master seed, substream index).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from ._backend import kernels
from .rng import MASK64, RngStream

Kind = Literal["BM", "BB"]


@dataclass(frozen=True)
class PlanarPath:
    """Discretized planar trajectory; immutable after construction.

    ``points[k]`` is the position at time k/steps.  Every path starts at
    the origin; bridges also end there exactly.
    """

    steps: int
    points: np.ndarray
    kind: Kind

    def __post_init__(self) -> None:
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        if self.kind not in ("BM", "BB"):
            raise ValueError("kind must be 'BM' or 'BB'")
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.shape != (self.steps + 1, 2):
            raise ValueError("points must have shape (steps + 1, 2)")
        if pts[0, 0] != 0.0 or pts[0, 1] != 0.0:
            raise ValueError("paths start at the origin")
        if self.kind == "BB" and (pts[-1, 0] != 0.0 or pts[-1, 1] != 0.0):
            raise ValueError("bridge paths end at the origin exactly")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) / self.steps


@dataclass(frozen=True)
class EnsembleSpec:
    """Deterministic identity of an experiment: counts, grid, master seed."""

    m: int
    n: int
    steps: int
    master_seed: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError("path counts must be nonnegative")
        if self.m + self.n < 1:
            raise ValueError("need at least one path (m + n >= 1)")
        if self.steps < 2:
            raise ValueError("steps must be at least 2")
        object.__setattr__(self, "master_seed", int(self.master_seed) & MASK64)

    @property
    def paths_per_replicate(self) -> int:
        return self.m + self.n

    def stream(self, replicate: int, path_index: int) -> RngStream:
        """Substream feeding path ``path_index`` of ``replicate`` (BM paths first)."""
        if replicate < 0 or not 0 <= path_index < self.paths_per_replicate:
            raise ValueError("replicate/path index out of range")
        return RngStream.derive(
            self.master_seed, replicate * self.paths_per_replicate + path_index
        )


@dataclass(frozen=True)
class ArgmaxRecord:
    """Where and by whom an ensemble's combined x maximum is attained."""

    max_value: float
    time: float
    winner_kind: Kind
    winner_index: int

    @property
    def winner(self) -> tuple[Kind, int]:
        return (self.winner_kind, self.winner_index)


def sample_bm(steps: int, stream: RngStream) -> PlanarPath:
    """One planar Brownian motion path on [0, 1].

    Coordinate increments over a grid interval are independent centered
    Gaussians with variance 1/steps.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return PlanarPath(steps=steps, points=kernels.bm_path(stream.key, steps), kind="BM")


def sample_bb(steps: int, stream: RngStream) -> PlanarPath:
    """One planar Brownian bridge path on [0, 1], pinned to (0, 0) at t = 1."""
    if steps < 2:
        raise ValueError("steps must be at least 2")
    return PlanarPath(steps=steps, points=kernels.bb_path(stream.key, steps), kind="BB")


def combined_argmax(bm_paths: Sequence[PlanarPath],
                    bb_paths: Sequence[PlanarPath]) -> ArgmaxRecord:
    """Maximum of the first coordinate over all grid points of all paths.

    Ties resolve to the earliest grid time, then BM before BB, then the
    lowest path index.
    """
    paths = list(bm_paths) + list(bb_paths)
    if not paths:
        raise ValueError("at least one path is required")
    steps = paths[0].steps
    if any(p.steps != steps for p in paths):
        raise ValueError("all paths must share the same grid")
    x = np.stack([p.points[:, 0] for p in paths])
    # Time-major scan: the first occurrence of the max is the tie-break order.
    flat_index = int(np.argmax(x.T.ravel()))
    npaths = len(paths)
    k = flat_index // npaths
    p = flat_index % npaths
    m = len(bm_paths)
    return ArgmaxRecord(
        max_value=float(x[p, k]),
        time=k / steps,
        winner_kind="BM" if p < m else "BB",
        winner_index=p if p < m else p - m,
    )
