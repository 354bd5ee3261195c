"""Exhaustive counting: totals up to symmetry, height tables, anchored counts.

The heavy lifting happens in the compiled core (:mod:`brickcount._search`);
this module owns task dispatch, resource limits, and the ledger types.
Counts are exact integers combined by addition over a deterministic task
list, so results are identical for any worker count.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import _search
from ._search import (MODE_ANCHORED, MODE_NO_BOTTLENECK, MODE_ORBITS,
                      MODE_SINGLE_TOP)
from .geometry import BrickShape, Configuration, Placement


def default_workers() -> int:
    env = os.environ.get("BRICKCOUNT_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SearchLimits:
    """Resource budget for a search; exceeding it raises, never miscounts.

    ``progress_seconds`` enables periodic progress lines on stderr for long
    jobs.  The node budget is enforced per compiled task and on aggregated
    totals between chunks, so a single task may overshoot slightly before the
    abort flag is observed; counts are never reported once any task aborts.
    """

    max_nodes: int | None = None
    max_seconds: float | None = None
    workers: int | None = None
    progress_seconds: float | None = None

    def effective_workers(self) -> int:
        return self.workers if self.workers else default_workers()


@dataclass(frozen=True)
class CountLedger:
    """Exact counts for one brick count n."""

    shape: BrickShape
    n: int
    total: int
    by_height: dict[int, int]
    anchored: int
    elapsed: float
    node_visits: int

    def check_internal(self) -> None:
        assert sum(self.by_height.values()) == self.total


class ResourceLimitExceeded(RuntimeError):
    """Search hit its node or wall-clock budget; carries partial progress."""

    def __init__(self, message: str, nodes_visited: int, tasks_done: int, tasks_total: int):
        super().__init__(message)
        self.nodes_visited = nodes_visited
        self.tasks_done = tasks_done
        self.tasks_total = tasks_total


def _set_threads(workers: int) -> None:
    import numba

    limit = numba.config.NUMBA_NUM_THREADS
    numba.set_num_threads(max(1, min(workers, limit)))


def _dispatch(shape: BrickShape, nmax: int, mode: int,
              limits: SearchLimits | None,
              collecting: bool = False,
              cbuf: np.ndarray | None = None,
              cofs: np.ndarray | None = None) -> np.ndarray:
    """Run the task list in deterministic chunks; returns per-task out rows."""
    limits = limits or SearchLimits()
    params = _search.kernel_params(shape, nmax)
    tasks = _search.make_tasks(shape, nmax, mode)
    out = np.zeros((len(tasks), _search.OUT_WIDTH), np.int64)
    if cbuf is None:
        cbuf = np.zeros(1, np.uint8)
    if cofs is None:
        cofs = np.zeros(len(tasks), np.int64)
    workers = limits.effective_workers()
    _set_threads(workers)
    max_nodes = limits.max_nodes if limits.max_nodes else np.iinfo(np.int64).max // 2
    zmin_cand = 0 if mode == MODE_ORBITS else 1
    start = time.monotonic()
    last_report = start
    chunk = max(64, 8 * workers)
    done = 0
    while done < len(tasks):
        stop = min(done + chunk, len(tasks))
        _search._run_tasks(
            tasks[done:stop], mode, nmax, shape.b, shape.w, shape.square,
            params["nb_dx"], params["nb_dy"], params["nb_rot"], params["L"],
            params["off"], params["xr"], params["off2"], params["xr2"],
            zmin_cand, max_nodes, out[done:stop], collecting, cbuf, cofs[done:stop])
        done = stop
        visited = int(out[:done, _search._NODES].sum())
        now = time.monotonic()
        if (limits.progress_seconds
                and now - last_report >= limits.progress_seconds
                and done < len(tasks)):
            print(f"[search] {done}/{len(tasks)} tasks, {visited} node visits, "
                  f"{now - start:.0f}s", file=sys.stderr)
            last_report = now
        if out[:done, _search._ABORT].any():
            raise ResourceLimitExceeded(
                f"node budget {limits.max_nodes} exceeded", visited, done, len(tasks))
        if limits.max_nodes and visited > limits.max_nodes:
            raise ResourceLimitExceeded(
                f"node budget {limits.max_nodes} exceeded", visited, done, len(tasks))
        if limits.max_seconds and time.monotonic() - start > limits.max_seconds:
            if done < len(tasks):
                raise ResourceLimitExceeded(
                    f"wall-clock budget {limits.max_seconds}s exceeded",
                    visited, done, len(tasks))
    return out


def _counts_by_size(rows: np.ndarray) -> list[int]:
    return [int(rows[:, _search._CNT0 + k].sum()) for k in range(_search.MAXN)]


def count_table(shape: BrickShape, nmax: int,
                limits: SearchLimits | None = None) -> list[CountLedger]:
    """Ledgers for every brick count 1..nmax in one enumeration pass."""
    t0 = time.monotonic()
    orbit_rows = _dispatch(shape, nmax, MODE_ORBITS, limits)
    anchored_rows = _dispatch(shape, nmax, MODE_ANCHORED, limits)
    elapsed = time.monotonic() - t0
    totals = _counts_by_size(orbit_rows)
    anchored = _counts_by_size(anchored_rows)
    nodes = int(orbit_rows[:, _search._NODES].sum()
                + anchored_rows[:, _search._NODES].sum())
    ledgers = []
    for n in range(1, nmax + 1):
        heights = {}
        for m in range(1, n + 1):
            v = int(orbit_rows[:, _search._H0 + (n - 1) * _search.MAXN + m - 1].sum())
            if v:
                heights[m] = v
        ledgers.append(CountLedger(shape, n, totals[n - 1], heights,
                                   anchored[n - 1], elapsed, nodes))
    return ledgers


def count_total(shape: BrickShape, n: int,
                limits: SearchLimits | None = None) -> CountLedger:
    """Orbit count, height table, and anchored count for exactly n bricks."""
    return count_table(shape, n, limits)[-1]


def anchored_counts(shape: BrickShape, nmax: int,
                    limits: SearchLimits | None = None) -> list[int]:
    """Anchored counts a_1..a_nmax."""
    rows = _dispatch(shape, nmax, MODE_ANCHORED, limits)
    return _counts_by_size(rows)[:nmax]


def count_anchored(shape: BrickShape, n: int,
                   limits: SearchLimits | None = None) -> int:
    return anchored_counts(shape, n, limits)[n - 1]


def single_top_counts(shape: BrickShape, max_bricks: int,
                      limits: SearchLimits | None = None) -> list[int]:
    """Counts of anchored sets with a single top brick, per size 1..max_bricks."""
    rows = _dispatch(shape, max_bricks, MODE_SINGLE_TOP, limits)
    return _counts_by_size(rows)[:max_bricks]


def bottleneck_free_counts(shape: BrickShape, max_bricks: int,
                           limits: SearchLimits | None = None) -> list[int]:
    """Single-top counts with no interior single-brick layer, per size."""
    rows = _dispatch(shape, max_bricks, MODE_NO_BOTTLENECK, limits)
    return _counts_by_size(rows)[:max_bricks]


def collect_sets(shape: BrickShape, n: int, mode: int,
                 limits: SearchLimits | None = None) -> np.ndarray:
    """Materialize all mode-matching sets of exactly n bricks.

    Returns a (count, n, 4) uint8 array of (x+100, y+100, z, rot) rows in a
    deterministic order.  Intended for exhaustive audits at small n.
    """
    if mode == MODE_ORBITS:
        raise ValueError("collection is supported for anchored-style modes only")
    params = _search.kernel_params(shape, n)
    if params["off"] > 90:
        raise ValueError("shape too large for the packed collect format")
    rows = _dispatch(shape, n, mode, limits)
    per_task = rows[:, _search._CNT0 + n - 1]
    total = int(per_task.sum())
    cofs = np.zeros(len(per_task), np.int64)
    np.cumsum(per_task[:-1], out=cofs[1:])
    cbuf = np.zeros(total * n * 4, np.uint8)
    rows2 = _dispatch(shape, n, mode, limits, collecting=True, cbuf=cbuf, cofs=cofs)
    assert (rows2[:, _search._CNT0 + n - 1] == per_task).all()
    return cbuf.reshape(total, n, 4)


def decode_collected(shape: BrickShape, row: np.ndarray) -> Configuration:
    """Turn one collected row back into a Configuration."""
    return Configuration(shape, tuple(
        Placement(int(x) - 100, int(y) - 100, int(z), int(r)) for x, y, z, r in row))


def two_on_one_count(shape: BrickShape) -> int:
    """Ways to place two mutually non-colliding bricks on top of a fixed base."""
    from .geometry import boxes_collide, placements_on_top

    tops = placements_on_top(shape).placements
    count = 0
    for i, p in enumerate(tops):
        for q in tops[i + 1:]:
            if not boxes_collide(p, q, shape):
                count += 1
    return count


def superadditivity_check(shape: BrickShape, n: int, m: int,
                          limits: SearchLimits | None = None) -> bool:
    """True iff a_{n+m} >= a_n * a_m."""
    a = anchored_counts(shape, n + m, limits)
    return a[n + m - 1] >= a[n - 1] * a[m - 1]
