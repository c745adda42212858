"""Shotgun hill climbing for low-PSL binary sequences.

A climb repeatedly moves to the best strictly-better single-flip neighbour
under the fitness sum |C_u|^P. At a local minimum that does not beat the
restart's anchor, a *quake* returns to the anchor and flips h random
positions; after ``threshold`` consecutive failed quakes the search restarts
from a fresh random sequence. Any visited sequence with PSL <= goal ends the
search.

The hot loop lives in :mod:`pslforge._kernels`; this module handles
configuration, seeding, worker threads, cancellation and reporting.
"""

from __future__ import annotations

import enum
import logging
import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import _kernels as K
from .codec import encode
from .sequence import DEFAULT_P, BinarySequence, aacf, merit_factor, psl_db

log = logging.getLogger(__name__)

INT64_MAX = 2**63 - 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    n: int
    goal: int
    p: int = DEFAULT_P
    threshold: int = 1000
    hmin: int = 1
    hmax: Optional[int] = None  # ceil(sqrt(n)) when None
    restart_cap: int = 100_000
    seed: Optional[int] = None
    workers: int = 1
    time_budget: Optional[float] = None  # seconds
    progress_interval: float = 10.0
    debug_check_every: int = 0  # recompute from scratch every k climb steps

    def __post_init__(self) -> None:
        if self.hmax is None and isinstance(self.n, (int, np.integer)):
            object.__setattr__(self, "hmax", math.isqrt(self.n - 1) + 1 if self.n >= 1 else 1)
        self.validate()

    def validate(self) -> None:
        ints = ("n", "goal", "p", "threshold", "hmin", "hmax", "restart_cap", "workers", "debug_check_every")
        for name in ints:
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {v!r}")
        if self.n < 2:
            raise ConfigError(f"n must be >= 2, got {self.n}")
        if self.goal < 1:
            raise ConfigError(f"goal must be >= 1, got {self.goal}")
        if self.p < 1:
            raise ConfigError(f"p must be >= 1, got {self.p}")
        if self.threshold < 1:
            raise ConfigError(f"threshold must be >= 1, got {self.threshold}")
        if not 1 <= self.hmin <= self.hmax <= self.n:
            raise ConfigError(f"need 1 <= hmin <= hmax <= n, got hmin={self.hmin} hmax={self.hmax} n={self.n}")
        if self.restart_cap < 1:
            raise ConfigError(f"restart_cap must be >= 1, got {self.restart_cap}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.seed is not None and (not isinstance(self.seed, (int, np.integer)) or self.seed < 0):
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")
        if self.time_budget is not None and not self.time_budget > 0:
            raise ConfigError(f"time_budget must be positive, got {self.time_budget}")
        if self.debug_check_every < 0:
            raise ConfigError("debug_check_every must be >= 0")
        # fitness, and the partial sums inside the kernel, are bounded by (n-1) * n^p
        if (self.n - 1) * self.n**self.p > INT64_MAX:
            raise ConfigError(f"fitness for n={self.n}, p={self.p} may overflow 64-bit integers")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    sequence: BinarySequence
    psl: int
    fitness: int
    psl_db: float
    merit_factor: float
    goal_met: bool
    restarts_used: int
    quakes_used: int
    neighbor_evaluations: int
    elapsed: float
    seed_used: int
    worker: int = 0
    stop_reason: str = ""

    @property
    def hex(self) -> str:
        return encode(self.sequence)


class Outcome(enum.Enum):
    IMPROVED = "improved"
    LOCAL_MINIMUM = "local_minimum"
    GOAL_REACHED = "goal_reached"


@dataclass
class StepOutcome:
    kind: Outcome
    sequence: Optional[BinarySequence] = None  # set for GOAL_REACHED


@dataclass
class OptimizerState:
    """Mutable state of one climber (one restart).

    ``corr[u]`` caches C_u for the current sequence, ``best_fit`` its
    fitness; ``anchor`` is the best local minimum of this restart and
    ``glob_fit`` its fitness.
    """

    seq: np.ndarray
    corr: np.ndarray
    best_fit: int
    anchor: np.ndarray
    anchor_corr: np.ndarray
    glob_fit: int
    threshold_left: int
    restarts_used: int = 0
    perm: np.ndarray = field(default=None, repr=False)

    @classmethod
    def start(cls, seq, config: SearchConfig) -> "OptimizerState":
        seq = np.array(seq, dtype=np.int64)
        corr = np.empty_like(seq)
        K.full_aacf(seq, corr)
        fit = int(K.fitness_of(corr, config.p))
        return cls(seq, corr, fit, seq.copy(), corr.copy(), fit, config.threshold,
                   perm=np.arange(len(seq), dtype=np.int64))

    @classmethod
    def fresh(cls, config: SearchConfig, rng: np.random.Generator) -> "OptimizerState":
        return cls.start(_random_array(config.n, rng), config)

    @property
    def sequence(self) -> BinarySequence:
        return BinarySequence.from_array(self.seq)

    @property
    def psl(self) -> int:
        return int(K.peak_of(self.corr))

    def reanchor(self, config: SearchConfig) -> None:
        self.glob_fit = self.best_fit
        self.anchor[:] = self.seq
        self.anchor_corr[:] = self.corr
        self.threshold_left = config.threshold


def _random_array(n: int, rng: np.random.Generator) -> np.ndarray:
    seq = np.empty(n, dtype=np.int64)
    K.fill_random(seq, rng)
    return seq


def random_sequence(n: int, rng: np.random.Generator) -> BinarySequence:
    """Uniform random sequence, drawn exactly as the search kernel draws restarts."""
    if n < 2:
        raise ConfigError(f"n must be >= 2, got {n}")
    return BinarySequence.from_array(_random_array(n, rng))


def climb_step(state: OptimizerState, config: SearchConfig) -> StepOutcome:
    i, f, _, hit, _ = K.scan_neighbors(state.seq, state.corr, config.p, config.goal, state.best_fit)
    if hit:
        K.flip(state.seq, state.corr, i)
        state.best_fit = int(f)
        return StepOutcome(Outcome.GOAL_REACHED, state.sequence)
    if i >= 0:
        K.flip(state.seq, state.corr, i)
        state.best_fit = int(f)
        return StepOutcome(Outcome.IMPROVED)
    return StepOutcome(Outcome.LOCAL_MINIMUM)


def quake(state: OptimizerState, config: SearchConfig, rng: np.random.Generator) -> OptimizerState:
    """Return to the anchor and flip h in [hmin, hmax] distinct random positions."""
    K.quake(state.seq, state.corr, state.anchor, state.anchor_corr, state.perm, config.hmin, config.hmax, rng)
    state.best_fit = int(K.fitness_of(state.corr, config.p))
    return state


def worker_rng(seed: int, worker: int) -> np.random.Generator:
    """Independent PCG64 stream for ``worker``, derived from ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(worker,))))


def fresh_seed() -> int:
    return int(np.random.SeedSequence().generate_state(2, np.uint64)[0] >> np.uint64(1))


@dataclass
class _WorkerRun:
    worker: int
    best: np.ndarray
    stats: np.ndarray
    status: int
    elapsed: float


def _effective_workers(requested: int) -> int:
    cap = os.environ.get("PSLFORGE_THREADS")
    if cap:
        try:
            return max(1, min(requested, int(cap)))
        except ValueError:
            log.warning("ignoring non-integer PSLFORGE_THREADS=%r", cap)
    return requested


def _run_worker(config: SearchConfig, seed: int, worker: int, stop: np.ndarray, deadline: Optional[float]) -> _WorkerRun:
    n = config.n
    rng = worker_rng(seed, worker)
    seq = np.empty(n, dtype=np.int64)
    corr = np.empty(n, dtype=np.int64)
    anchor = np.empty(n, dtype=np.int64)
    anchor_corr = np.empty(n, dtype=np.int64)
    best = np.zeros(n, dtype=np.int64)
    perm = np.empty(n, dtype=np.int64)
    scratch = np.empty(n, dtype=np.int64)
    stats = np.zeros(K.N_STATS, dtype=np.int64)
    stats[K.ST_BEST_PSL] = INT64_MAX
    stats[K.ST_BEST_FIT] = INT64_MAX
    # a few restarts per kernel call keeps progress reports and deadline checks timely
    chunk = max(1, min(config.restart_cap, 10))
    cfg = np.array([n, config.p, config.threshold, config.hmin, config.hmax, config.goal,
                    config.restart_cap, chunk, config.debug_check_every], dtype=np.int64)
    t0 = time.perf_counter()
    last_report = t0
    while True:
        status = K.search_chunk(seq, corr, anchor, anchor_corr, best, perm, scratch, cfg, stats, stop, rng)
        if status == K.INCONSISTENT:
            raise AssertionError(f"worker {worker}: cached autocorrelation diverged from full recomputation")
        if status != K.CHUNK_DONE:
            break
        now = time.perf_counter()
        if deadline is not None and now >= deadline:
            status = K.STOPPED
            break
        if now - last_report >= config.progress_interval:
            last_report = now
            log.info("worker %d: %d restarts, %d quakes, best psl %d",
                     worker, stats[K.ST_RESTARTS], stats[K.ST_QUAKES], stats[K.ST_BEST_PSL])
    if status == K.GOAL:
        stop[0] = 1
    return _WorkerRun(worker, best, stats, int(status), time.perf_counter() - t0)


_REASONS = {K.GOAL: "goal", K.STOPPED: "stopped", K.CAP: "restart_cap"}


def search(config: SearchConfig) -> SearchResult:
    """Run shotgun hill climbing per ``config``.

    With several workers, each runs an independent stream derived from the
    seed; the first to reach the goal cancels the others. Counters in the
    result are totals over all workers.
    """
    config.validate()
    seed = fresh_seed() if config.seed is None else int(config.seed)
    workers = _effective_workers(config.workers)
    stop = np.zeros(1, dtype=np.uint8)
    t0 = time.perf_counter()
    deadline = None if config.time_budget is None else t0 + config.time_budget
    timer = None
    if deadline is not None:
        # the kernel polls ``stop`` every climb step; chunk boundaries alone may be too coarse
        timer = threading.Timer(config.time_budget, lambda: stop.__setitem__(0, 1))
        timer.daemon = True
        timer.start()
    try:
        if workers == 1:
            runs = [_run_worker(config, seed, 0, stop, deadline)]
        else:
            with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="shc") as pool:
                futs = [pool.submit(_run_worker, config, seed, w, stop, deadline) for w in range(workers)]
                runs = [f.result() for f in futs]
    finally:
        if timer is not None:
            timer.cancel()
    elapsed = time.perf_counter() - t0

    def rank(r: _WorkerRun):
        return (r.status != K.GOAL, r.stats[K.ST_BEST_PSL], r.stats[K.ST_BEST_FIT], r.worker)

    win = min(runs, key=rank)
    seq = BinarySequence.from_array(win.best)
    prof = aacf(seq)
    value = prof.peak
    goal_met = win.status == K.GOAL
    assert not goal_met or value <= config.goal
    assert value == win.stats[K.ST_BEST_PSL] and prof.fitness(config.p) == win.stats[K.ST_BEST_FIT]
    totals = np.sum([r.stats for r in runs], axis=0)
    reason = "goal" if goal_met else _REASONS[max(r.status for r in runs)]
    if reason == "stopped" and deadline is not None:
        reason = "time_budget"
    return SearchResult(
        sequence=seq,
        psl=value,
        fitness=prof.fitness(config.p),
        psl_db=psl_db(value, config.n),
        merit_factor=merit_factor(seq),
        goal_met=goal_met,
        restarts_used=int(totals[K.ST_RESTARTS]),
        quakes_used=int(totals[K.ST_QUAKES]),
        neighbor_evaluations=int(totals[K.ST_EVALS]),
        elapsed=elapsed,
        seed_used=seed,
        worker=win.worker,
        stop_reason=reason,
    )
