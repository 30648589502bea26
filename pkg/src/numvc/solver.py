"""Two-stage-exchange local search with edge weighting and forgetting.

The search keeps a candidate solution C and, per iteration, either records an
improved cover (when C already covers everything) or swaps one vertex out and
one in, guided by weighted dscores and the conf_change prohibition rule.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels as K
from .graph import Graph, VertexSet, is_vertex_cover

VARIANT_CODES = {"numvc": K.V_NUMVC, "pair": K.V_PAIR,
                 "noforget": K.V_NOFORGET, "pd": K.V_PD}

_CHUNK = 1 << 10  # wall-clock poll granularity, in steps
_HUGE_STEPS = 1 << 62


class StepOutcome(enum.Enum):
    IMPROVED = "improved"
    EXCHANGED = "exchanged"


@dataclass
class SolverConfig:
    """Search parameters. gamma is an absolute weight-mean threshold; when
    None, gamma_factor * |V| (rounded) is used instead."""

    gamma: float | None = None
    gamma_factor: float = 0.5
    rho: float = 0.3
    seed: int = 0
    cutoff_time: float | None = None
    max_steps: int | None = None
    target_size: int | None = None
    variant: str = "numvc"
    pd: int = 100

    def validate(self) -> None:
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must be in (0, 1), got {self.rho}")
        if self.gamma is not None and self.gamma < 1:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")
        if self.gamma is None and self.gamma_factor <= 0:
            raise ValueError(f"gamma_factor must be positive, got {self.gamma_factor}")
        if self.variant not in VARIANT_CODES:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "pd" and self.pd < 1:
            raise ValueError(f"pd must be >= 1, got {self.pd}")
        if self.cutoff_time is not None and self.cutoff_time <= 0:
            raise ValueError("cutoff_time must be positive")
        if self.max_steps is not None and self.max_steps < 0:
            raise ValueError("max_steps must be non-negative")

    def resolve_gamma(self, n: int) -> int:
        if self.gamma is not None:
            return int(self.gamma)
        return max(1, round(self.gamma_factor * n))


@dataclass
class RunRecord:
    """Outcome of one run."""

    seed: int
    best_size: int
    success: bool
    time_to_best: float
    steps_to_best: int
    total_steps: int
    total_time: float


@dataclass
class SolverState:
    """All mutable per-run search state, laid out as flat arrays for the kernels."""

    graph: Graph
    in_c: np.ndarray
    c_list: np.ndarray
    c_pos: np.ndarray
    dscore: np.ndarray
    conf_change: np.ndarray
    last_change: np.ndarray
    weight: np.ndarray
    uncov_list: np.ndarray
    uncov_pos: np.ndarray
    best_in_c: np.ndarray
    scalars: np.ndarray
    rng: np.ndarray
    gamma_abs: int
    rho: float
    variant_code: int
    pd: int

    @property
    def C_size(self) -> int:
        return int(self.scalars[K.CSIZE])

    @property
    def cost(self) -> int:
        return int(self.scalars[K.COST])

    @property
    def weight_sum(self) -> int:
        return int(self.scalars[K.WSUM])

    @property
    def step_count(self) -> int:
        return int(self.scalars[K.STEP])

    @property
    def exchange_steps(self) -> int:
        return int(self.scalars[K.XSTEP])

    @property
    def best_size(self) -> int:
        return int(self.scalars[K.BEST])

    @property
    def steps_to_best(self) -> int:
        return int(self.scalars[K.STEPS_BEST])

    @property
    def uncovered(self) -> frozenset[int]:
        k = int(self.scalars[K.NUNCOV])
        return frozenset(self.uncov_list[:k].tolist())

    @property
    def candidate(self) -> VertexSet:
        return VertexSet.from_mask(self.in_c.astype(bool))

    @property
    def best_cover(self) -> VertexSet:
        return VertexSet.from_mask(self.best_in_c.astype(bool))

    def _args(self):
        g = self.graph
        return (g.n, g.m, g.eu, g.ev, g.adj_off, g.adj_vert, g.adj_edge,
                self.in_c, self.c_list, self.c_pos, self.dscore,
                self.conf_change, self.last_change, self.weight,
                self.uncov_list, self.uncov_pos, self.best_in_c,
                self.scalars, self.rng)


def init_state(g: Graph, cfg: SolverConfig) -> SolverState:
    """Fresh state: C empty, unit weights, all conf_change set."""
    cfg.validate()
    n, m = g.n, g.m
    deg = g.adj_off[1:] - g.adj_off[:-1]
    scalars = np.zeros(K.N_SCALARS, dtype=np.int64)
    scalars[K.WSUM] = m
    scalars[K.COST] = m
    scalars[K.BEST] = n + 1  # sentinel until greedy construction sets a cover
    scalars[K.NUNCOV] = m
    return SolverState(
        graph=g,
        in_c=np.zeros(n, dtype=np.uint8),
        c_list=np.zeros(n, dtype=np.int64),
        c_pos=np.full(n, -1, dtype=np.int64),
        dscore=deg.astype(np.int64),
        conf_change=np.ones(n, dtype=np.uint8),
        last_change=np.zeros(n, dtype=np.int64),
        weight=np.ones(m, dtype=np.int64),
        uncov_list=np.arange(m, dtype=np.int64),
        uncov_pos=np.arange(m, dtype=np.int64),
        best_in_c=np.zeros(n, dtype=np.uint8),
        scalars=scalars,
        rng=K.seed_rng(cfg.seed),
        gamma_abs=cfg.resolve_gamma(n),
        rho=cfg.rho,
        variant_code=VARIANT_CODES[cfg.variant],
        pd=cfg.pd,
    )


def compute_dscore(g: Graph, state: SolverState, v: int) -> int:
    """From-scratch dscore; the incremental cache must always agree with this."""
    total = 0
    for i in range(g.adj_off[v], g.adj_off[v + 1]):
        if state.in_c[g.adj_vert[i]] == 0:
            total += int(state.weight[g.adj_edge[i]])
    return -total if state.in_c[v] else total


def reference_scores(g: Graph, state: SolverState):
    """Vectorized from-scratch (dscore array, cost, weight_sum) oracle."""
    in_c = state.in_c.astype(bool)
    w = state.weight
    cu = in_c[g.eu]
    cv = in_c[g.ev]
    unc = ~cu & ~cv
    ds = np.zeros(g.n, dtype=np.int64)
    np.add.at(ds, g.eu[unc], w[unc])
    np.add.at(ds, g.ev[unc], w[unc])
    sole_u = cu & ~cv
    sole_v = cv & ~cu
    np.add.at(ds, g.eu[sole_u], -w[sole_u])
    np.add.at(ds, g.ev[sole_v], -w[sole_v])
    return ds, int(w[unc].sum()), int(w.sum())


def greedy_construct(g: Graph, state: SolverState) -> None:
    """Grow C by max-dscore vertices until it covers; record it as the best."""
    K._greedy_construct(g.n, g.eu, g.ev, g.adj_off, g.adj_vert, g.adj_edge,
                        state.in_c, state.c_list, state.c_pos, state.dscore,
                        state.conf_change, state.last_change, state.weight,
                        state.uncov_list, state.uncov_pos, state.scalars,
                        state.rng)
    K._copy_best(g.n, state.in_c, state.best_in_c, state.scalars)


def select_remove_vertex(state: SolverState) -> int:
    if state.C_size == 0:
        raise ValueError("cannot select a removal vertex from an empty C")
    return int(K._select_remove(state.c_list, state.dscore, state.last_change,
                                state.scalars))


def select_add_vertex(g: Graph, state: SolverState, e: int) -> int:
    if state.uncov_pos[e] < 0:
        raise ValueError(f"edge {e} is covered")
    v = int(K._select_add(g.eu, g.ev, state.dscore, state.conf_change,
                          state.last_change, e))
    if v < 0:
        raise RuntimeError("uncovered edge has no endpoint with conf_change = 1")
    return v


def remove_from_C(g: Graph, state: SolverState, u: int) -> None:
    if not state.in_c[u]:
        raise ValueError(f"vertex {u} is not in C")
    K._remove_vertex(g.adj_off, g.adj_vert, g.adj_edge, state.in_c,
                     state.c_list, state.c_pos, state.dscore,
                     state.conf_change, state.last_change, state.weight,
                     state.uncov_list, state.uncov_pos, state.scalars, u)


def add_to_C(g: Graph, state: SolverState, v: int) -> None:
    if state.in_c[v]:
        raise ValueError(f"vertex {v} is already in C")
    K._add_vertex(g.adj_off, g.adj_vert, g.adj_edge, state.in_c,
                  state.c_list, state.c_pos, state.dscore,
                  state.conf_change, state.last_change, state.weight,
                  state.uncov_list, state.uncov_pos, state.scalars, v)


def bump_uncovered_weights(g: Graph, state: SolverState) -> None:
    K._bump_weights(g.eu, g.ev, state.weight, state.dscore, state.uncov_list,
                    state.scalars)


def forget_weights(g: Graph, state: SolverState, rho: float) -> None:
    K._forget_rho(g.n, g.m, g.eu, g.ev, state.weight, state.in_c,
                  state.dscore, state.scalars, rho)


def step(g: Graph, state: SolverState) -> StepOutcome:
    """One loop iteration under the state's variant; see solve() for the loop."""
    out = K._one_step(*state._args(), state.gamma_abs, state.rho,
                      state.variant_code, state.pd)
    return StepOutcome.IMPROVED if out == 0 else StepOutcome.EXCHANGED


def solve(g: Graph, cfg: SolverConfig) -> tuple[VertexSet, RunRecord]:
    """Run the configured search until the step/time budget or target is hit."""
    cfg.validate()
    if cfg.cutoff_time is None and cfg.max_steps is None:
        raise ValueError("at least one of cutoff_time / max_steps must be set")
    state = init_state(g, cfg)
    target = cfg.target_size if cfg.target_size is not None else 0
    max_steps = cfg.max_steps if cfg.max_steps is not None else _HUGE_STEPS

    t0 = time.perf_counter()
    greedy_construct(g, state)
    now = time.perf_counter()
    time_to_best = now - t0

    while True:
        if state.best_size <= target or state.step_count >= max_steps:
            break
        if cfg.cutoff_time is not None and now - t0 >= cfg.cutoff_time:
            break
        prev_best = state.best_size
        prev_step = state.step_count
        prev_t = now
        status = K._run_steps(*state._args(), state.gamma_abs, state.rho,
                              state.variant_code, state.pd, _CHUNK, max_steps,
                              target)
        now = time.perf_counter()
        if state.best_size < prev_best:
            # best moved somewhere inside the chunk; interpolate its timestamp
            span = max(1, state.step_count - prev_step)
            frac = (state.steps_to_best - prev_step) / span
            time_to_best = (prev_t - t0) + frac * (now - prev_t)
        if status != 0:
            break

    total_time = time.perf_counter() - t0
    best = state.best_cover
    if not is_vertex_cover(g, best):
        raise RuntimeError("internal error: best solution is not a vertex cover")
    record = RunRecord(
        seed=cfg.seed,
        best_size=best.size,
        success=cfg.target_size is not None and best.size <= cfg.target_size,
        time_to_best=time_to_best,
        steps_to_best=state.steps_to_best,
        total_steps=state.step_count,
        total_time=total_time,
    )
    return best, record
