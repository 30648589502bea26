"""Ablation variants sharing the core state and bookkeeping.

- pair: evaluate all (u in C, eligible endpoint v) pairs of a random uncovered
  edge and exchange the max-benefit pair, instead of the two-stage rule.
- noforget: never rescale weights.
- pd: decrement-by-one forgetting every pd exchange steps, instead of the
  threshold-triggered rho rescale.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels as K
from .graph import Graph
from .solver import SolverState, StepOutcome, step

VARIANT_TAGS = ("numvc", "pair", "noforget", "pd")


@dataclass(frozen=True)
class VariantKind:
    tag: str
    pd: int = 100

    def __post_init__(self):
        if self.tag not in VARIANT_TAGS:
            raise ValueError(f"unknown variant tag {self.tag!r}")
        if self.tag == "pd" and self.pd < 1:
            raise ValueError(f"pd must be >= 1, got {self.pd}")


def pair_benefit(g: Graph, state: SolverState, u: int, v: int) -> int:
    """Cost decrease of simultaneously removing u and adding v:
    dscore(u) + dscore(v), plus w({u,v}) when they are adjacent."""
    if not state.in_c[u]:
        raise ValueError(f"vertex {u} is not in C")
    if state.in_c[v]:
        raise ValueError(f"vertex {v} is in C")
    ben = int(state.dscore[u]) + int(state.dscore[v])
    for i in range(g.adj_off[u], g.adj_off[u + 1]):
        if g.adj_vert[i] == v:
            ben += int(state.weight[g.adj_edge[i]])
            break
    return ben


def select_pair(g: Graph, state: SolverState, e: int) -> tuple[int, int]:
    """Max-benefit (u in C, eligible endpoint of e) pair; ties prefer older u,
    then older v, then lower ids."""
    if state.uncov_pos[e] < 0:
        raise ValueError(f"edge {e} is covered")
    u, v = K._select_pair(g.eu, g.ev, g.adj_off, g.adj_vert, g.adj_edge,
                          state.in_c, state.c_list, state.dscore,
                          state.conf_change, state.last_change, state.weight,
                          state.scalars, e)
    if v < 0:
        raise RuntimeError("uncovered edge has no endpoint with conf_change = 1")
    return int(u), int(v)


def step_pair(g: Graph, state: SolverState) -> StepOutcome:
    """One iteration of the pair variant; state.variant_code must be pair."""
    if state.variant_code != K.V_PAIR:
        raise ValueError("state is not configured for the pair variant")
    return step(g, state)


def forget_pd(g: Graph, state: SolverState) -> None:
    """Decrement every weight above one, then repair the cached scores."""
    K._forget_pd(g.n, g.m, g.eu, g.ev, state.weight, state.in_c, state.dscore,
                 state.scalars)
