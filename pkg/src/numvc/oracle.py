"""Exact minimum vertex cover for small instances, as ground truth for tests."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, VertexSet

DEFAULT_LIMIT = 32


class InstanceTooLargeError(ValueError):
    pass


@dataclass(frozen=True)
class ExactResult:
    optimum: int
    witness: VertexSet


def _adj_masks(g: Graph) -> list[int]:
    adj = [0] * g.n
    for u, v in zip(g.eu.tolist(), g.ev.tolist()):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _matching_bound(adj: list[int], active: int) -> int:
    """Greedy matching size: each matched edge needs one cover vertex."""
    bound = 0
    rest = active
    while rest:
        u = (rest & -rest).bit_length() - 1
        rest &= rest - 1
        nb = adj[u] & rest
        if nb:
            v = (nb & -nb).bit_length() - 1
            rest &= ~(1 << v)
            bound += 1
    return bound


def exact_mvc(g: Graph, limit: int = DEFAULT_LIMIT) -> ExactResult:
    """Branch and bound on the max-degree vertex: take it, or take all its
    neighbors. Deterministic; refuses instances above `limit` vertices."""
    if g.n > limit:
        raise InstanceTooLargeError(
            f"instance has {g.n} vertices, exact solver limit is {limit}")
    adj = _adj_masks(g)
    full = (1 << g.n) - 1 if g.n else 0
    best_count = g.n
    best_mask = full

    def search(active: int, picked: int, count: int) -> None:
        nonlocal best_count, best_mask
        if count + _matching_bound(adj, active) >= best_count:
            return
        # max-degree vertex of the residual graph
        vmax = -1
        dmax = 0
        rest = active
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            d = (adj[u] & active).bit_count()
            if d > dmax:
                dmax = d
                vmax = u
        if vmax < 0:  # no residual edges: picked covers everything
            best_count = count
            best_mask = picked
            return
        nb = adj[vmax] & active
        search(active & ~(1 << vmax), picked | (1 << vmax), count + 1)
        search(active & ~nb & ~(1 << vmax), picked | nb, count + nb.bit_count())

    search(full, 0, 0)
    witness = VertexSet(g.n, (v for v in range(g.n) if best_mask >> v & 1))
    return ExactResult(optimum=best_count, witness=witness)


def brute_force_mvc(g: Graph, limit: int = 16) -> int:
    """Exhaustive enumeration over all vertex subsets; independent second oracle."""
    if g.n > limit:
        raise InstanceTooLargeError(
            f"instance has {g.n} vertices, enumeration limit is {limit}")
    adj = _adj_masks(g)
    best = g.n
    for mask in range(1 << g.n):
        size = mask.bit_count()
        if size >= best:
            continue
        # cover iff every vertex outside the set has all neighbors inside
        out = ~mask
        ok = True
        for v in range(g.n):
            if out >> v & 1 and adj[v] & out:
                ok = False
                break
        if ok:
            best = size
    return best
