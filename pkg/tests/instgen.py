"""Deterministic graph generators used by the test suite.

hamming_graph reconstructs the DIMACS hamming-family clique graphs exactly
(the construction is deterministic, so cover sizes of the published files
carry over). rb_planted builds BHOSLIB-style random instances with a planted
independent set of one vertex per clique group, sized like the frb families.
"""
from __future__ import annotations

import numpy as np

from numvc.graph import Graph


def hamming_graph(bits: int = 8, min_dist: int = 4) -> Graph:
    """Clique-side Hamming graph: binary words, edges at distance >= min_dist."""
    n = 1 << bits
    eu = []
    ev = []
    for u in range(n):
        for v in range(u + 1, n):
            if (u ^ v).bit_count() >= min_dist:
                eu.append(u)
                ev.append(v)
    return Graph(n, zip(eu, ev))


def rb_planted(groups: int, group_size: int, cross_per_pair: int,
               seed: int = 0) -> tuple[Graph, list[int]]:
    """Planted-optimum RB-model instance in mis form.

    Vertices fall into `groups` cliques of `group_size`; the first vertex of
    each group forms the planted independent set (cover = all the rest). Each
    group pair gets `cross_per_pair` distinct random cross edges that avoid
    the planted-planted pair.
    """
    s = group_size
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    for gi in range(groups):
        base = gi * s
        for a in range(s):
            for b in range(a + 1, s):
                edges.append((base + a, base + b))
    for gi in range(groups):
        for gj in range(gi + 1, groups):
            # local combo 0 is (planted, planted); sample the others
            combos = rng.choice(s * s - 1, size=cross_per_pair, replace=False) + 1
            for c in combos:
                edges.append((gi * s + c // s, gj * s + c % s))
    planted = [gi * s for gi in range(groups)]
    return Graph(groups * s, edges), planted


def frb30_15_like(seed: int = 0) -> tuple[Graph, int]:
    """450 vertices, hidden cover 420; density matching the frb30-15 family."""
    g, planted = rb_planted(30, 15, 34, seed)
    return g, g.n - len(planted)


def frb35_17_like(seed: int = 0) -> tuple[Graph, int]:
    """595 vertices, hidden cover 560; density matching the frb35-17 family."""
    g, planted = rb_planted(35, 17, 39, seed)
    return g, g.n - len(planted)


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Erdos-Renyi G(n, p)."""
    rng = np.random.default_rng(seed)
    eu = []
    ev = []
    for u in range(n):
        hits = np.flatnonzero(rng.random(n - u - 1) < p)
        eu.extend([u] * len(hits))
        ev.extend((hits + u + 1).tolist())
    return Graph(n, zip(eu, ev))
