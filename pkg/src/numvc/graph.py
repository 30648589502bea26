"""Undirected simple graphs in DIMACS ASCII format, plus the MVC/MIS/MC reductions."""
from __future__ import annotations

import warnings
from typing import Iterable, Iterator, TextIO

import numpy as np


class DimacsParseError(ValueError):
    """Malformed DIMACS input. Carries the 1-based line number when known."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class Graph:
    """Immutable undirected simple graph.

    Vertices are 0-based internally; all DIMACS I/O is 1-based. Edges keep
    their first-appearance order and are indexed 0..m-1; that index is the
    key for per-edge weight arrays in the solver.
    """

    __slots__ = ("n", "m", "eu", "ev", "adj_off", "adj_vert", "adj_edge")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        eu = []
        ev = []
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex index out of range in edge ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            eu.append(u)
            ev.append(v)
        self.n = n
        self.m = len(eu)
        self.eu = np.asarray(eu, dtype=np.int64)
        self.ev = np.asarray(ev, dtype=np.int64)
        # CSR adjacency carrying both the neighbor and the incident edge id;
        # each vertex's neighbors are sorted so adjacency is binary-searchable
        deg = np.zeros(n, dtype=np.int64)
        np.add.at(deg, self.eu, 1)
        np.add.at(deg, self.ev, 1)
        off = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=off[1:])
        self.adj_off = off
        owner = np.concatenate((self.eu, self.ev))
        nbr = np.concatenate((self.ev, self.eu))
        eid = np.tile(np.arange(self.m, dtype=np.int64), 2)
        order = np.lexsort((nbr, owner))
        self.adj_vert = nbr[order]
        self.adj_edge = eid[order]

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.eu.tolist(), self.ev.tolist()))

    def neighbors(self, v: int) -> np.ndarray:
        return self.adj_vert[self.adj_off[v]:self.adj_off[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.adj_off[v + 1] - self.adj_off[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class VertexSet:
    """Vertex subset with a membership mask and cached cardinality."""

    __slots__ = ("mask", "_size")

    def __init__(self, n: int, members: Iterable[int] = ()):
        self.mask = np.zeros(n, dtype=bool)
        for v in members:
            self.mask[v] = True
        self._size = int(self.mask.sum())

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "VertexSet":
        s = cls(0)
        s.mask = mask.astype(bool, copy=True)
        s._size = int(s.mask.sum())
        return s

    @property
    def n(self) -> int:
        return len(self.mask)

    @property
    def size(self) -> int:
        return self._size

    def add(self, v: int) -> None:
        if not self.mask[v]:
            self.mask[v] = True
            self._size += 1

    def discard(self, v: int) -> None:
        if self.mask[v]:
            self.mask[v] = False
            self._size -= 1

    def complement(self) -> "VertexSet":
        return VertexSet.from_mask(~self.mask)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask[v])

    def __iter__(self) -> Iterator[int]:
        return iter(np.flatnonzero(self.mask).tolist())

    def __len__(self) -> int:
        return self._size

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexSet) and np.array_equal(self.mask, other.mask)

    def __repr__(self) -> str:
        return f"VertexSet(size={self._size} of {self.n})"


def parse_dimacs(source: str | bytes | Iterable[str]) -> Graph:
    """Parse DIMACS ASCII ("p edge N M" / "p col N M", "e u v", "c ..." lines).

    Duplicate edge lines and both orientations of an edge are merged silently;
    self-loops are an error. A declared-vs-actual edge count mismatch only
    warns: the parsed edges are authoritative.
    """
    if isinstance(source, bytes):
        source = source.decode("ascii", errors="replace")
    if isinstance(source, str):
        lines: Iterable[str] = source.splitlines()
    else:
        lines = source

    n = -1
    declared_m = 0
    eu: list[int] = []
    ev: list[int] = []
    seen: set[tuple[int, int]] = set()

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise DimacsParseError("duplicate problem line", line_no)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsParseError(f"malformed problem line {line!r}", line_no)
            try:
                n = int(parts[2])
                declared_m = int(parts[3])
            except ValueError:
                raise DimacsParseError(f"non-integer token in problem line {line!r}", line_no) from None
            if n < 0 or declared_m < 0:
                raise DimacsParseError("negative count in problem line", line_no)
        elif parts[0] == "e":
            if n < 0:
                raise DimacsParseError("edge line before problem line", line_no)
            if len(parts) != 3:
                raise DimacsParseError(f"malformed edge line {line!r}", line_no)
            try:
                u = int(parts[1])
                v = int(parts[2])
            except ValueError:
                raise DimacsParseError(f"non-integer token in edge line {line!r}", line_no) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise DimacsParseError(f"vertex index out of range in edge ({u}, {v})", line_no)
            if u == v:
                raise DimacsParseError(f"self-loop at vertex {u}", line_no)
            u -= 1
            v -= 1
            key = (u, v) if u < v else (v, u)
            if key not in seen:
                seen.add(key)
                eu.append(u)
                ev.append(v)
        else:
            raise DimacsParseError(f"unrecognized line {line!r}", line_no)

    if n < 0:
        raise DimacsParseError("missing problem line")
    if declared_m != len(eu):
        warnings.warn(
            f"declared edge count {declared_m} differs from parsed {len(eu)}; "
            "using the parsed edges",
            stacklevel=2,
        )
    return Graph(n, zip(eu, ev))


def load_dimacs(path: str) -> Graph:
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        return parse_dimacs(fh)


def write_dimacs(g: Graph, fh: TextIO) -> None:
    fh.write(f"p edge {g.n} {g.m}\n")
    for u, v in zip(g.eu.tolist(), g.ev.tolist()):
        fh.write(f"e {u + 1} {v + 1}\n")


def dimacs_str(g: Graph) -> str:
    out = [f"p edge {g.n} {g.m}"]
    out.extend(f"e {u + 1} {v + 1}" for u, v in zip(g.eu.tolist(), g.ev.tolist()))
    return "\n".join(out) + "\n"


_MAX_COMPLEMENT_N = 65536  # n*(n-1)/2 must stay below 2**31 edge ids


def complement(g: Graph) -> Graph:
    """Complement graph on the same vertex set; edges in lexicographic order."""
    if g.n > _MAX_COMPLEMENT_N:
        raise ValueError(f"complement of n={g.n} exceeds the edge-id capacity")
    eu: list[int] = []
    ev: list[int] = []
    for u in range(g.n):
        absent = np.ones(g.n, dtype=bool)
        absent[: u + 1] = False
        absent[g.neighbors(u)] = False
        vs = np.flatnonzero(absent)
        eu.extend([u] * len(vs))
        ev.extend(vs.tolist())
    return Graph(g.n, zip(eu, ev))


def is_vertex_cover(g: Graph, s: VertexSet) -> bool:
    if s.n != g.n:
        raise ValueError("vertex set defined over a different vertex range")
    if g.m == 0:
        return True
    return bool(np.all(s.mask[g.eu] | s.mask[g.ev]))


def is_independent_set(g: Graph, s: VertexSet) -> bool:
    if s.n != g.n:
        raise ValueError("vertex set defined over a different vertex range")
    if g.m == 0:
        return True
    return not bool(np.any(s.mask[g.eu] & s.mask[g.ev]))


def is_clique(g: Graph, s: VertexSet) -> bool:
    members = list(s)
    for i, u in enumerate(members):
        nb = set(g.neighbors(u).tolist())
        for v in members[i + 1:]:
            if v not in nb:
                return False
    return True


def write_solution(s: VertexSet, fh: TextIO) -> None:
    """Solution format: "s <size>" then one "v <id>" line per vertex, 1-based."""
    fh.write(f"s {s.size}\n")
    for v in s:
        fh.write(f"v {v + 1}\n")


def solution_str(s: VertexSet) -> str:
    out = [f"s {s.size}"]
    out.extend(f"v {v + 1}" for v in s)
    return "\n".join(out) + "\n"
