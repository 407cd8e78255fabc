"""Graphs on a fixed Hamiltonian boundary, signless Laplacian assembly and graph6 I/O.

A maximal outer-planar graph of order n >= 3 is stored as a ``CycleGraph``:
vertices 0..n-1 lie on the outer cycle in label order and only the chords
are kept explicitly.  Arbitrary simple graphs (stars, graphs read from
graph6) use ``GeneralGraph``.

Why the boundary labeling loses nothing: in a maximal outer-planar graph with
n >= 4 an edge lies on the outer face iff it belongs to exactly one
triangle, so the Hamiltonian boundary is unique (see ``boundary_cycle``).

Why ``is_maximal_outerplanar`` only needs a count and a crossing test: n - 3
pairwise non-crossing chords of a convex n-gon split it into
(n - 3) + 1 = n - 2 regions whose angle sum is (n - 2) * pi, and every region
is a polygon with at least three corners, so every region is a triangle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph data or vertex id."""


class EdgeExistsError(GraphError):
    pass


class EdgeMissingError(GraphError):
    pass


class Graph6Error(GraphError):
    pass


def _norm(e: Iterable[int]) -> Edge:
    a, b = e
    a, b = int(a), int(b)
    if a == b:
        raise GraphError(f"loop at vertex {a}")
    return (a, b) if a < b else (b, a)


def cycle_edges(n: int) -> tuple[Edge, ...]:
    """Boundary edges {i, i+1 mod n}; empty below n = 3."""
    if n < 3:
        return ()
    return tuple(_norm((i, (i + 1) % n)) for i in range(n))


def _same_graph(g, other):
    if not isinstance(other, (GeneralGraph, CycleGraph)):
        return NotImplemented
    if isinstance(g, CycleGraph) and isinstance(other, CycleGraph):
        return g.n == other.n and g.chords == other.chords
    return g.n == other.n and g.edges == other.edges


@dataclass(frozen=True, eq=False)
class GeneralGraph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative order")
        es = frozenset(_norm(e) for e in self.edges)
        for a, b in es:
            if a < 0 or b >= self.n:
                raise GraphError(f"edge ({a}, {b}) out of range for n={self.n}")
        object.__setattr__(self, "edges", es)

    # Graphs compare as labelled graphs, whatever their representation.
    def __eq__(self, other):
        return _same_graph(self, other)

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[Edge]:
        return self.edges


@dataclass(frozen=True, eq=False)
class CycleGraph:
    """Order-n graph containing the cycle 0-1-...-(n-1)-0 plus ``chords``."""

    n: int
    chords: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("order must be >= 1")
        cs = frozenset(_norm(c) for c in self.chords)
        for a, b in cs:
            if a < 0 or b >= self.n:
                raise GraphError(f"chord ({a}, {b}) out of range for n={self.n}")
            if b - a < 2 or (a == 0 and b == self.n - 1):
                raise GraphError(f"chord ({a}, {b}) duplicates a cycle edge")
        object.__setattr__(self, "chords", cs)

    @classmethod
    def _trusted(cls, n: int, chords: frozenset[Edge]) -> "CycleGraph":
        # Skips validation; callers guarantee normalized, in-range chords.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "chords", chords)
        return g

    def __eq__(self, other):
        return _same_graph(self, other)

    def __hash__(self):
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(cycle_edges(self.n)) + len(self.chords)

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(cycle_edges(self.n)) | self.chords

    def edge_set(self) -> frozenset[Edge]:
        return self.edges

    def sorted_chords(self) -> list[Edge]:
        return sorted(self.chords)


AnyGraph = Union[CycleGraph, GeneralGraph]


def adjacency_lists(g: AnyGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    for row in adj:
        row.sort()
    return adj


def degrees(g: AnyGraph) -> list[int]:
    d = [0] * g.n
    for a, b in g.edges:
        d[a] += 1
        d[b] += 1
    return d


def max_degree(g: AnyGraph) -> int:
    return max(degrees(g), default=0)


def _check_vertex(g: AnyGraph, u: int) -> None:
    if not 0 <= u < g.n:
        raise GraphError(f"vertex {u} not in 0..{g.n - 1}")


def neighbor_degree_sum(g: AnyGraph, u: int) -> int:
    """Sum of d(v) over the neighbours v of u."""
    _check_vertex(g, u)
    d = degrees(g)
    return sum(d[v] for v in adjacency_lists(g)[u])


def is_connected(g: AnyGraph) -> bool:
    if g.n <= 1:
        return True
    adj = adjacency_lists(g)
    seen = {0}
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return len(seen) == g.n


def signless_laplacian(g: AnyGraph) -> np.ndarray:
    """Dense Q = D + A as a float array."""
    n = g.n
    Q = np.zeros((n, n))
    if g.edges:
        e = np.array(sorted(g.edges), dtype=np.intp)
        Q[e[:, 0], e[:, 1]] = 1.0
        Q[e[:, 1], e[:, 0]] = 1.0
        np.fill_diagonal(Q, Q.sum(axis=1))
    return Q


def add_edge(g: AnyGraph, e: Iterable[int]) -> AnyGraph:
    e = _norm(e)
    _check_vertex(g, e[0])
    _check_vertex(g, e[1])
    if e in g.edges:
        raise EdgeExistsError(f"edge {e} already present")
    if isinstance(g, CycleGraph):
        return CycleGraph._trusted(g.n, g.chords | {e})
    return GeneralGraph(g.n, g.edges | {e})


def remove_edge(g: AnyGraph, e: Iterable[int]) -> AnyGraph:
    """Remove an edge.  Removing a boundary edge of a CycleGraph yields a GeneralGraph."""
    e = _norm(e)
    if e not in g.edges:
        raise EdgeMissingError(f"edge {e} not present")
    if isinstance(g, CycleGraph):
        if e in g.chords:
            return CycleGraph._trusted(g.n, g.chords - {e})
        return GeneralGraph(g.n, g.edges - {e})
    return GeneralGraph(g.n, g.edges - {e})


def chords_cross(c1: Edge, c2: Edge) -> bool:
    """Interleaving test for chords of a convex polygon; shared endpoints never cross."""
    a, b = c1
    c, d = c2
    if a > c:
        a, b, c, d = c, d, a, b
    return a < c < b < d


def is_maximal_outerplanar(g: CycleGraph) -> bool:
    if g.n < 3:
        raise GraphError("maximal outer-planarity needs n >= 3")
    if len(g.chords) != g.n - 3:
        return False
    cs = sorted(g.chords)
    for i, c1 in enumerate(cs):
        for c2 in cs[i + 1:]:
            if chords_cross(c1, c2):
                return False
    return True


def to_general(g: AnyGraph) -> GeneralGraph:
    if isinstance(g, GeneralGraph):
        return g
    return GeneralGraph(g.n, g.edges)


def boundary_cycle(g: AnyGraph) -> list[int] | None:
    """Outer cycle of a maximal outer-planar graph, or None if there is none.

    Uses that boundary edges are exactly the edges in one triangle.  The
    cycle starts at vertex 0 and continues to its smaller boundary neighbour.
    """
    n = g.n
    if n < 3 or g.m != 2 * n - 3:
        return None
    if n == 3:
        return [0, 1, 2] if g.m == 3 else None
    adj = [set(r) for r in adjacency_lists(g)]
    nxt: list[list[int]] = [[] for _ in range(n)]
    for a, b in g.edges:
        t = len(adj[a] & adj[b])
        if t == 1:
            nxt[a].append(b)
            nxt[b].append(a)
        elif t != 2:
            return None
    if any(len(r) != 2 for r in nxt):
        return None
    order = [0]
    prev, cur = 0, min(nxt[0])
    while cur != 0:
        order.append(cur)
        a, b = nxt[cur]
        prev, cur = cur, (b if a == prev else a)
        if len(order) > n:
            return None
    return order if len(order) == n else None


def as_cycle_graph(g: AnyGraph) -> CycleGraph:
    """Relabel a maximal outer-planar graph so its boundary is 0..n-1."""
    if isinstance(g, CycleGraph):
        return g
    order = boundary_cycle(g)
    if order is None:
        raise GraphError("graph is not maximal outer-planar")
    pos = {v: i for i, v in enumerate(order)}
    bnd = set(cycle_edges(g.n))
    chords = {_norm((pos[a], pos[b])) for a, b in g.edges} - bnd
    cg = CycleGraph(g.n, frozenset(chords))
    if not is_maximal_outerplanar(cg):
        raise GraphError("graph is not maximal outer-planar")
    return cg


# graph6, short form only (n <= 62)

def graph6_encode(g: AnyGraph) -> str:
    n = g.n
    if not 0 <= n <= 62:
        raise Graph6Error("short-form graph6 supports 0 <= n <= 62")
    es = g.edges
    bits = [1 if (i, j) in es else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k:k + 6]:
            v = (v << 1) | b
        out.append(chr(63 + v))
    return "".join(out)


def graph6_decode(line: str | bytes) -> GeneralGraph:
    if isinstance(line, bytes):
        line = line.decode("ascii")
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 line")
    if any(not 63 <= ord(c) <= 126 for c in s):
        raise Graph6Error(f"illegal character in graph6 line {s!r}")
    n = ord(s[0]) - 63
    if n > 62:
        raise Graph6Error("long-form graph6 (n > 62) is not supported")
    nbits = n * (n - 1) // 2
    body = s[1:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"graph6 body has {len(body)} chars, expected {(nbits + 5) // 6}")
    bits = []
    for c in body:
        v = ord(c) - 63
        bits.extend((v >> (5 - i)) & 1 for i in range(6))
    if any(bits[nbits:]):
        raise Graph6Error("non-zero padding bits")
    edges = set()
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.add((i, j))
            k += 1
    return GeneralGraph(n, frozenset(edges))
