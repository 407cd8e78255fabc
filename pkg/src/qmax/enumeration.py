"""Triangulations of the convex n-gon: enumeration, isomorphism classes and flips.

Isomorphism of maximal outer-planar graphs (n >= 4) reduces to dihedral
equivalence of boundary-labelled triangulations: an isomorphism maps the
unique outer cycle onto itself, so it acts on labels 0..n-1 as a rotation,
possibly composed with a reflection.  A canonical code is therefore the
smallest upper-triangular adjacency bit string over the 2n maps
v -> (s*v + r) mod n, s in {1, -1}.

Codes are stored as ints: bit string b_0 b_1 ... b_{L-1} (row-major over
pairs i < j, L = n(n-1)/2) read as a binary number, so integer order equals
lexicographic order of the fixed-width strings.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .graph import (CycleGraph, GraphError, _norm, adjacency_lists, cycle_edges,
                    is_maximal_outerplanar, max_degree)

Chords = tuple[tuple[int, int], ...]
CanonicalCode = int

# Bounds the numpy working set of canonicalize_many to a few MB.
_BATCH = 4096


class Triangulation(CycleGraph):
    """A CycleGraph with exactly n-3 pairwise non-crossing chords."""

    def __post_init__(self):
        super().__post_init__()
        if self.n < 3 or not is_maximal_outerplanar(self):
            raise GraphError("not a triangulation of the n-gon")


def _tri(n: int, chords: Iterable[tuple[int, int]]) -> Triangulation:
    return Triangulation._trusted(n, frozenset(chords))


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def _polygon(lo: int, hi: int) -> Iterator[Chords]:
    # Triangulations of the polygon lo, lo+1, ..., hi; edge (lo, hi) is its base.
    if hi - lo < 2:
        yield ()
        return
    for t in range(lo + 1, hi):
        left = (lo, t) if t - lo >= 2 else None
        right = (t, hi) if hi - t >= 2 else None
        extra = tuple(c for c in (left, right) if c)
        for a in _polygon(lo, t):
            for b in _polygon(t, hi):
                yield a + b + extra


def _apexes(n: int) -> range:
    return range(1, n - 1)


def _labeled_raw(n: int, apex: int | None = None) -> Iterator[Chords]:
    if n < 3:
        raise GraphError("triangulations need n >= 3")
    top = n - 1
    for t in ([apex] if apex is not None else _apexes(n)):
        extra = tuple(c for c in ((0, t) if t >= 2 else None,
                                  (t, top) if top - t >= 2 else None) if c)
        for a in _polygon(0, t):
            for b in _polygon(t, top):
                yield a + b + extra


def enumerate_labeled(n: int, apex: int | None = None) -> Iterator[Triangulation]:
    """Stream every labelled triangulation of the n-gon once.

    The triangle on boundary edge (0, n-1) has apex t; sub-polygons 0..t and
    t..n-1 recurse the same way.  Apexes are taken in increasing order, and
    ``apex`` restricts the stream to one first choice.
    """
    for ch in _labeled_raw(n, apex):
        yield _tri(n, ch)


@lru_cache(maxsize=None)
def _dihedral_maps(n: int) -> np.ndarray:
    v = np.arange(n)
    rows = [(v + r) % n for r in range(n)] + [(-v + r) % n for r in range(n)]
    return np.array(rows, dtype=np.int32)


@lru_cache(maxsize=None)
def _cycle_bits(n: int) -> int:
    return sum(_pair_bit(n, a, b) for a, b in cycle_edges(n))


def _pair_pos(n: int, a: int, b: int) -> int:
    # Row-major position of (a, b), a < b, in the upper triangle.
    return a * (2 * n - a - 1) // 2 + (b - a - 1)


def _pair_bit(n: int, a: int, b: int) -> int:
    L = n * (n - 1) // 2
    return 1 << (L - 1 - _pair_pos(n, a, b))


def code_of(n: int, chords: Iterable[tuple[int, int]]) -> CanonicalCode:
    """Code of a labelled graph as given (no minimisation)."""
    return _cycle_bits(n) | sum(_pair_bit(n, *_norm(c)) for c in chords)


def code_bits(code: CanonicalCode, n: int) -> str:
    return format(code, f"0{n * (n - 1) // 2}b")


def _relabel(n: int, chords: Iterable[tuple[int, int]], r: int, s: int) -> Chords:
    return tuple(sorted(_norm(((s * a + r) % n, (s * b + r) % n)) for a, b in chords))


def canonical_form(t: CycleGraph) -> tuple[CanonicalCode, Triangulation]:
    """Smallest code over the dihedral relabelings, with the relabeled graph attaining it.

    Plain-Python reference path; ``canonicalize_many`` is the batched one.
    """
    n = t.n
    best = None
    for s in (1, -1):
        for r in range(n):
            ch = _relabel(n, t.chords, r, s)
            c = code_of(n, ch)
            if best is None or c < best[0]:
                best = (c, ch)
    return best[0], _tri(n, best[1])


def canonicalize(t: CycleGraph) -> CanonicalCode:
    return canonical_form(t)[0]


def canonicalize_many(n: int, chord_rows: Sequence[Chords]) -> list[tuple[CanonicalCode, Chords]]:
    """Batched canonical forms for many triangulations of the same n.

    Minimising the bit string over a fixed number of set bits is the same as
    maximising the ascending tuple of set-bit positions, which numpy can do
    column by column.
    """
    if not chord_rows:
        return []
    m = len(chord_rows[0])
    if m == 0:
        return [(_cycle_bits(n), ())] * len(chord_rows)
    P = _dihedral_maps(n)
    out: list[tuple[CanonicalCode, Chords]] = []
    for lo in range(0, len(chord_rows), _BATCH):
        C = np.asarray(chord_rows[lo:lo + _BATCH], dtype=np.int32)       # (T, m, 2)
        M = P[:, C]                                                        # (2n, T, m, 2)
        a = np.minimum(M[..., 0], M[..., 1]).astype(np.int64)
        b = np.maximum(M[..., 0], M[..., 1]).astype(np.int64)
        pos = np.sort(a * n + b, axis=-1)                                  # (2n, T, m)
        cand = np.ones(pos.shape[:2], dtype=bool)
        for col in range(m):
            vals = np.where(cand, pos[:, :, col], -1)
            cand &= vals == vals.max(axis=0)
        best = cand.argmax(axis=0)                                         # (T,)
        win = pos[best, np.arange(pos.shape[1])]                           # (T, m)
        for row in win.tolist():
            ch = tuple((p // n, p % n) for p in row)
            out.append((code_of(n, ch), ch))
    return out


def _classes_for_apex(args: tuple[int, int | None]) -> dict[CanonicalCode, Chords]:
    n, apex = args
    seen: dict[CanonicalCode, Chords] = {}
    buf: list[Chords] = []

    def flush():
        for code, ch in canonicalize_many(n, buf):
            seen.setdefault(code, ch)
        buf.clear()

    for ch in _labeled_raw(n, apex):
        buf.append(ch)
        if len(buf) >= _BATCH:
            flush()
    flush()
    return seen


def default_threads() -> int:
    env = os.environ.get("QMAX_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@lru_cache(maxsize=64)
def _classes_cached(n: int) -> tuple[tuple[CanonicalCode, Chords], ...]:
    return tuple(sorted(_classes_for_apex((n, None)).items()))


def enumerate_classes(n: int, threads: int = 1) -> list[tuple[CanonicalCode, Triangulation]]:
    """One canonical representative per isomorphism class, sorted by code.

    With threads > 1 the stream is split by the apex over edge (0, n-1) and
    the per-part code sets are merged; the result does not depend on threads.
    """
    if n < 3:
        raise GraphError("triangulations need n >= 3")
    if threads <= 1 or n < 8:
        items = _classes_cached(n)
    else:
        merged: dict[CanonicalCode, Chords] = {}
        with ProcessPoolExecutor(max_workers=threads) as ex:
            for part in ex.map(_classes_for_apex, [(n, t) for t in _apexes(n)]):
                merged.update(part)
        items = tuple(sorted(merged.items()))
    return [(code, _tri(n, ch)) for code, ch in items]


def delta_class(n: int, delta: int) -> str:
    """Name of the maximum-degree case: 'n-1', 'n-2', 'n-3' or '<=n-4'."""
    gap = n - delta
    return f"n-{gap}" if gap <= 3 else "<=n-4"


def filter_by_max_degree(classes: Iterable[tuple[CanonicalCode, CycleGraph]],
                         predicate: Callable[[int], bool]) -> list[tuple[CanonicalCode, CycleGraph]]:
    return [(c, g) for c, g in classes if predicate(max_degree(g))]


def _common_neighbors(t: CycleGraph, a: int, b: int) -> list[int]:
    adj = adjacency_lists(t)
    return sorted(set(adj[a]) & set(adj[b]))


def flip(t: CycleGraph, chord: Iterable[int]) -> Triangulation:
    """Swap ``chord`` for the other diagonal of its two adjacent triangles."""
    c = _norm(chord)
    if c not in t.chords:
        raise GraphError(f"{c} is not a chord of the triangulation")
    apexes = _common_neighbors(t, *c)
    if len(apexes) != 2:
        raise GraphError(f"chord {c} does not lie in exactly two triangles")
    new = _norm(apexes)
    return _tri(t.n, (t.chords - {c}) | {new})


def random_triangulation(n: int, rng: random.Random) -> Triangulation:
    """Uniform labelled triangulation: apexes drawn with Catalan weights."""
    if n < 3:
        raise GraphError("triangulations need n >= 3")
    chords: list[tuple[int, int]] = []
    stack = [(0, n - 1)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        ts = list(range(lo + 1, hi))
        w = [catalan(max(t - lo - 1, 0)) * catalan(max(hi - t - 1, 0)) for t in ts]
        t = rng.choices(ts, weights=w)[0]
        if t - lo >= 2:
            chords.append((lo, t))
        if hi - t >= 2:
            chords.append((t, hi))
        stack.append((lo, t))
        stack.append((t, hi))
    return _tri(n, chords)


@dataclass
class SearchResult:
    best: Triangulation
    q: float
    trajectory: list[tuple[int, int, float]] = field(default_factory=list)  # (restart, step, q)

    def __iter__(self):
        # Unpacks as (best, q).
        return iter((self.best, self.q))


def flip_search_max_q(n: int, restarts: int = 10, budget: int = 1000, seed: int = 0,
                      tol: float = 1e-10) -> SearchResult:
    """Steepest-ascent flip search for a large Q-index.

    Each restart starts from a uniform random triangulation and takes up to
    ``budget`` strictly improving moves.  Ties between equally good flips go
    to the smaller canonical code, and a plateau stops the restart.
    """
    from .spectral import qindex

    if n < 4:
        raise GraphError("flip search needs n >= 4")
    rng = random.Random(seed)
    best: Triangulation | None = None
    best_q = -math.inf
    traj: list[tuple[int, int, float]] = []
    for r in range(max(restarts, 1)):
        t = random_triangulation(n, rng)
        q = qindex(t, tol).q
        traj.append((r, 0, q))
        for step in range(1, budget + 1):
            cands = []
            for c in sorted(t.chords):
                f = flip(t, c)
                cands.append((qindex(f, tol).q, f))
            top = max(cq for cq, _ in cands)
            if top <= q + tol:
                break
            ties = [f for cq, f in cands if cq >= top - tol]
            t = min(ties, key=canonicalize) if len(ties) > 1 else ties[0]
            q = qindex(t, tol).q
            traj.append((r, step, q))
        if q > best_q + tol or best is None:
            best, best_q = t, q
    return SearchResult(best, best_q, traj)
