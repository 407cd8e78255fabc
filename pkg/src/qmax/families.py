"""Named graph families: the fan, the near-fan, the three Delta = n-3 shapes and stars.

All outer-planar families use the boundary labeling v_0..v_{n-1}; ``k`` is
the vertex of maximum degree and, for D3, ``j + 2`` is the second vertex
missed by v_k.

  fan(n)        apex 0 joined to every vertex.
  near_fan(n,k) v_k joined to all but v_0; extra chord v_1 v_{n-1}.
  d1(n,k)       v_k misses v_0, v_1; chords v_1 v_{n-1}, v_2 v_{n-1}.
  d2(n,k)       v_k misses v_0, v_2; chords v_1 v_3, v_1 v_{n-1}.
  d3(n,j,k)     v_k misses v_0, v_{j+2}; chords v_1 v_{n-1}, v_{j+1} v_{j+3}.

For d1 at n = 7 only k = 5 has maximum degree n - 3; k = 3, 4 give
near-fans because v_{n-1} already has degree 5.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator

from .graph import CycleGraph, GeneralGraph, GraphError, _norm


class FamilyParameterError(GraphError):
    pass


class Family(str, enum.Enum):
    FAN = "fan"
    NEARFAN = "near_fan"
    D1 = "d1"
    D2 = "d2"
    D3 = "d3"
    STAR = "star"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.strip().lower().replace("-", "_")
        aliases = {"nearfan": "near_fan", "h": "fan"}
        key = aliases.get(key, key)
        for f in cls:
            if f.value == key:
                return f
        raise FamilyParameterError(f"unknown family {name!r}")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyParameterError(msg)


def _apex_chords(n: int, k: int, missed: set[int]) -> set[tuple[int, int]]:
    skip = missed | {k, (k - 1) % n, (k + 1) % n}
    return {_norm((k, i)) for i in range(n) if i not in skip}


def _build(n: int, chords: set[tuple[int, int]]) -> CycleGraph:
    return CycleGraph(n, frozenset(chords))


def fan(n: int) -> CycleGraph:
    _require(n >= 3, f"fan needs n >= 3, got {n}")
    return _build(n, {(0, i) for i in range(2, n - 1)})


def near_fan(n: int, k: int) -> CycleGraph:
    _require(n >= 5, f"near_fan needs n >= 5, got {n}")
    _require(2 <= k <= n - 2, f"near_fan needs 2 <= k <= n-2, got k={k}")
    return _build(n, _apex_chords(n, k, {0}) | {(1, n - 1)})


def d1(n: int, k: int) -> CycleGraph:
    _require(n >= 7, f"d1 needs n >= 7, got {n}")
    _require(3 <= k <= n - 2, f"d1 needs 3 <= k <= n-2, got k={k}")
    return _build(n, _apex_chords(n, k, {0, 1}) | {(2, n - 1), (1, n - 1)})


def d2(n: int, k: int) -> CycleGraph:
    _require(n >= 8, f"d2 needs n >= 8, got {n}")
    _require(4 <= k <= n - 2, f"d2 needs 4 <= k <= n-2, got k={k}")
    return _build(n, _apex_chords(n, k, {0, 2}) | {(1, 3), (1, n - 1)})


def d3(n: int, j: int, k: int) -> CycleGraph:
    _require(n >= 7, f"d3 needs n >= 7, got {n}")
    _require(j >= 1 and j + 3 <= n - 2, f"d3 needs 1 <= j <= n-5, got j={j}")
    _require(2 <= k <= n - 2 and k not in (j + 1, j + 2, j + 3),
             f"d3 needs k in 2..n-2 outside {{j+1, j+2, j+3}}, got k={k}")
    return _build(n, _apex_chords(n, k, {0, j + 2}) | {(1, n - 1), (j + 1, j + 3)})


def star(n: int) -> GeneralGraph:
    _require(n >= 2, f"star needs n >= 2, got {n}")
    return GeneralGraph(n, frozenset((0, i) for i in range(1, n)))


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int
    k: int | None = None
    j: int | None = None

    def build(self):
        f = self.family
        if f is Family.FAN:
            return fan(self.n)
        if f is Family.STAR:
            return star(self.n)
        _require(self.k is not None, f"{f.value} needs k")
        if f is Family.NEARFAN:
            return near_fan(self.n, self.k)
        if f is Family.D1:
            return d1(self.n, self.k)
        if f is Family.D2:
            return d2(self.n, self.k)
        _require(self.j is not None, "d3 needs j")
        return d3(self.n, self.j, self.k)

    @property
    def apex(self) -> int:
        return 0 if self.k is None else self.k

    def label(self) -> str:
        parts = [f"n={self.n}"]
        if self.j is not None:
            parts.append(f"j={self.j}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        return f"{self.family.value}({', '.join(parts)})"


def family_members(family: Family | str, n: int) -> Iterator[FamilySpec]:
    """Every in-range parameterisation of ``family`` at order n (possibly none)."""
    f = Family.parse(family) if isinstance(family, str) else family
    if f is Family.FAN and n >= 3:
        yield FamilySpec(f, n)
    elif f is Family.STAR and n >= 2:
        yield FamilySpec(f, n)
    elif f is Family.NEARFAN and n >= 5:
        for k in range(2, n - 1):
            yield FamilySpec(f, n, k)
    elif f is Family.D1 and n >= 7:
        for k in range(3, n - 1):
            yield FamilySpec(f, n, k)
    elif f is Family.D2 and n >= 8:
        for k in range(4, n - 1):
            yield FamilySpec(f, n, k)
    elif f is Family.D3 and n >= 7:
        for j in range(1, n - 4):
            for k in range(2, n - 1):
                if k not in (j + 1, j + 2, j + 3):
                    yield FamilySpec(f, n, k, j)
