"""Cycle C_n with added chords, edge classification and witness checking.

Vertices are the integers 1..n.  Host edges are {i, i+1} and {1, n}; every
other edge of the graph is a chord.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Edge = tuple[int, int]


class VertexRangeError(ValueError):
    """A vertex label outside 1..n."""


def norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def is_host_pair(n: int, a: int, b: int) -> bool:
    lo, hi = norm_edge(a, b)
    return hi - lo == 1 or (lo == 1 and hi == n)


@dataclass(frozen=True)
class ChordedCycle:
    """The host cycle C_n plus a deduplicated, sorted tuple of chords."""

    n: int
    chords: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"host cycle needs n >= 3, got {self.n}")
        cleaned = set()
        for a, b in self.chords:
            a, b = int(a), int(b)
            self._check_vertex(a)
            self._check_vertex(b)
            if a == b:
                raise ValueError(f"loop {{{a},{b}}} is not a chord")
            if is_host_pair(self.n, a, b):
                raise ValueError(f"{{{a},{b}}} is a host edge of C_{self.n}, not a chord")
            cleaned.add(norm_edge(a, b))
        object.__setattr__(self, "chords", tuple(sorted(cleaned)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "ChordedCycle":
        return cls(n, tuple((p[0], p[1]) for p in pairs))

    def with_chords(self, pairs: Iterable[Sequence[int]]) -> "ChordedCycle":
        """Return a copy with extra chords; chords already present are absorbed."""
        return ChordedCycle(self.n, self.chords + tuple((p[0], p[1]) for p in pairs))

    def without_chords(self, pairs: Iterable[Sequence[int]]) -> "ChordedCycle":
        drop = {norm_edge(p[0], p[1]) for p in pairs}
        return ChordedCycle(self.n, tuple(c for c in self.chords if c not in drop))

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise VertexRangeError(f"vertex {v} outside 1..{self.n}")

    @cached_property
    def chord_set(self) -> frozenset[Edge]:
        return frozenset(self.chords)

    @cached_property
    def _chord_codes(self) -> np.ndarray:
        # edge {lo, hi} encoded as lo * (n + 1) + hi; sorted because chords are
        return np.array([lo * (self.n + 1) + hi for lo, hi in self.chords], dtype=np.int64)

    def is_chord(self, a: int, b: int) -> bool:
        self._check_vertex(a)
        self._check_vertex(b)
        return norm_edge(a, b) in self.chord_set

    def has_edge(self, a: int, b: int) -> bool:
        self._check_vertex(a)
        self._check_vertex(b)
        if a == b:
            return False
        return is_host_pair(self.n, a, b) or norm_edge(a, b) in self.chord_set

    def host_edges(self) -> list[Edge]:
        return [(i, i + 1) for i in range(1, self.n)] + [(1, self.n)]

    def to_dict(self) -> dict:
        return {"n": self.n, "chords": [list(c) for c in self.chords]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ChordedCycle":
        return cls.from_pairs(int(data["n"]), data["chords"])


@dataclass(frozen=True)
class WitnessCycle:
    """A cycle given by its vertex sequence; it closes from the last vertex to the first.

    ``provenance`` records how a constructor produced the cycle and is not
    part of the serialized form.
    """

    vertices: tuple[int, ...]
    chord_edges: tuple[Edge, ...]
    provenance: str = field(default="", compare=False)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "vertices": list(self.vertices),
            "chord_edges": [list(c) for c in self.chord_edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    length: int
    chord_edges: tuple[Edge, ...] = ()
    reason: str = ""  # "", "short", "range", "repeat", "non-edge", "count"
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"PASS length={self.length} chords={list(self.chord_edges)}"
        return f"FAIL({self.reason}) {self.detail}"


def validate_witness(g: ChordedCycle, vertices: Sequence[int], k: int) -> ValidationReport:
    """Check that ``vertices`` is a simple cycle of ``g`` using exactly ``k`` chords.

    Vectorised with numpy since witnesses for large n run to 10^5 vertices.
    """
    if isinstance(vertices, WitnessCycle):
        vertices = vertices.vertices
    v = np.asarray(vertices, dtype=np.int64)
    length = int(v.size)
    if length < 3:
        return ValidationReport(False, length, reason="short", detail=f"cycle length {length} < 3")
    n = g.n
    out = np.flatnonzero((v < 1) | (v > n))
    if out.size:
        return ValidationReport(False, length, reason="range",
                                detail=f"vertex {int(v[out[0]])} outside 1..{n}")
    counts = np.bincount(v, minlength=n + 1)
    rep = np.flatnonzero(counts > 1)
    if rep.size:
        return ValidationReport(False, length, reason="repeat",
                                detail=f"vertex {int(rep[0])} appears {int(counts[rep[0]])} times")

    nxt = np.roll(v, -1)
    lo = np.minimum(v, nxt)
    hi = np.maximum(v, nxt)
    host = (hi - lo == 1) | ((lo == 1) & (hi == n))
    codes = lo * (n + 1) + hi
    table = g._chord_codes
    if table.size:
        pos = np.searchsorted(table, codes)
        pos[pos == table.size] = 0
        chord = table[pos] == codes
    else:
        chord = np.zeros(length, dtype=bool)
    bad = np.flatnonzero(~(host | chord))
    if bad.size:
        i = int(bad[0])
        return ValidationReport(False, length, reason="non-edge",
                                detail=f"non-edge {{{int(lo[i])},{int(hi[i])}}}")
    idx = np.flatnonzero(chord)
    used = tuple(sorted((int(lo[i]), int(hi[i])) for i in idx))
    if len(used) != k:
        return ValidationReport(False, length, used, reason="count",
                                detail=f"cycle uses {len(used)} chords, expected {k}")
    return ValidationReport(True, length, used)


def witness_from_vertices(g: ChordedCycle, vertices: Sequence[int], provenance: str = "") -> WitnessCycle:
    """Wrap a vertex sequence, classifying its edges against ``g``."""
    vs = tuple(vertices)
    used = set()
    for a, b in zip(vs, vs[1:] + vs[:1]):
        e = norm_edge(a, b)
        if e in g.chord_set:
            used.add(e)
    return WitnessCycle(vs, tuple(sorted(used)), provenance)


def load_graph(text: str) -> ChordedCycle:
    """Parse a graph file: canonical JSON, a construction document, or an edge list.

    The edge-list form starts with a header line ``n=<int>`` followed by one
    ``a b`` pair per line; pairs that are host edges are ignored, the rest
    become chords.  Blank lines and ``#`` comments are skipped.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(stripped)
        if "chords" in data:
            return ChordedCycle.from_dict(data)
        if "plan_chords" in data:
            n = int(data["n"])
            return ChordedCycle.from_pairs(n, list(data["plan_chords"]) + list(data["tail_chords"]))
        raise ValueError("JSON graph needs a 'chords' or 'plan_chords' field")

    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise ValueError("edge list must start with a header line 'n=<int>'")
    n = int(lines[0].replace(" ", "")[2:])
    pairs = []
    for ln in lines[1:]:
        parts = ln.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line: {ln!r}")
        a, b = int(parts[0]), int(parts[1])
        if not is_host_pair(n, a, b):
            pairs.append((a, b))
    return ChordedCycle.from_pairs(n, pairs)
