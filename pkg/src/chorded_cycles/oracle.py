"""Independent checks: exact cycle search, property reports, exhaustive c(n, k).

Nothing here consults the constructor.  Adjacency and chord lookup are
rebuilt from the bare chord list of a ChordedCycle.
"""

from __future__ import annotations

import json
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .graph import ChordedCycle, Edge, WitnessCycle, validate_witness

WITNESS_PASS = "WITNESS-PASS"
ORACLE_FOUND = "ORACLE-FOUND"
MISSING = "MISSING"
INCONCLUSIVE = "INCONCLUSIVE"


class SearchInconclusive(Exception):
    """A time limit expired before the search could decide."""


def _pair(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


class _Ring:
    """Adjacency of C_n plus chords, flagged host/chord."""

    __slots__ = ("n", "adj", "chords")

    def __init__(self, n: int, chords: Iterable[Sequence[int]]):
        self.n = n
        self.chords = {_pair(a, b) for a, b in chords}
        self.adj: list[list[tuple[int, bool]]] = [[] for _ in range(n + 1)]
        for v in range(1, n + 1):
            left = v - 1 if v > 1 else n
            right = v + 1 if v < n else 1
            self.adj[v].extend([(left, False), (right, False)])
        for a, b in sorted(self.chords):
            self.adj[a].append((b, True))
            self.adj[b].append((a, True))
        for row in self.adj:
            row.sort()


def _distances(ring: _Ring, s: int) -> list[int]:
    """BFS distances from s through vertices >= s; unreachable is n + 1."""
    n = ring.n
    dist = [n + 1] * (n + 1)
    dist[s] = 0
    todo = deque([s])
    while todo:
        v = todo.popleft()
        for w, _ in ring.adj[v]:
            if w > s and dist[w] > n:
                dist[w] = dist[v] + 1
                todo.append(w)
    return dist


def _host_arc(ring: _Ring, s: int, w: int, r: int, on: bytearray) -> Optional[list[int]]:
    """Vertices strictly between w and s on a host-only route of exactly r edges."""
    if r == w - s:
        inner = range(w - 1, s, -1)
        if not any(on[x] for x in inner):
            return list(inner)
    if s == 1 and r == ring.n - w + 1:
        inner = range(w + 1, ring.n + 1)
        if not any(on[x] for x in inner):
            return list(inner)
    return None


def _find(ring: _Ring, length: int, k: int, deadline: Optional[float]) -> Optional[list[int]]:
    n = ring.n
    chords = ring.chords
    ticks = 0
    # canonical start: s is the smallest vertex of the cycle
    for s in range(1, n - length + 2):
        dist = _distances(ring, s)
        on = bytearray(n + 1)
        on[s] = 1
        path = [s]
        used = [0]
        stack = [iter(ring.adj[s])]
        while stack:
            ticks += 1
            if deadline is not None and ticks & 0xFFF == 1 and time.monotonic() > deadline:
                raise SearchInconclusive(f"time limit hit searching length {length}")
            pushed = False
            u = used[-1]
            r = length - len(path)  # edges still needed after stepping to w
            for w, is_chord in stack[-1]:
                if w <= s or on[w]:
                    continue
                u2 = u + is_chord
                if u2 > k or dist[w] > r or r < k - u2:
                    continue
                if u2 == k:
                    arc = _host_arc(ring, s, w, r, on)
                    if arc is not None:
                        return path + [w] + arc
                    continue
                if r == 1:
                    if u2 == k - 1 and _pair(w, s) in chords:
                        return path + [w]
                    continue
                on[w] = 1
                path.append(w)
                used.append(u2)
                stack.append(iter(ring.adj[w]))
                pushed = True
                break
            if not pushed:
                stack.pop()
                on[path.pop()] = 0
                used.pop()
    return None


def find_cycle(g: ChordedCycle, length: int, k: int, time_limit: Optional[float] = None) -> Optional[list[int]]:
    """A simple cycle of exactly ``length`` edges using exactly ``k`` chords, or None.

    Exhaustive depth-first backtracking; raises SearchInconclusive when
    ``time_limit`` seconds pass first.
    """
    if not 3 <= length <= g.n:
        raise ValueError(f"length {length} outside 3..{g.n}")
    deadline = None if time_limit is None else time.monotonic() + time_limit
    return _find(_Ring(g.n, g.chords), length, k, deadline)


def exists_cycle(g: ChordedCycle, length: int, k: int, time_limit: Optional[float] = None) -> bool:
    return find_cycle(g, length, k, time_limit) is not None


# -- property reports -------------------------------------------------------


def required_lengths(n: int, k: int) -> range:
    return range(max(k, 3), n + 1)


@dataclass
class PropertyReport:
    n: int
    k: int
    lengths: tuple[int, ...]
    statuses: dict[int, str]
    chord_count: int
    excluded: tuple[int, ...] = ()
    notes: dict[int, str] = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def satisfied(self) -> bool:
        return all(s in (WITNESS_PASS, ORACLE_FOUND) for s in self.statuses.values())

    @property
    def inconclusive(self) -> bool:
        return not self.satisfied and MISSING not in self.statuses.values()

    @property
    def missing(self) -> list[int]:
        return [l for l, s in self.statuses.items() if s == MISSING]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "lengths": [min(self.lengths), max(self.lengths)] if self.lengths else [],
            "excluded": [
                {"length": l, "reason": "excluded by simple-graph convention"} for l in self.excluded
            ],
            "chord_count": self.chord_count,
            "satisfied": self.satisfied,
            "statuses": {str(l): s for l, s in self.statuses.items()},
            "notes": {str(l): t for l, t in self.notes.items()},
            "seconds": round(self.seconds, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


WitnessSource = Callable[[int], Optional[Sequence[int]]]


def verify_property(
    g: ChordedCycle,
    k: int,
    lengths: Optional[Iterable[int]] = None,
    witnesses: Optional[Mapping[int, Sequence[int]] | WitnessSource] = None,
    time_limit: Optional[float] = None,
) -> PropertyReport:
    """Status for every requested length: supplied witness first, then the exact search."""
    t0 = time.monotonic()
    requested = list(required_lengths(g.n, k) if lengths is None else lengths)
    excluded = tuple(l for l in requested if l < 3)
    if k == 2 and lengths is None:
        excluded = (2,)
    todo = [l for l in requested if l >= 3]
    lookup = witnesses.get if isinstance(witnesses, Mapping) else witnesses
    ring = _Ring(g.n, g.chords)
    deadline = None if time_limit is None else t0 + time_limit

    statuses: dict[int, str] = {}
    notes: dict[int, str] = {}
    for l in todo:
        if l > g.n:
            statuses[l] = MISSING
            notes[l] = f"length exceeds n={g.n}"
            continue
        w = lookup(l) if lookup is not None else None
        if w is not None:
            verts = w.vertices if isinstance(w, WitnessCycle) else w
            rep = validate_witness(g, verts, k)
            if rep.ok and rep.length == l:
                statuses[l] = WITNESS_PASS
                continue
            notes[l] = f"supplied witness rejected: {rep if not rep.ok else f'length {rep.length}'}"
        try:
            found = _find(ring, l, k, deadline)
        except SearchInconclusive:
            statuses[l] = INCONCLUSIVE
            continue
        statuses[l] = ORACLE_FOUND if found is not None else MISSING
    return PropertyReport(g.n, k, tuple(todo), statuses, len(g.chords), excluded, notes,
                          time.monotonic() - t0)


# -- exhaustive search for c(n, k) ------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    max_chords: Optional[int] = None
    time_limit: Optional[float] = None
    symmetry: bool = True
    workers: int = 1


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    value: int  # exact c(n, k) when status is "exact", else a proven lower bound
    status: str
    chords: Optional[tuple[Edge, ...]]
    seconds: float

    @property
    def exact(self) -> bool:
        return self.status == "exact"

    def csv_row(self) -> list[str]:
        return [str(self.n), str(self.k), str(self.value), self.status, f"{self.seconds:.3f}"]


def candidate_chords(n: int) -> list[Edge]:
    return [(a, b) for a in range(1, n + 1) for b in range(a + 2, n + 1) if not (a == 1 and b == n)]


def dihedral_maps(n: int) -> list[list[int]]:
    """All 2n relabelings of C_n as lookup lists indexed by vertex."""
    maps = []
    for shift in range(n):
        for sign in (1, -1):
            maps.append([0] + [(sign * (v - 1) + shift) % n + 1 for v in range(1, n + 1)])
    return maps


def canonical_form(chords: Iterable[Edge], n: int) -> tuple[Edge, ...]:
    chords = list(chords)
    return min(tuple(sorted(_pair(p[a], p[b]) for a, b in chords)) for p in dihedral_maps(n))


def is_canonical(chords: Sequence[Edge], maps: list[list[int]]) -> bool:
    me = tuple(chords)
    for p in maps:
        if tuple(sorted(_pair(p[a], p[b]) for a, b in me)) < me:
            return False
    return True


class _Checker:
    """Property test for chord subsets, trying the most recently failing length first."""

    def __init__(self, n: int, k: int, deadline: Optional[float]):
        self.n, self.k, self.deadline = n, k, deadline
        self.order = list(required_lengths(n, k))[::-1]

    def __call__(self, chords: Iterable[Edge]) -> bool:
        ring = _Ring(self.n, chords)
        for i, l in enumerate(self.order):
            if _find(ring, l, self.k, self.deadline) is None:
                if i:
                    self.order.insert(0, self.order.pop(i))
                return False
        return True


def _search_partition(n: int, k: int, c: int, first: int, symmetry: bool,
                      deadline: Optional[float]) -> Optional[tuple[Edge, ...]]:
    """Lexicographically first satisfying c-subset whose smallest chord is candidate ``first``."""
    cands = candidate_chords(n)
    maps = dihedral_maps(n) if symmetry else None
    ok = _Checker(n, k, deadline)
    chosen = [first]

    def rec(start: int) -> Optional[tuple[Edge, ...]]:
        if len(chosen) == c:
            subset = tuple(cands[i] for i in chosen)
            if maps is not None and not is_canonical(subset, maps):
                return None
            return subset if ok(subset) else None
        # adding chords never destroys a cycle, so test the most generous completion
        if not ok([cands[i] for i in chosen] + cands[start:]):
            return None
        for i in range(start, len(cands) - (c - len(chosen)) + 1):
            chosen.append(i)
            found = rec(i + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    return rec(first + 1)


def _partition_task(args):
    n, k, c, first, symmetry, deadline = args
    try:
        return first, _search_partition(n, k, c, first, symmetry, deadline), False
    except SearchInconclusive:
        return first, None, True


def satisfies_property(n: int, k: int, chords: Iterable[Edge]) -> bool:
    return _Checker(n, k, None)(chords)


def brute_force_c(n: int, k: int, cfg: SearchConfig = SearchConfig(),
                  hint: Optional[Iterable[Edge]] = None) -> SearchResult:
    """Exact minimum chord count, ascending in subset size.

    A ``hint`` chord set that passes the property caps the search: if no
    smaller subset works, the hint's size is exact.
    """
    if n < 6 or k < 2:
        raise ValueError(f"exhaustive search needs n >= 6 and k >= 2, got n={n}, k={k}")
    t0 = time.monotonic()
    deadline = None if cfg.time_limit is None else t0 + cfg.time_limit
    cands = candidate_chords(n)
    limit = len(cands) if cfg.max_chords is None else min(cfg.max_chords, len(cands))
    top = limit

    hint_set = None
    if hint is not None:
        hint_set = tuple(sorted({_pair(a, b) for a, b in hint}))
        if satisfies_property(n, k, hint_set):
            top = min(limit, len(hint_set) - 1)
        else:
            hint_set = None

    def done(value, status, chords):
        return SearchResult(n, k, value, status, chords, time.monotonic() - t0)

    pool = ProcessPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        # fewer than k chords cannot close a cycle through exactly k of them
        for c in range(k, top + 1):
            parts = [(n, k, c, first, cfg.symmetry, deadline) for first in range(len(cands) - c + 1)]
            results = pool.map(_partition_task, parts) if pool else map(_partition_task, parts)
            best, timed_out = None, False
            for _, found, hit in results:
                timed_out |= hit
                if found is not None and (best is None or found < best):
                    best = found
                    if pool is None:
                        break
                if hit and pool is None:
                    break
            if timed_out and best is None:
                return done(c, "inconclusive", None)
            if best is not None:
                # every smaller size was exhausted, so c is exact even if a partition timed out
                return done(c, "exact", best)
        if hint_set is not None and top == len(hint_set) - 1:
            return done(len(hint_set), "exact", hint_set)
        if top < len(cands):
            return done(top + 1, "inconclusive", None)
        raise RuntimeError(f"no chord set on C_{n} satisfies the property for k={k}")
    finally:
        if pool is not None:
            pool.shutdown()
