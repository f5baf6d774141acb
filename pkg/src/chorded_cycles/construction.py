"""Explicit chord sets on C_n realizing every cycle length with exactly k chords.

The chord set is assembled from blocks.  A block with base b, base point i
and level e spans the vertices i..i+2+b^(e+1)-b^e and fans b chords out of
i at stride b^e.  Chaining the blocks based at q(e) = b^e + 2e for
e = 0..k-1 and cutting the chain at n gives the main chord set; the cycle
lengths it misses near n are filled in by small tail gadgets.

All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import ChordedCycle, Edge, WitnessCycle, norm_edge

log = logging.getLogger(__name__)


class PreconditionError(ValueError):
    pass


class LengthRangeError(ValueError):
    pass


class DegenerateLengthError(LengthRangeError):
    """Length 2 requested for k = 2; a simple graph has no 2-cycles."""


class InvariantViolation(RuntimeError):
    pass


def ceil_root(n: int, k: int) -> int:
    """Smallest b with b**k >= n, by integer binary search."""
    if n < 1 or k < 1:
        raise ValueError(f"ceil_root needs n >= 1 and k >= 1, got n={n}, k={k}")
    hi = 1
    while hi**k < n:
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo


def floor_root(n: int, k: int) -> int:
    """Largest r with r**k <= n."""
    if n < 0 or k < 1:
        raise ValueError(f"floor_root needs n >= 0 and k >= 1, got n={n}, k={k}")
    r = ceil_root(max(n, 1), k)
    return r if r**k <= n else r - 1


def q_value(b: int, x: int) -> int:
    if b < 3 or x < 0:
        raise ValueError(f"q_value needs b >= 3 and x >= 0, got b={b}, x={x}")
    return b**x + 2 * x


def min_vertices(k: int) -> int:
    return (k + 2) ** k


# -- blocks -----------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    b: int
    i: int
    e: int

    @property
    def stride(self) -> int:
        return self.b**self.e

    @property
    def last(self) -> int:
        return self.i + 2 + self.b ** (self.e + 1) - self.b**self.e

    @property
    def vertices(self) -> range:
        return range(self.i, self.last + 1)

    @property
    def outer_edges(self) -> range:
        """Left endpoints j of the outer edges {j, j+1}."""
        return range(self.i, self.last)

    @property
    def base_chords(self) -> tuple[Edge, ...]:
        return tuple((self.i, self.i + 2 + j * self.stride) for j in range(self.b))


def make_block(b: int, i: int, e: int) -> Block:
    if b < 3 or i < 1 or e < 0:
        raise ValueError(f"block needs b >= 3, i >= 1, e >= 0; got b={b}, i={i}, e={e}")
    return Block(b, i, e)


def block_path(b: int, e: int, c: int) -> list[int]:
    """Vertices of the path q(e) -> q(e+1) taking one base chord and c*b^e outer edges."""
    if not 0 <= c < b:
        raise ValueError(f"digit {c} outside 0..{b - 1}")
    start, end = q_value(b, e), q_value(b, e + 1)
    x = end - c * b**e
    return [start, *range(x, end + 1)]


def _interval_union_size(ranges: Sequence[range]) -> int:
    total, reach = 0, None
    for r in sorted((r for r in ranges if len(r)), key=lambda r: r.start):
        lo, hi = r.start, r.stop
        if reach is not None and lo < reach:
            lo = reach
        if hi > lo:
            total += hi - lo
            reach = hi
    return total


@dataclass(frozen=True)
class BlockChain:
    """Union of the blocks based at q(0), ..., q(k-1)."""

    b: int
    k: int
    blocks: tuple[Block, ...]

    @property
    def vertex_count(self) -> int:
        return _interval_union_size([blk.vertices for blk in self.blocks])

    @property
    def outer_edge_count(self) -> int:
        return _interval_union_size([blk.outer_edges for blk in self.blocks])

    @property
    def chords(self) -> frozenset[Edge]:
        return frozenset(c for blk in self.blocks for c in blk.base_chords)

    @property
    def edge_count(self) -> int:
        # outer edges are exactly the pairs {j, j+1}; no base chord is one
        extra = sum(1 for lo, hi in self.chords if hi - lo != 1)
        return self.outer_edge_count + extra


def build_H(b: int, k: int) -> BlockChain:
    if b < 3 or k < 2:
        raise ValueError(f"block chain needs b >= 3 and k >= 2, got b={b}, k={k}")
    return BlockChain(b, k, tuple(make_block(b, q_value(b, e), e) for e in range(k)))


# -- digits -----------------------------------------------------------------


@dataclass(frozen=True)
class DigitVector:
    """Little-endian base-b digits c_0, c_1, ..."""

    digits: tuple[int, ...]
    base: int

    def __post_init__(self):
        for c in self.digits:
            if not 0 <= c < self.base:
                raise ValueError(f"digit {c} outside 0..{self.base - 1}")

    @property
    def value(self) -> int:
        return sum(c * self.base**e for e, c in enumerate(self.digits))

    @classmethod
    def from_value(cls, value: int, base: int, width: int) -> "DigitVector":
        if not 0 <= value < base**width:
            raise ValueError(f"{value} needs more than {width} base-{base} digits")
        digits = []
        for _ in range(width):
            value, c = divmod(value, base)
            digits.append(c)
        return cls(tuple(digits), base)


# -- the main chord set -----------------------------------------------------


@dataclass(frozen=True)
class ConstructionPlan:
    n: int
    k: int
    b: int
    q: tuple[int, ...]
    m: int
    alpha: int
    block_chords: tuple[tuple[Edge, ...], ...]
    chords: tuple[Edge, ...]

    @property
    def top_stride(self) -> int:
        return self.b ** (self.k - 1)

    @property
    def graph(self) -> ChordedCycle:
        return ChordedCycle(self.n, self.chords)

    @property
    def short_range(self) -> range:
        """Lengths closed by the chord {m, 1}: k .. k + b^(k-1) - 1."""
        return range(self.k, self.k + self.top_stride)

    @property
    def long_min(self) -> int:
        """Smallest length routed through the cut top block and the host edge {n, 1}."""
        return self.n - self.k + 1 - (self.alpha + 1) * self.top_stride

    @property
    def first_length(self) -> int:
        return max(self.k, 3)

    def chord_label(self, chord: Edge) -> str:
        for e, level in enumerate(self.block_chords):
            if chord in level:
                return f"G{e}"
        if chord == (1, self.m):
            return "m"
        return "tail"


def compute_alpha(n: int, k: int, b: int, m: int) -> int:
    """Index of the last base chord of the top block that still fits in 1..n."""
    stride = b ** (k - 1)
    alpha = (n - m - 2) // stride
    if not 0 <= alpha <= b - 2:
        raise InvariantViolation(f"alpha={alpha} outside 0..{b - 2} for n={n}, k={k}, b={b}")
    if not m + 2 + alpha * stride <= n < m + 2 + (alpha + 1) * stride:
        raise InvariantViolation(f"alpha={alpha} does not bracket n={n}")
    if not n + 1 <= (alpha + 2) * stride + 2 * k:
        raise InvariantViolation(f"coverage inequality fails for n={n}, k={k}")
    return alpha


def check_base(n: int, k: int, b: int) -> None:
    if not (b - 1) ** k < n <= b**k:
        raise InvariantViolation(f"b={b} is not the ceiling k-th root of n={n}")
    if not n > b ** (k - 1) + 2 * k:
        raise InvariantViolation(f"n={n} <= b^(k-1) + 2k for b={b}, k={k}")


def build_F(n: int, k: int) -> ConstructionPlan:
    if k < 2:
        raise PreconditionError(f"k must be >= 2, got {k}")
    if n < min_vertices(k):
        raise PreconditionError(f"requires n ≥ (k+2)^k = {min_vertices(k)}, got n={n}")
    b = ceil_root(n, k)
    check_base(n, k, b)
    q = tuple(q_value(b, x) for x in range(k + 1))
    m = q[k - 1]
    alpha = compute_alpha(n, k, b, m)

    levels = [make_block(b, q[e], e).base_chords for e in range(k - 1)]
    top = make_block(b, m, k - 1)
    kept = tuple(c for c in top.base_chords if c[1] <= n)
    if len(kept) != alpha + 1:
        raise InvariantViolation(f"top block keeps {len(kept)} chords, expected {alpha + 1}")
    levels.append(kept)

    chords = {norm_edge(*c) for level in levels for c in level}
    chords.add((1, m))  # already present when k == 2
    plan = ConstructionPlan(n, k, b, q, m, alpha, tuple(levels), tuple(sorted(chords)))

    if plan.short_range.stop < plan.long_min:
        raise InvariantViolation(f"length gap between {plan.short_range.stop - 1} and {plan.long_min}")
    if len(plan.chords) > k * b + 1:
        raise InvariantViolation(f"{len(plan.chords)} chords exceed k*b + 1 = {k * b + 1}")
    return plan


def chain_path(b: int, digits: Sequence[int]) -> tuple[list[int], list[Edge]]:
    """Path 1 -> q(len(digits)) through the block chain, one block path per digit.

    Returns the vertices and the chords used, one per block.
    """
    verts, used = [1], []
    for e, c in enumerate(digits):
        seg = block_path(b, e, c)
        used.append((seg[0], seg[1]))
        verts.extend(seg[1:])
    return verts, used


def _path_P(plan: ConstructionPlan, digits: DigitVector) -> tuple[list[int], list[Edge]]:
    if digits.base != plan.b or len(digits.digits) != plan.k - 1:
        raise ValueError(f"need {plan.k - 1} base-{plan.b} digits, got {digits}")
    return chain_path(plan.b, digits.digits)


def path_P(plan: ConstructionPlan, digits: DigitVector) -> list[int]:
    """Path 1 -> m of length (k-1) + value(digits) with k-1 chords."""
    return _path_P(plan, digits)[0]


def path_Q(plan: ConstructionPlan, j: int) -> list[int]:
    """Path m -> 1 through the j-th surviving top chord, the outer edges up to n, and {n, 1}."""
    if not 0 <= j <= plan.alpha:
        raise ValueError(f"j={j} outside 0..{plan.alpha}: that chord is cut off at n={plan.n}")
    return [plan.m, *range(plan.m + 2 + j * plan.top_stride, plan.n + 1), 1]


def _check_degenerate(k: int, length: int) -> None:
    if length < 3 and length >= k:
        raise DegenerateLengthError(f"l={length} excluded by simple-graph convention")


def decode_length(plan: ConstructionPlan, length: int) -> WitnessCycle:
    """Cycle of the given length using exactly k chords of ``plan``; lengths up to n-k."""
    n, k, stride = plan.n, plan.k, plan.top_stride
    _check_degenerate(k, length)
    if not plan.first_length <= length <= n - k:
        raise LengthRangeError(
            f"l={length} outside {plan.first_length}..{n - k}; use tail_witness for {n - k + 1}..{n}"
        )
    if length in plan.short_range:
        digits = DigitVector.from_value(length - k, plan.b, k - 1)
        verts, used = _path_P(plan, digits)
        used.append((1, plan.m))
        prov = f"L1 digits={digits.digits}"
    else:
        deficit = n + 1 - k - length
        j = -(-deficit // stride) - 1
        if j > plan.alpha:
            raise InvariantViolation(f"l={length} needs top chord j={j} > alpha={plan.alpha}")
        digits = DigitVector.from_value((j + 1) * stride - deficit, plan.b, k - 1)
        verts, used = _path_P(plan, digits)
        far = plan.m + 2 + j * stride
        verts.extend(range(far, n + 1))
        used.append((plan.m, far))
        prov = f"L2 j={j} digits={digits.digits}"
    return WitnessCycle(tuple(verts), tuple(sorted(norm_edge(*c) for c in used)), prov)


# -- tail gadgets -----------------------------------------------------------


@dataclass(frozen=True)
class TailGadget:
    """A local detour off the host cycle.

    ``segment`` replaces the host path segment[0], segment[0]+1, ..., segment[-1].
    """

    kind: str
    anchor: int
    shorten: int
    chords: tuple[Edge, ...]
    segment: tuple[int, ...]

    @property
    def last(self) -> int:
        return self.segment[-1]


def skip(a: int, t: int) -> TailGadget:
    if t < 2:
        raise ValueError(f"skip needs t >= 2, got {t}")
    return TailGadget("skip", a, t - 1, ((a, a + t),), (a, a + t))


def cross(x: int, s: int) -> TailGadget:
    if s < 0:
        raise ValueError(f"cross needs s >= 0, got {s}")
    return TailGadget("cross", x, s, ((x, x + 2), (x + 1, x + 3 + s)), (x, x + 2, x + 1, x + 3 + s))


def triple(x: int) -> TailGadget:
    return TailGadget("triple", x, 0, ((x, x + 3), (x + 1, x + 3), (x + 2, x + 4)),
                      (x, x + 3, x + 1, x + 2, x + 4))


def gadget_recipe(k: int, d: int) -> list[tuple[str, int]]:
    """(kind, parameter) list burning exactly k chords and shortening the host cycle by d."""
    if not 0 <= d < k:
        raise ValueError(f"shortening d={d} outside 0..{k - 1}")
    if d == 0:
        head = [] if k % 2 == 0 else [("triple", 0)]
    else:
        head = [("cross", d)] if k % 2 == 0 else [("skip", d + 1)]
    used = sum({"triple": 3, "cross": 2, "skip": 1}[kind] for kind, _ in head)
    return head + [("cross", 0)] * ((k - used) // 2)


_MAKERS = {"skip": skip, "cross": cross, "triple": lambda x, _: triple(x)}


def place_gadgets(n: int, k: int, d: int) -> tuple[TailGadget, ...]:
    """Lay the recipe for shortening d onto disjoint host intervals from vertex 1 upward."""
    placed, anchor = [], 1
    for kind, param in gadget_recipe(k, d):
        g = _MAKERS[kind](anchor, param)
        if g.last > n:
            raise InvariantViolation(f"tail gadgets for d={d} do not fit in C_{n}")
        placed.append(g)
        anchor = g.last + 1
    return tuple(placed)


@dataclass(frozen=True)
class FullConstruction:
    plan: ConstructionPlan
    tail: dict[int, tuple[TailGadget, ...]]  # keyed by cycle length
    tail_chords: tuple[Edge, ...]  # tail chords not already in the plan

    @property
    def n(self) -> int:
        return self.plan.n

    @property
    def k(self) -> int:
        return self.plan.k

    @property
    def chords(self) -> tuple[Edge, ...]:
        return tuple(sorted(set(self.plan.chords) | set(self.tail_chords)))

    @property
    def chord_count(self) -> int:
        return len(self.plan.chords) + len(self.tail_chords)

    @property
    def graph(self) -> ChordedCycle:
        return ChordedCycle(self.n, self.chords)

    @property
    def required_lengths(self) -> range:
        return range(self.plan.first_length, self.n + 1)

    def witness(self, length: int) -> WitnessCycle:
        if length > self.n - self.k:
            return tail_witness(self, length)
        return decode_length(self.plan, length)

    def witnesses(self, lengths=None) -> Iterator[WitnessCycle]:
        for length in self.required_lengths if lengths is None else lengths:
            yield self.witness(length)

    def to_dict(self) -> dict:
        p = self.plan
        return {
            "n": p.n,
            "k": p.k,
            "b": p.b,
            "alpha": p.alpha,
            "m": p.m,
            "plan_chords": [list(c) for c in p.chords],
            "tail_chords": [list(c) for c in self.tail_chords],
            "chord_count": self.chord_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self) -> str:
        n = self.n
        lines = [
            f"graph F_{self.k}_{n} {{",
            "  layout=circo;",
            "  node [shape=circle, fontsize=10];",
            "  edge [color=gray60];",
        ]
        for i in range(1, n):
            lines.append(f"  {i} -- {i + 1};")
        lines.append(f"  {n} -- 1;")
        lines.append("  edge [color=firebrick, constraint=false];")
        tail = set(self.tail_chords)
        for a, b in self.chords:
            label = "tail" if (a, b) in tail else self.plan.chord_label((a, b))
            lines.append(f'  {a} -- {b} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def plan_tail(plan: ConstructionPlan) -> FullConstruction:
    n, k = plan.n, plan.k
    tail = {n - d: place_gadgets(n, k, d) for d in range(k)}
    present = set(plan.chords)
    added = set()
    for gadgets in tail.values():
        for g in gadgets:
            added.update(c for c in g.chords if c not in present)
    if len(added) > k * k:
        raise InvariantViolation(f"tail adds {len(added)} chords, more than k^2 = {k * k}")
    return FullConstruction(plan, tail, tuple(sorted(added)))


def tail_witness(full: FullConstruction, length: int) -> WitnessCycle:
    """Host cycle with the gadgets for this length spliced in."""
    n, k = full.n, full.k
    if not n - k + 1 <= length <= n:
        raise LengthRangeError(f"tail lengths are {n - k + 1}..{n}, got l={length}")
    verts, pos, used = [], 1, []
    for g in full.tail[length]:
        verts.extend(range(pos, g.anchor))
        verts.extend(g.segment[:-1])
        used.extend(g.chords)
        pos = g.last
    verts.extend(range(pos, n + 1))
    prov = "tail " + " ".join(f"{g.kind}({g.anchor},{g.shorten})" for g in full.tail[length])
    return WitnessCycle(tuple(verts), tuple(sorted(used)), prov)


def construct(n: int, k: int) -> FullConstruction:
    plan = build_F(n, k)
    full = plan_tail(plan)
    budget = k * plan.b + k * k
    if full.chord_count > budget + 1:
        raise InvariantViolation(f"{full.chord_count} chords exceed k*ceil(n^(1/k)) + k^2 + 1 = {budget + 1}")
    if full.chord_count > budget:
        log.warning("n=%d k=%d: %d chords exceed k*ceil(n^(1/k)) + k^2 = %d",
                    n, k, full.chord_count, budget)
    return full
