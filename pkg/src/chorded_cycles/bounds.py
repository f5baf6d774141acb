"""Lower and upper bounds on c(n, k), and tables comparing them with constructions."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional

from .construction import ceil_root, construct, floor_root, min_vertices, PreconditionError

RATIO_DIGITS = 6

COLUMNS = ("n", "k", "log_lower", "counting_lower", "theorem2_upper", "constructed_count",
           "exact", "ratio", "flags")


def log_lower(n: int) -> int:
    """ceil(log2(n - 1)), by comparison with powers of two."""
    if n < 2:
        raise ValueError(f"log_lower needs n >= 2, got {n}")
    e = 0
    while 1 << e < n - 1:
        e += 1
    return e


def cycles_per_chord_set(k: int) -> int:
    """Over-count of cycles through one fixed k-set of chords.

    (k-1)! cyclic orders, 2^k chord orientations and 2^k choices of host arc
    between consecutive chords.
    """
    return factorial(k - 1) * 4**k


def counting_lower(n: int, k: int) -> int:
    """Smallest c whose k-subsets could carry one cycle per required length.

    A surrogate for the known Omega(n^(1/k)) bound with a deliberately loose
    constant; labeled "surrogate" wherever it is reported.
    """
    if n < 6 or k < 2:
        raise ValueError(f"counting_lower needs n >= 6 and k >= 2, got n={n}, k={k}")
    need = n - max(k, 3) + 1
    per = cycles_per_chord_set(k)
    c = k
    while comb(c, k) * per < need:
        c += 1
    return c


def theorem2_upper(n: int, k: int) -> int:
    if k < 2 or n < min_vertices(k):
        raise PreconditionError(f"requires n ≥ (k+2)^k = {min_vertices(k)}, got n={n}")
    return k * ceil_root(n, k) + k * k


def root_ratio(count: int, n: int, k: int, digits: int = RATIO_DIGITS) -> str:
    """count / n^(1/k) as a fixed-point decimal string, without floats."""
    scale = 10**digits
    guard = 10 ** (digits + 2)
    root = floor_root(n * guard**k, k)  # floor(n^(1/k) * guard)
    whole, frac = divmod(count * guard * scale // root, scale)
    return f"{whole}.{frac:0{digits}d}"


@dataclass
class BoundsRow:
    n: int
    k: int
    log_lower: int
    counting_lower: int
    theorem2_upper: Optional[int]
    constructed_count: Optional[int]
    exact: Optional[int] = None
    ratio: Optional[str] = None
    flags: list[str] = field(default_factory=list)

    def as_list(self) -> list[str]:
        d = asdict(self)
        d["flags"] = ";".join(self.flags)
        return ["" if d[c] is None else str(d[c]) for c in COLUMNS]


def bounds_row(n: int, k: int, exact: Optional[int] = None) -> BoundsRow:
    lo_log = log_lower(n)
    lo_count = counting_lower(n, k)
    upper = constructed = ratio = None
    if n >= min_vertices(k):
        upper = theorem2_upper(n, k)
        constructed = construct(n, k).chord_count
        ratio = root_ratio(constructed, n, k)
    row = BoundsRow(n, k, lo_log, lo_count, upper, constructed, exact, ratio)

    if constructed is not None:
        b = ceil_root(n, k)
        if lo_log > constructed:
            row.flags.append("log_lower>constructed")
        if lo_count > constructed:
            row.flags.append("counting_lower>constructed")
        if constructed > upper + 1:
            row.flags.append("constructed>theorem2_upper+1")
        if Fraction(constructed, b) > k + Fraction(k * k, b) + 1:
            row.flags.append("budget_identity")
    if exact is not None:
        if exact < max(lo_log, lo_count):
            row.flags.append("exact<lower")
        if constructed is not None and exact > constructed:
            row.flags.append("exact>constructed")
    return row


def bounds_table(instances: Iterable[tuple]) -> list[BoundsRow]:
    """Rows for (n, k) or (n, k, exact) instances, in the order given."""
    rows = []
    for inst in instances:
        n, k = inst[0], inst[1]
        exact = inst[2] if len(inst) > 2 else None
        rows.append(bounds_row(n, k, exact))
    return rows


def table_csv(rows: list[BoundsRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(r.as_list())
    return buf.getvalue()


def table_json(rows: list[BoundsRow]) -> str:
    out = []
    for r in rows:
        d = asdict(r)
        out.append({c: d[c] for c in COLUMNS})
    return json.dumps({"counting_lower": "surrogate", "rows": out}, indent=1)
