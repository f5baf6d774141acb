"""Acceptance criteria, one test each; a PASS/FAIL line per criterion prints at the end of the run."""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from chorded_cycles.bounds import counting_lower, log_lower
from chorded_cycles.construction import build_F, build_H, chain_path, construct, make_block
from chorded_cycles.graph import validate_witness
from chorded_cycles.oracle import SearchConfig, brute_force_c, exists_cycle, verify_property

FIXTURES = json.loads((Path(__file__).parent / "fixtures" / "exact_small.json").read_text())["values"]


def sweep_instances():
    return [(n, k) for k in (2, 3, 4) for n in range((k + 2) ** k, (k + 2) ** k + 201)]


def large_instances():
    out = []
    for k in (2, 3):
        lo, hi = (k + 2) ** k, 10**5
        out += [(lo + (hi - lo) * i**3 // 19**3, k) for i in range(20)]
    return out


def boundary_lengths(full):
    p = full.plan
    n, k, stride = p.n, p.k, p.top_stride
    ls = {k, k + stride - 1, p.long_min, n - k, *range(n - k + 1, n + 1)}
    return sorted(l for l in ls if p.first_length <= l <= n)


@pytest.mark.criterion("AC1 formula-exact block chain counts")
def test_ac1_chain_counts():
    t0 = time.monotonic()
    for b in range(3, 13):
        for k in range(2, 7):
            h = build_H(b, k)
            assert h.vertex_count == b**k + 2 * k, (b, k)
            assert h.edge_count == b**k + 2 * k - 1 + b * k, (b, k)
            assert len(h.chords) == b * k, (b, k)
    assert time.monotonic() - t0 < 1


@pytest.mark.criterion("AC2 worked example: digits (1,1,3) give a length-52 path 1 -> 70")
def test_ac2_worked_example():
    t0 = time.monotonic()
    verts, used = chain_path(4, (1, 1, 3))
    assert (verts[0], verts[-1]) == (1, 70)
    assert sorted(used) == [(1, 5), (6, 16), (20, 22)]
    assert len(verts) - 1 == 52, f"path with these chords has length {len(verts) - 1}"
    assert time.monotonic() - t0 < 1


@pytest.mark.criterion("AC3 base chords of the b=4 chain")
def test_ac3_b4_base_chords():
    t0 = time.monotonic()
    assert set(make_block(4, 1, 0).base_chords) == {(1, i) for i in (3, 4, 5, 6)}
    assert set(make_block(4, 6, 1).base_chords) == {(6, i) for i in (8, 12, 16, 20)}
    assert set(make_block(4, 20, 2).base_chords) == {(20, i) for i in (22, 38, 54, 70)}
    assert time.monotonic() - t0 < 1


@pytest.mark.criterion("AC4 full construction sweep, every length")
def test_ac4_full_sweep():
    t0 = time.monotonic()
    over_strict = []
    for n, k in sweep_instances():
        full = construct(n, k)
        g = full.graph
        b = full.plan.b
        assert full.chord_count <= k * b + k * k + 1, (n, k)
        if full.chord_count > k * b + k * k:
            over_strict.append((n, k))
        for l in range(max(k, 3), n + 1):
            w = full.witness(l)
            rep = validate_witness(g, w.vertices, k)
            assert rep.ok and rep.length == l, (n, k, l, str(rep))
    print(f"\nAC4: {len(sweep_instances())} instances, {len(over_strict)} above k*b + k^2")
    assert time.monotonic() - t0 < 300


@pytest.mark.criterion("AC5 large-n sampled sweep with claim checks")
def test_ac5_large_sampled():
    t0 = time.monotonic()
    for n, k in large_instances():
        full = construct(n, k)
        p = full.plan
        b, stride, alpha = p.b, p.top_stride, p.alpha
        assert n + 1 <= (alpha + 2) * stride + 2 * k
        assert (b - 1) ** k < n <= b**k and n > b ** (k - 1) + 2 * k
        pool = range(p.first_length, n + 1)
        rng = random.Random(n * 10 + k)
        lengths = set(rng.sample(pool, min(1000, len(pool)))) | set(boundary_lengths(full))
        g = full.graph
        for l in sorted(lengths):
            rep = validate_witness(g, full.witness(l).vertices, k)
            assert rep.ok and rep.length == l, (n, k, l, str(rep))
    assert time.monotonic() - t0 < 300


@pytest.mark.criterion("AC6 oracle cross-validation, k=2, n=16..24")
def test_ac6_oracle_cross_validation():
    t0 = time.monotonic()
    for n in range(16, 25):
        full = construct(n, 2)
        g = full.graph
        for w in full.witnesses():
            assert exists_cycle(g, w.length, 2), (n, w.length)
        rep = verify_property(g, 2)
        assert rep.satisfied, (n, rep.missing)
    assert time.monotonic() - t0 < 600


@pytest.mark.criterion("AC7 exhaustive small values")
def test_ac7_exhaustive():
    for n in (6, 7, 8):
        t0 = time.monotonic()
        res = brute_force_c(n, 2, SearchConfig(time_limit=600))
        assert res.exact, res
        assert time.monotonic() - t0 < 600
        assert log_lower(n) <= res.value
        assert res.value == FIXTURES["2"][str(n)]
    for n in (6, 7):
        on = brute_force_c(n, 2, SearchConfig(symmetry=True))
        off = brute_force_c(n, 2, SearchConfig(symmetry=False))
        assert on.value == off.value


@pytest.mark.criterion("AC8 bounds sandwich and budget identity")
def test_ac8_bounds_sandwich():
    t0 = time.monotonic()
    for n, k in sweep_instances() + large_instances():
        plan = build_F(n, k)
        c = construct(n, k).chord_count
        b = plan.b
        assert log_lower(n) <= c, (n, k)
        assert counting_lower(n, k) <= c, (n, k)
        assert Fraction(c, b) <= k + Fraction(k * k, b) + 1, (n, k)
    assert time.monotonic() - t0 < 60


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "chorded_cycles", *args],
                          capture_output=True, check=True).stdout


@pytest.mark.criterion("AC9 byte-identical reruns")
def test_ac9_determinism(tmp_path):
    t0 = time.monotonic()
    commands = [
        ("construct", "-n", "1300", "-k", "4", "--format", "json"),
        ("construct", "-n", "256", "-k", "2", "--format", "dot"),
        ("construct", "-n", "300", "-k", "3", "--format", "human", "--sample", "25", "--seed", "3"),
        ("decode", "-n", "16", "-k", "2", "-l", "10"),
        ("decode", "-n", "5000", "-k", "3", "-l", "4321", "--format", "human"),
        ("bounds", "-k", "2", "-n", "16,256,65536"),
        ("bounds", "-k", "3", "-n", "125,1000", "--format", "json"),
    ]
    for cmd in commands:
        a = tmp_path / "a.out"
        b = tmp_path / "b.out"
        _cli(*cmd, "-o", str(a))
        _cli(*cmd, "-o", str(b))
        assert a.read_bytes() == b.read_bytes(), cmd
        assert a.stat().st_size > 0
    assert time.monotonic() - t0 < 60
