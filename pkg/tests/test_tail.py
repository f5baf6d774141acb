import pytest
from hypothesis import given, strategies as st

from chorded_cycles.construction import (
    LengthRangeError,
    construct,
    cross,
    gadget_recipe,
    place_gadgets,
    skip,
    tail_witness,
    triple,
)
from chorded_cycles.graph import ChordedCycle, validate_witness


def splice(n, gadgets):
    g = ChordedCycle(n, tuple(c for gd in gadgets for c in gd.chords))
    verts, pos = [], 1
    for gd in gadgets:
        verts += list(range(pos, gd.anchor)) + list(gd.segment[:-1])
        pos = gd.last
    return g, verts + list(range(pos, n + 1))


@pytest.mark.parametrize("make,chords,shorten", [
    (lambda: skip(3, 4), 1, 3),
    (lambda: cross(2, 0), 2, 0),
    (lambda: cross(2, 3), 2, 3),
    (lambda: triple(2), 3, 0),
])
def test_single_gadget_on_host_cycle(make, chords, shorten):
    gd = make()
    g, verts = splice(20, [gd])
    rep = validate_witness(g, verts, chords)
    assert rep.ok, rep
    assert rep.length == 20 - shorten == 20 - gd.shorten


def test_gadget_validation():
    with pytest.raises(ValueError):
        skip(1, 1)
    with pytest.raises(ValueError):
        cross(1, -1)


@pytest.mark.parametrize("k", range(2, 9))
def test_recipe_burns_k_chords_for_each_shortening(k):
    burn = {"skip": 1, "cross": 2, "triple": 3}
    for d in range(k):
        recipe = gadget_recipe(k, d)
        assert sum(burn[kind] for kind, _ in recipe) == k
        shortening = sum(p - 1 if kind == "skip" else (p if kind == "cross" else 0) for kind, p in recipe)
        assert shortening == d


def test_recipe_shapes():
    assert gadget_recipe(2, 1) == [("cross", 1)]
    assert gadget_recipe(3, 0) == [("triple", 0)]
    assert gadget_recipe(4, 0) == [("cross", 0), ("cross", 0)]
    assert gadget_recipe(5, 2) == [("skip", 3), ("cross", 0), ("cross", 0)]


def test_tail_16_2():
    full = construct(16, 2)
    w = tail_witness(full, 16)
    assert w.vertices == (1, 3, 2, *range(4, 17))
    assert w.chord_edges == ((1, 3), (2, 4))
    w = tail_witness(full, 15)
    assert w.vertices == (1, 3, 2, *range(5, 17))
    assert 4 not in w.vertices and w.chord_edges == ((1, 3), (2, 5))
    assert full.tail_chords == ((2, 4), (2, 5))


def test_tail_k3_hamiltonian_uses_triple():
    full = construct(125, 3)
    (gd,) = full.tail[125]
    assert gd.kind == "triple"
    w = tail_witness(full, 125)
    rep = validate_witness(full.graph, w.vertices, 3)
    assert rep.ok and rep.length == 125


def test_tail_range_error():
    full = construct(16, 2)
    with pytest.raises(LengthRangeError):
        tail_witness(full, 14)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_tail_budget_and_disjoint_placement(k):
    n = (k + 2) ** k
    full = construct(n, k)
    assert len(full.tail_chords) <= k * k
    assert not set(full.tail_chords) & set(full.plan.chords)
    for d in range(k):
        gadgets = place_gadgets(n, k, d)
        spans = [(gd.anchor, gd.last) for gd in gadgets]
        assert all(a[1] < b[0] for a, b in zip(spans, spans[1:]))
        w = full.witness(n - d)
        rep = validate_witness(full.graph, w.vertices, k)
        assert rep.ok and rep.length == n - d
        assert rep.chord_edges == w.chord_edges


@given(st.integers(2, 7), st.data())
def test_spliced_gadgets_always_simple(k, data):
    n = data.draw(st.integers(8 * k + 8, 400))
    d = data.draw(st.integers(0, k - 1))
    g, verts = splice(n, place_gadgets(n, k, d))
    rep = validate_witness(g, verts, k)
    assert rep.ok and rep.length == n - d
