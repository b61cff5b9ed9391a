"""Tests for matching engines, inverse pairing, path compression, path
cover extraction, and the three-way equivalence checker."""

from __future__ import annotations

import itertools
import random

import pytest

from powerindex.graphs import SimpleGraph, cycle_graph, power_graph
from powerindex.groups import catalog_for_order, construct_group, involutions
from powerindex.matching import (
    InversePath,
    Matching,
    PathCover,
    check_theorem44,
    compress_path,
    matching_from_path_cover,
    maximum_matching,
    maximum_matching_bruteforce,
    near_perfect_matching_odd,
    path_cover_from_matching,
)

from oracles import brute_max_matching_size


def test_matching_type_invariants():
    m = Matching.from_edges([(3, 1), (0, 2)])
    assert m.edges == ((0, 2), (1, 3))
    assert m.covered == frozenset({0, 1, 2, 3})
    assert m.size == 2 and m.is_perfect(4) and not m.is_perfect(5)
    assert m.is_near_perfect(5)
    assert m.to_json() == [[0, 2], [1, 3]]
    with pytest.raises(ValueError):
        Matching.from_edges([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        Matching.from_edges([(2, 2)])


def test_cycle_matching():
    assert maximum_matching(cycle_graph(4)).size == 2
    assert maximum_matching(cycle_graph(5)).size == 2
    assert maximum_matching_bruteforce(cycle_graph(5)).size == 2


def test_engines_agree_on_random_graphs():
    rng = random.Random(404)
    for trial in range(50):
        n = rng.randrange(1, 13)
        p = rng.choice((0.15, 0.4, 0.7))
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        gr = SimpleGraph(n, edges)
        blossom = maximum_matching(gr)
        brute = maximum_matching_bruteforce(gr)
        oracle = brute_max_matching_size(n, edges)
        assert blossom.size == brute.size == oracle, (n, edges)
        blossom.validate(gr)
        brute.validate(gr)


def test_engines_agree_on_power_graphs():
    for m in range(1, 15):
        for g in catalog_for_order(m).groups:
            gr = power_graph(g).graph
            assert maximum_matching(gr).size == maximum_matching_bruteforce(gr).size, g.label


def test_bruteforce_cap():
    with pytest.raises(ValueError):
        maximum_matching_bruteforce(cycle_graph(21))


def test_cyclic_even_orders_have_perfect_matchings():
    for n in range(1, 33):
        gr = power_graph(construct_group(f"Z{2 * n}")).graph
        m = maximum_matching(gr)
        assert m.is_perfect(2 * n), n
        m.validate(gr)


def test_dihedral_never_has_perfect_matching():
    for n in range(2, 26):
        gr = power_graph(construct_group(f"D{2 * n}")).graph
        assert maximum_matching(gr).size < n, n


def test_dicyclic_orders_have_perfect_matchings():
    for n in range(2, 9):
        gr = power_graph(construct_group(f"Dic{n}")).graph
        assert maximum_matching(gr).is_perfect(4 * n), n


def test_near_perfect_matching_odd():
    m7 = near_perfect_matching_odd(construct_group("Z7"))
    assert m7.size == 3 and 0 not in m7.covered
    assert near_perfect_matching_odd(construct_group("Z15")).size == 7
    for order in (1, 3, 5, 7, 9, 11, 13, 15, 21, 25, 27):
        for g in catalog_for_order(order).groups:
            m = near_perfect_matching_odd(g)
            assert m.size == (g.n - 1) // 2, g.label
            assert m.is_near_perfect(g.n)
            assert 0 not in m.covered
            m.validate(power_graph(g).graph)
    with pytest.raises(ValueError):
        near_perfect_matching_odd(construct_group("Z6"))


# ── path compression ─────────────────────────────────────────────────────────

def test_compress_path_fixed_point():
    z5 = construct_group("Z5")
    p = InversePath((2, 3))
    assert compress_path(z5, p) == p


def test_compress_path_z5_trace():
    # (a, b, b^-1, a^-1) with a=1, b=2 collapses to the endpoint pair
    z5 = construct_group("Z5")
    out = compress_path(z5, InversePath((1, 2, 3, 4)))
    assert out.vertices == (1, 4)


def test_compress_path_z9_landing_swap():
    # the walk lands exactly on the last vertex, forcing the final swap
    z9 = construct_group("Z9")
    out = compress_path(z9, InversePath((1, 6, 8, 3)))
    assert out.vertices == (1, 8, 6, 3)


def _inverse_closed_paths(g, gr, max_len):
    """All inverse-closed identity-free paths up to max_len vertices, as
    tuples; undirected duplicates (reversals) are kept, which is harmless."""
    found = []
    vertices = [x for x in range(g.n) if g.orders[x] >= 3]

    def extend(path):
        if len(set(g.inv[x] for x in path) - set(path)) == 0:
            found.append(tuple(path))
        if len(path) == max_len:
            return
        for w in gr.neighbors(path[-1]):
            if w in vertices and w not in path:
                path.append(w)
                extend(path)
                path.pop()

    for v in vertices:
        extend([v])
    return found


def test_compress_path_properties_by_enumeration():
    for spec, max_len in (("Z9", 6), ("Z12", 5), ("Z7", 5)):
        g = construct_group(spec)
        gr = power_graph(g).graph
        paths = _inverse_closed_paths(g, gr, max_len)
        assert paths, spec
        for vertices in paths:
            p = InversePath(vertices)
            out = compress_path(g, p)
            assert set(out.vertices) <= set(vertices), (spec, vertices)
            assert out.endpoints == p.endpoints or (
                # endpoints as a set always survive compression
                False), (spec, vertices, out)
            # alternating (x, x^-1) shape
            assert len(out.vertices) % 2 == 0
            for j in range(0, len(out.vertices), 2):
                assert g.inv[out.vertices[j]] == out.vertices[j + 1]


def test_compress_path_rejects_bad_inputs():
    z12 = construct_group("Z12")
    with pytest.raises(ValueError, match="order"):
        compress_path(z12, InversePath((6,)))
    with pytest.raises(ValueError, match="order"):
        compress_path(z12, InversePath((0, 1)))
    with pytest.raises(ValueError, match="inverse-closed"):
        compress_path(construct_group("Z5"), InversePath((1, 2)))
    with pytest.raises(ValueError, match="adjacent"):
        compress_path(z12, InversePath((3, 9, 4, 8)))
    with pytest.raises(ValueError, match="repeated"):
        compress_path(z12, InversePath((1, 11, 1, 11)))
    with pytest.raises(ValueError):
        compress_path(z12, InversePath(()))


# ── path covers ──────────────────────────────────────────────────────────────

def test_path_cover_cyclic_even():
    for n in range(2, 17):
        g = construct_group(f"Z{2 * n}")
        cover = path_cover_from_matching(g, maximum_matching(power_graph(g).graph))
        assert len(cover.paths) == 1
        assert cover.endpoint_union == frozenset({0, n})


def test_path_cover_q8():
    g = construct_group("Q8")
    cover = path_cover_from_matching(g, maximum_matching(power_graph(g).graph))
    assert len(cover.paths) == 1
    assert cover.endpoint_union == frozenset({0, 2})


def test_path_cover_rejects_bad_inputs():
    d8 = construct_group("D8")
    not_perfect = maximum_matching(power_graph(d8).graph)
    assert not not_perfect.is_perfect(8)
    with pytest.raises(ValueError, match="perfect"):
        path_cover_from_matching(d8, not_perfect)
    with pytest.raises(ValueError, match="even"):
        path_cover_from_matching(construct_group("Z7"), Matching.from_edges([]))


def test_path_cover_properties_across_catalog():
    for m in range(2, 33, 2):
        for g in catalog_for_order(m).groups:
            gr = power_graph(g).graph
            mm = maximum_matching(gr)
            if not mm.is_perfect(g.n):
                continue
            cover = path_cover_from_matching(g, mm)
            invs = involutions(g)
            assert len(cover.paths) == (len(invs) + 1) // 2, g.label
            seen = set()
            for p in cover.paths:
                vset = set(p.vertices)
                assert not (seen & vset), g.label
                seen |= vset
                assert {g.inv[x] for x in vset} == vset, g.label
                interior = p.vertices[1:-1]
                assert all(g.orders[x] >= 3 for x in interior), g.label
                if 0 not in p.vertices:
                    # every identity-free path showed at least 2 interiors
                    assert len(interior) >= 2, g.label
            assert cover.endpoint_union == invs | {0}, g.label


# ── matching from cover, and the equivalence ─────────────────────────────────

def test_matching_from_hand_built_cover():
    g = construct_group("Z12")
    cover = PathCover((InversePath((0, 6)),))
    m = matching_from_path_cover(g, cover)
    assert m.is_perfect(12)
    assert m.edges == ((0, 6), (1, 11), (2, 10), (3, 9), (4, 8), (5, 7))


def test_matching_from_cover_round_trip():
    for m in range(2, 49, 2):
        for g in catalog_for_order(m).groups:
            gr = power_graph(g).graph
            mm = maximum_matching(gr)
            if not mm.is_perfect(g.n):
                continue
            cover = path_cover_from_matching(g, mm)
            rebuilt = matching_from_path_cover(g, cover)
            assert rebuilt.is_perfect(g.n), g.label
            rebuilt.validate(gr)


def test_matching_from_cover_rejects_bad_covers():
    z12 = construct_group("Z12")
    with pytest.raises(ValueError, match="endpoint"):
        matching_from_path_cover(z12, PathCover((InversePath((1, 11)),)))
    with pytest.raises(ValueError, match="paths"):
        matching_from_path_cover(
            z12, PathCover((InversePath((0, 6)), InversePath((1, 11)))))
    with pytest.raises(ValueError, match="single-vertex"):
        matching_from_path_cover(z12, PathCover((InversePath((0,)),)))
    q8 = construct_group("Q8")
    # (0, 1, 3, 2) is a legitimate cover: {1, 3} are mutual inverses
    assert matching_from_path_cover(
        q8, PathCover((InversePath((0, 1, 3, 2)),))).is_perfect(8)
    with pytest.raises(ValueError, match="inverse-closed"):
        matching_from_path_cover(q8, PathCover((InversePath((2, 5)),)))


def test_check_theorem44():
    assert check_theorem44(construct_group("Z12")).optimal
    report = check_theorem44(construct_group("D10"))
    assert not report.optimal and report.matching is None and report.cover is None
    with pytest.raises(ValueError):
        check_theorem44(construct_group("Z9"))
    full = check_theorem44(construct_group("Q16"))
    assert full.optimal and full.matching.is_perfect(16)
    assert full.cover is not None and len(full.cover.paths) == 1


def test_check_theorem44_across_catalog():
    for m in range(2, 41, 2):
        for g in catalog_for_order(m).groups:
            report = check_theorem44(g)
            gr = power_graph(g).graph
            assert report.optimal == maximum_matching(gr).is_perfect(g.n), g.label
            if report.optimal:
                assert report.cover.endpoint_union == involutions(g) | {0}


def test_serialization_shapes():
    g = construct_group("Z10")
    report = check_theorem44(g)
    as_json = report.matching.to_json()
    assert all(isinstance(e, list) and len(e) == 2 for e in as_json)
    cov = report.cover.to_json()
    assert all(isinstance(p, list) for p in cov)
