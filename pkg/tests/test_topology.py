import random

import networkx as nx
import pytest

from roamkit.graph import Cone, build_ball, build_coned_off_ball
from roamkit.roaming import _translated_v
from roamkit.topology import (NeighborhoodSpec, Ray, compile_neighborhood, compute_v_set, e_set,
                              in_neighborhood, local_finiteness_probe, shrink_neighborhood)


def _word(v):
    return v.rep if isinstance(v, Cone) else v


def lead(w, ch="a"):
    return len(w) - len(w.lstrip(ch))


def a_exp(w):
    assert set(w) <= {"a"} or set(w) <= {"A"}
    return len(w) if w[:1] == "a" else -len(w)


@pytest.fixture(scope="module")
def small(f2, H):
    ball = build_coned_off_ball(f2, [H], 5)
    G = ball.to_networkx()
    return ball, G, dict(nx.all_pairs_shortest_path_length(G))


def test_membership_against_geodesic_enumeration(small):
    ball, G, _ = small
    core = [v for v in ball.vertices if len(_word(v)) <= 2]
    rng = random.Random(0)
    for _ in range(200):
        x, y = rng.choice(core), rng.choice(core)
        A = {v for v in rng.sample(core, 3) if v != x}
        on = set() if x == y else {v for p in nx.all_shortest_paths(G, x, y) for v in p}
        expect = x == y or not (on & A)
        assert in_neighborhood(ball, y, NeighborhoodSpec(x, A)).value == expect, (x, y, A)


def test_compiled_predicate_matches(small):
    ball, _, _ = small
    core = [v for v in ball.vertices if len(_word(v)) <= 3]
    specs = [NeighborhoodSpec(Cone("", 0), {"a", "AA"}),
             NeighborhoodSpec(Cone("b", 0), {"ba", "b"}),
             NeighborhoodSpec("b", {"", Cone("", 0)})]
    for spec in specs:
        f = compile_neighborhood(ball, spec)
        for y in core:
            assert f(y) == in_neighborhood(ball, y, spec).value, (spec, y)


def test_cone_fast_path_entry_point(coned6):
    # every geodesic from [e] to y enters <a> at the leading a-syllable of y
    f = compile_neighborhood(coned6, NeighborhoodSpec(Cone("", 0), {"aa"}))
    assert not f("aab") and not f("aa")
    assert f("ab") and f("aaab") and f("b")


@pytest.mark.parametrize("m", [1, 2])
def test_ray_neighbourhoods_in_tree(f2, m):
    # M(a+, {a^m}) = {y : leading a-run of y >= m + 1}
    ball = build_ball(f2, 6)
    spec = NeighborhoodSpec(Ray("a"), {"a" * m})
    f = compile_neighborhood(ball, spec)
    for y in ball.elements:
        assert f(y) == (lead(y) >= m + 1), y
    for y in ("", "b", "a" * (m + 1) + "b"):
        v = in_neighborhood(ball, y, spec)
        assert v.value == (lead(y) >= m + 1) and v.stabilization is not None


def test_spec_round_trip(f2):
    for spec in (NeighborhoodSpec(Ray("a", -1), {"A", "bb"}), NeighborhoodSpec(Cone("b", 0), {"b", "ba"})):
        assert NeighborhoodSpec.from_dict(f2, spec.to_dict(f2)) == spec
    with pytest.raises(ValueError):
        NeighborhoodSpec("a", {"a"})
    with pytest.raises(ValueError):
        Ray.parse("a")


# -- V sets: both clauses checked by brute force ---------------------------------

def _simple_quasi(G, dist, x, y, r):
    for p in nx.all_simple_paths(G, x, y, cutoff=dist[x][y] + r):
        if all(j - i <= dist[p[i]][p[j]] + r for i in range(len(p)) for j in range(i + 1, len(p))):
            yield set(p)


def _meets(dist, x, S, y):
    return any(dist[x][s] + dist[s][y] == dist[x][y] for s in S)


@pytest.mark.parametrize("x, A", [(Cone("", 0), {"a"}), (Cone("", 0), {"A", "aa"}), ("", {"b"})])
def test_v_set_clauses(f2, H, x, A):
    ball = build_coned_off_ball(f2, [H], 4, safe_radius=2)
    G = ball.to_networkx()
    dist = dict(nx.all_pairs_shortest_path_length(G))
    r = 2
    V = compute_v_set(ball, r, x, A)
    assert V.verified and A <= V.vertices
    for y in ball.core():
        if y == x:
            continue
        qs = list(_simple_quasi(G, dist, x, y, r))
        if _meets(dist, x, A, y):
            assert all(q & V.vertices for q in qs), y
        if not _meets(dist, x, V.vertices, y):
            assert not any(q & A for q in qs), y


def test_v_sets_at_the_base_cone(coned6):
    c = Cone("", 0)
    V = compute_v_set(coned6, 2, c, {""})
    assert V.verified
    assert sorted(a_exp(v) for v in V.vertices) == [-2, -1, 0, 1, 2]


@pytest.mark.parametrize("A", [{"a"}, {"", "a", "A"}, {"aa"}])
def test_translates_agree_with_direct_v_sets(coned6, A):
    # a union of translates of V({e}) also satisfies both clauses for A
    c = Cone("", 0)
    T = _translated_v(coned6, coned6, c, A, 2)
    direct = compute_v_set(coned6, 2, c, A)
    assert direct.vertices <= T
    f = compile_neighborhood(coned6, NeighborhoodSpec(c, A))
    g = compile_neighborhood(coned6, NeighborhoodSpec(c, T))
    for y in coned6.elements:
        if g(y):
            assert f(y)


def test_e_set_validated(f2, H):
    ball = build_coned_off_ball(f2, [H], 3, safe_radius=1)
    es = e_set(ball, 1, ("", Cone("", 0)))
    assert es.validated and ("", Cone("", 0)) in es.edges or (Cone("", 0), "") in es.edges


# -- shrinking ---------------------------------------------------------------------

def test_shrink_in_tree_keeps_a(f2_ball8):
    rep = shrink_neighborhood(f2_ball8, "", {"b", "aB"}, 0)
    assert rep.verified and rep.C == {"b", "aB"}


def test_shrink_at_cone(coned8):
    rep = shrink_neighborhood(coned8, Cone("", 0), {"a"}, 1)
    assert rep.verified and rep.r0 == 16 and "a" in rep.C


def test_local_finiteness(f2, H):
    ball = build_coned_off_ball(f2, [H], 5)
    probe = local_finiteness_probe(ball, 1, "", "bab", radii=[4, 5])
    assert probe.stabilized
    assert probe.degrees[4] == probe.degrees[5]
