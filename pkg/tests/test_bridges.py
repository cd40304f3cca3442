import random
from itertools import combinations

import pytest

import conftest as oracle
from anarchy_lab.bridges import (
    DisconnectedGraphError,
    NotALinkError,
    TreePath,
    bridge_tree,
    bridges,
    is_chord,
    is_chord_free,
    path_relevance,
    relevance,
    relevance_naive,
    relevance_sum,
    separation,
    total_separation,
    tree_diameter,
    tree_paths,
)
from anarchy_lab.fixtures import (
    EXAMPLE_VERTEX_NAMES,
    bridge_tree_example,
    cycle,
    cycle_with_path,
    random_connected_graph,
    star,
    three_stars,
)
from anarchy_lab.game import Graph

P4 = Graph.from_links(4, [(1, 2), (2, 3), (3, 4)])
NAME = {name: i for i, name in enumerate(EXAMPLE_VERTEX_NAMES, start=1)}


def test_bridges_small_cases():
    assert bridges(cycle(6)) == frozenset()
    assert bridges(P4) == P4.links


def test_bridges_of_example_graph():
    found = bridges(bridge_tree_example())
    expected = {
        tuple(sorted((NAME[a], NAME[b])))
        for a, b in [
            ("a1", "b1"), ("b1", "b7"), ("b2", "c1"), ("a4", "d1"), ("d1", "d2"),
            ("b6", "e1"), ("b4", "f1"), ("f1", "f2"), ("f2", "f3"), ("f3", "f4"),
        ]
    }
    assert found == expected


def test_disconnected_input_is_rejected():
    g = Graph.from_links(4, [(1, 2), (3, 4)])
    for call in (bridges, bridge_tree, total_separation):
        with pytest.raises(DisconnectedGraphError):
            call(g)


def test_bridge_tree_shapes():
    t = bridge_tree(cycle(6))
    assert t.weights == {1: 6} and not t.tree_links

    t = bridge_tree(cycle_with_path(16, 4))
    assert sorted(t.weights.values()) == [1, 1, 1, 1, 12]
    assert all(len(t.adjacency[k]) <= 2 for k in t.node_ids)

    t = bridge_tree(bridge_tree_example())
    assert len(t.node_ids) == 11
    assert sorted(t.weights.values()) == [1] * 8 + [3, 4, 7]


def check_tree_invariants(g):
    t = bridge_tree(g)
    members = [v for k in t.node_ids for v in t.component(k)]
    assert sorted(members) == list(g.vertices)
    assert len(t.tree_links) == len(bridges(g)) == len(t.node_ids) - 1
    assert sum(t.weights.values()) == g.n
    assert set(t.bridge_map.values()) == bridges(g)
    for k in t.node_ids:
        assert k == min(t.component(k))


def test_bridge_tree_invariants_on_random_graphs():
    for g in oracle.random_graphs(11, 200, 3, 14):
        check_tree_invariants(g)


def test_relevance_examples():
    assert relevance(P4, (1, 2), 1) == 3
    assert relevance(P4, (2, 3), 1) == 2
    c = cycle(5)
    assert all(relevance(c, e, v) == 0 for e in c.links for v in c.vertices)


def test_relevance_rejects_missing_link():
    with pytest.raises(NotALinkError):
        relevance(P4, (1, 3), 1)
    with pytest.raises(NotALinkError):
        separation(P4, (1, 4))


def test_relevance_naive_agrees_on_small_cases():
    for g in (P4, star(5), cycle(5)):
        pairs = [(e, v) for e in g.links for v in g.vertices]
        assert all(relevance(g, e, v) == relevance_naive(g, e, v) for e, v in pairs)
    assert len([(e, v) for e in P4.links for v in P4.vertices]) == 12


def test_relevance_sums():
    s = star(5)
    assert relevance_sum(s, 2) == 7 == 2 * 5 - 3
    assert relevance_sum(s, 1) == 4
    assert all(relevance_sum(cycle(6), v) == 0 for v in range(1, 7))


def test_separation_examples():
    assert separation(three_stars(5), (1, 2)) == (5, 80)
    assert separation(P4, (2, 3)) == (2, 8)
    assert separation(cycle(5), (1, 2)) == (0, 0)


def test_total_separation_examples():
    assert total_separation(cycle_with_path(16, 4)) == 260 == 2 * sum(k * (16 - k) for k in range(1, 5))
    assert total_separation(P4) == 20
    assert total_separation(cycle(7)) == 0


def test_tree_diameter_examples():
    assert tree_diameter(bridge_tree(cycle_with_path(16, 4))) == 4
    assert tree_diameter(bridge_tree(cycle(5))) == 0
    assert tree_diameter(bridge_tree(bridge_tree_example())) == 8


def brute_tree_diameter(t):
    return max((len(p) for p in tree_paths(t)), default=0)


def test_tree_diameter_matches_all_paths():
    for g in oracle.random_graphs(5, 150, 3, 14):
        t = bridge_tree(g)
        assert tree_diameter(t) == brute_tree_diameter(t)


def test_path_relevance_examples():
    t = bridge_tree(P4)
    assert path_relevance(t, TreePath((1, 2, 3, 4)), "first") == 6
    assert path_relevance(t, TreePath((2,)), "first") == 0

    g = cycle_with_path(16, 4)
    t = bridge_tree(g)
    tail = t.path(t.kappa[1], t.kappa[16])
    assert len(tail) == 4
    assert path_relevance(t, tail, "last") == 12 + 13 + 14 + 15 == 54


def test_path_relevance_rejects_invalid_paths():
    t = bridge_tree(P4)
    with pytest.raises(ValueError):
        path_relevance(t, TreePath((1, 3)))
    with pytest.raises(ValueError):
        path_relevance(t, TreePath((1, 2, 1)))
    with pytest.raises(ValueError):
        path_relevance(t, TreePath((1, 2)), "middle")


def test_path_relevance_matches_naive_sum():
    for g in oracle.random_graphs(8, 100, 3, 12):
        t = bridge_tree(g)
        for p in tree_paths(t):
            first = p.nodes[0]
            expected = sum(oracle.rel(g.n, g.links, t.bridge_map[tl], first) for tl in p.links)
            assert path_relevance(t, p, "first") == expected


def test_oracle_equivalence_and_sep_sum():
    rng = random.Random(9)
    for _ in range(300):
        g = random_connected_graph(rng.randint(3, 12), rng)
        for e in g.links:
            rels = [relevance(g, e, v) for v in g.vertices]
            assert rels == [oracle.rel(g.n, g.links, e, v) for v in g.vertices]
            nu, sep = separation(g, e)
            assert sep == sum(rels) == 2 * nu * (g.n - nu)
            assert nu <= g.n // 2 and sep <= g.n**2
            if e in bridges(g):
                assert sep >= 2 * (g.n - 1)


def test_diameter_bounds():
    for g in oracle.random_graphs(13, 300, 3, 14):
        d = tree_diameter(bridge_tree(g))
        for v in g.vertices:
            assert relevance_sum(g, v) <= (g.n - 1) * d
            assert relevance_sum(g, v) <= g.n * (g.n - 1) // 2
        if d == 0:
            assert total_separation(g) == 0
        else:
            assert total_separation(g) < g.n**2 * d
        assert total_separation(g) == sum(relevance_sum(g, v) for v in g.vertices)


def random_cycle_through(g, e, rng):
    """Links of a cycle made of ``e`` and a randomised DFS path between its ends."""
    x, y = e
    h = g.remove(e)
    parent = {x: None}
    stack = [x]
    while stack:
        a = stack.pop()
        nbrs = sorted(h.adjacency[a])
        rng.shuffle(nbrs)
        for b in nbrs:
            if b not in parent:
                parent[b] = a
                stack.append(b)
    links, b = {e}, y
    while parent[b] is not None:
        links.add(tuple(sorted((b, parent[b]))))
        b = parent[b]
    return links


def test_new_bridges_lie_on_every_cycle_through_the_link():
    rng = random.Random(4)
    checked = 0
    for _ in range(300):
        g = random_connected_graph(rng.randint(3, 10), rng)
        for e in sorted(g.links - bridges(g)):
            fresh = bridges(g.remove(e)) - bridges(g)
            for _ in range(3):
                assert fresh <= random_cycle_through(g, e, rng)
            checked += len(fresh)
    assert checked > 100


def naive_chord(g, e):
    x, y = e
    h = g.remove(e)
    if y not in h.reachable(x):
        return False
    for z in g.vertices:
        if z in e:
            continue
        skip = [link for link in h.links if z in link]
        reach = oracle.reach(g.n, h.links, x, skip=skip)
        if y not in reach:
            return False
    return True


def test_chords_match_menger_oracle():
    rng = random.Random(17)
    for _ in range(300):
        g = random_connected_graph(rng.randint(3, 9), rng)
        for e in g.links:
            assert is_chord(g, e) == naive_chord(g, e)


def test_chord_free_examples():
    assert is_chord_free(cycle(6))
    assert is_chord_free(star(6))
    assert not is_chord_free(cycle(5).add((1, 3)))
    k4 = Graph.from_links(4, combinations(range(1, 5), 2))
    assert all(is_chord(k4, e) for e in k4.links)
