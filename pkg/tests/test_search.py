from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest

from anarchy_lab import search
from anarchy_lab.adversary import SIMPLE_MINDED, SMART, Custom
from anarchy_lab.bridges import is_chord_free
from anarchy_lab.cost import graph_social_cost
from anarchy_lab.equilibrium import CapExceededError, Concept, is_pne
from anarchy_lab.fixtures import cycle, random_connected_graph, star, three_stars
from anarchy_lab.game import GameParams, Rule, build_graph, is_essential
from anarchy_lab.search import (
    enumerate_equilibria,
    labeled_graphs,
    orientations,
    price_of_anarchy,
    resolve_workers,
    unlabeled_graphs,
    witness_ratio,
)


def as_nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.links)
    return h


@pytest.mark.parametrize("n,count", [(3, 4), (4, 38), (5, 728)])
def test_labeled_connected_counts(n, count):
    assert sum(1 for _ in labeled_graphs(n)) == count


def test_labeled_all_graphs_count():
    assert sum(1 for _ in labeled_graphs(4, connected_only=False)) == 2**6


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112)])
def test_unlabeled_connected_counts(n, count):
    assert len(unlabeled_graphs(n)) == count


def test_unlabeled_counts_with_disconnected():
    assert [len(unlabeled_graphs(n, False)) for n in (3, 4, 5)] == [4, 11, 34]


def test_unlabeled_representatives_are_pairwise_non_isomorphic():
    reps = [as_nx(g) for g in unlabeled_graphs(5)]
    assert not any(nx.is_isomorphic(a, b) for a, b in combinations(reps, 2))


def test_orientations_are_essential_and_build_the_graph():
    g = cycle(4)
    profiles = list(orientations(g))
    assert len(profiles) == 16 and len(set(profiles)) == 16
    assert all(is_essential(s, Rule.ULF) and build_graph(s, Rule.ULF) == g for s in profiles)


def test_spanning_trees_are_stable_for_expensive_links():
    found = set(enumerate_equilibria(4, 10, SIMPLE_MINDED, Concept.PS_BLF))
    trees = {g for g in labeled_graphs(4) if g.m == 3}
    assert len(trees) == 16 and trees <= found


def test_examples_from_enumeration():
    assert star(5) in enumerate_equilibria(5, 2, SIMPLE_MINDED, Concept.PNE_BLF)
    assert cycle(4) in enumerate_equilibria(4, Fraction(1, 100), SIMPLE_MINDED, Concept.PS_BLF)


def test_caps_and_custom_adversaries():
    with pytest.raises(CapExceededError):
        price_of_anarchy(13, Fraction(5, 2), SMART, Concept.PNE_BLF)
    with pytest.raises(CapExceededError):
        enumerate_equilibria(8, 1, SIMPLE_MINDED, Concept.NE_ULF)
    with pytest.raises(ValueError):
        enumerate_equilibria(4, 1, Custom.from_mapping({(1, 2): 1}), Concept.PS_BLF)


def test_price_of_anarchy_star_witness():
    report = price_of_anarchy(5, 3, SIMPLE_MINDED, Concept.PNE_BLF)
    assert report.optimum == 30
    assert report.ratio >= Fraction(16, 15)
    assert graph_social_cost(report.witness, GameParams(5, 3)) == report.worst
    assert is_pne(report.witness, GameParams(5, 3))


def test_fixed_witness_ratio():
    params = GameParams(13, Fraction(5, 2), Rule.BLF, SMART)
    assert witness_ratio(three_stars(5), params) == Fraction(28, 13)


def test_empty_report(monkeypatch):
    monkeypatch.setattr(search, "enumerate_equilibria", lambda *a, **k: [])
    report = search.price_of_anarchy(4, 1, SIMPLE_MINDED, Concept.PS_BLF)
    assert report.empty and report.ratio is None and report.witness is None


@pytest.mark.parametrize("concept", [Concept.PS_BLF, Concept.PNE_BLF])
@pytest.mark.parametrize("adv", [SIMPLE_MINDED, SMART])
def test_labeled_and_deduplicated_agree(concept, adv):
    for alpha in (Fraction(1, 2), 1, 3):
        labeled = price_of_anarchy(5, alpha, adv, concept, dedup=False, workers=1)
        dedup = price_of_anarchy(5, alpha, adv, concept, dedup=True, workers=1)
        assert labeled.ratio == dedup.ratio and labeled.worst == dedup.worst
        labeled = [as_nx(g) for g in enumerate_equilibria(5, alpha, adv, concept, workers=1)]
        reps = [as_nx(g) for g in enumerate_equilibria(5, alpha, adv, concept, dedup=True, workers=1)]
        assert all(any(nx.is_isomorphic(h, r) for r in reps) for h in labeled)
        assert all(any(nx.is_isomorphic(h, r) for h in labeled) for r in reps)


def test_ulf_enumeration_labeled_vs_dedup():
    for alpha in (Fraction(1, 2), 2):
        a = price_of_anarchy(4, alpha, SIMPLE_MINDED, Concept.NE_ULF, dedup=False, workers=1)
        b = price_of_anarchy(4, alpha, SIMPLE_MINDED, Concept.NE_ULF, dedup=True, workers=1)
        assert a.ratio == b.ratio


def test_results_do_not_depend_on_worker_count():
    one = enumerate_equilibria(6, 1, SIMPLE_MINDED, Concept.PS_BLF, workers=1)
    two = enumerate_equilibria(6, 1, SIMPLE_MINDED, Concept.PS_BLF, workers=2)
    assert one == two
    r1 = price_of_anarchy(7, 1, SMART, Concept.PS_BLF, workers=1)
    r2 = price_of_anarchy(7, 1, SMART, Concept.PS_BLF, workers=2)
    assert (r1.ratio, r1.witness, r1.count) == (r2.ratio, r2.witness, r2.count)


def test_worker_resolution(monkeypatch):
    monkeypatch.setenv("ANARCHY_LAB_THREADS", "3")
    assert resolve_workers() == 3
    assert resolve_workers(0) == 1
    monkeypatch.delenv("ANARCHY_LAB_THREADS")
    assert resolve_workers() >= 1


ALPHAS = (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2), 1, 3, 10)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_simple_minded_ps_equals_pne_up_to_seven(n):
    for alpha in ALPHAS:
        ps = enumerate_equilibria(n, alpha, SIMPLE_MINDED, Concept.PS_BLF, dedup=True, workers=1)
        pne = enumerate_equilibria(n, alpha, SIMPLE_MINDED, Concept.PNE_BLF, dedup=True, workers=1)
        assert ps == pne


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_smart_ps_graphs_are_chord_free(n):
    for alpha in ALPHAS:
        for g in enumerate_equilibria(n, alpha, SMART, Concept.PS_BLF, dedup=True, workers=1):
            assert is_chord_free(g)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_link_counts_of_simple_minded_ps_graphs(n):
    for alpha in ALPHAS:
        for g in enumerate_equilibria(n, alpha, SIMPLE_MINDED, Concept.PS_BLF, dedup=True, workers=1):
            if alpha > Fraction(1, 2):
                assert is_chord_free(g) and g.m < 2 * n
            elif not is_chord_free(g):
                # m <= n / sqrt(2 alpha) + 1, squared to stay exact
                assert 2 * alpha * (g.m - 1) ** 2 <= n * n


def test_chord_free_graphs_have_fewer_than_2n_links(rng):
    seen = 0
    for _ in range(3000):
        g = random_connected_graph(rng.randint(3, 60), rng)
        if is_chord_free(g):
            assert g.m < 2 * g.n
            seen += 1
    assert seen > 100


def test_every_equilibrium_obeys_the_rough_bound():
    for alpha in (Fraction(1, 4), 1, 3):
        opt = price_of_anarchy(6, alpha, SIMPLE_MINDED, Concept.PS_BLF, dedup=True, workers=1)
        for g in enumerate_equilibria(6, alpha, SIMPLE_MINDED, Concept.PS_BLF, dedup=True, workers=1):
            ratio = graph_social_cost(g, GameParams(6, alpha)) / opt.optimum
            assert ratio <= (2 * g.m * alpha + 36) / (2 * 5 * alpha)
