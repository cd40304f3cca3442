"""Exhaustive equilibrium search and price of anarchy.

Labeled enumeration walks every subset of the ``n(n-1)/2`` possible links
in increasing bitmask order.  Deduplicated enumeration builds one
representative per isomorphism class, which is sound for the built-in
adversaries because both induce anonymous cost.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

import networkx as nx

from .adversary import Custom
from .cost import graph_social_cost, optimum, social_cost
from .equilibrium import Concept, CapExceededError, check
from .game import GameParams, Graph, Rule, StrategyProfile, build_graph

BLF_CAP = 8
ULF_CAP = 7
_PARALLEL_THRESHOLD = 4096


def resolve_workers(workers: Optional[int] = None) -> int:
    if workers is None:
        env = os.environ.get("ANARCHY_LAB_THREADS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def _pairs(n: int) -> list:
    return list(combinations(range(1, n + 1), 2))


def labeled_graphs(n: int, connected_only: bool = True, start: int = 0, stop: Optional[int] = None):
    pairs = _pairs(n)
    stop = (1 << len(pairs)) if stop is None else stop
    for mask in range(start, stop):
        g = Graph(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        if not connected_only or g.is_connected:
            yield g


def _invariant(g: Graph) -> tuple:
    adj = g.adjacency
    deg = {v: len(adj[v]) for v in g.vertices}
    return tuple(
        sorted(
            (
                deg[v],
                tuple(sorted(deg[w] for w in adj[v])),
                sum(1 for a, b in combinations(sorted(adj[v]), 2) if b in adj[a]),
            )
            for v in g.vertices
        )
    )


def _nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.links)
    return h


@lru_cache(maxsize=None)
def unlabeled_graphs(n: int, connected_only: bool = True) -> tuple:
    """One representative per isomorphism class, ordered by (m, sorted links).

    Every connected graph on ``k+1`` vertices has a vertex whose removal
    keeps it connected, so extending connected graphs by a vertex with a
    nonempty neighbourhood reaches every class.
    """
    if n == 1:
        return (Graph(1),)
    buckets: dict = {}
    reps = []
    for base in unlabeled_graphs(n - 1, connected_only):
        first = 1 if connected_only else 0
        for mask in range(first, 1 << (n - 1)):
            extra = [(i, n) for i in range(1, n) if mask >> (i - 1) & 1]
            g = Graph(n, base.links.union(extra))
            bucket = buckets.setdefault(_invariant(g), [])
            h = _nx(g)
            if any(nx.is_isomorphic(h, other) for _, other in bucket):
                continue
            bucket.append((g, h))
            reps.append(g)
    return tuple(sorted(reps, key=lambda g: (g.m, g.sorted_links())))


def orientations(g: Graph):
    """Every essential ULF profile building ``g`` (one owner per link)."""
    links = g.sorted_links()
    for mask in range(1 << len(links)):
        yield StrategyProfile.from_requests(
            g.n, [(v, w) if mask >> i & 1 else (w, v) for i, (v, w) in enumerate(links)]
        )


def _check_caps(n: int, concept: Concept, params: GameParams) -> None:
    cap = ULF_CAP if concept.rule is Rule.ULF else BLF_CAP
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the enumeration cap of {cap} for {concept.value}")
    if isinstance(params.adversary, Custom):
        raise ValueError("enumeration needs a graph-dependent adversary, not a fixed table")


def _witnesses(graphs, params: GameParams, concept: Concept) -> list:
    out = []
    for g in graphs:
        if concept.rule is Rule.BLF:
            if check(g, params, concept):
                out.append(g)
        else:
            out.extend(s for s in orientations(g) if check(s, params, concept))
    return out


def _labeled_chunk(job):
    n, connected_only, start, stop, params, concept = job
    return _witnesses(labeled_graphs(n, connected_only, start, stop), params, concept)


def _rep_chunk(job):
    graphs, params, concept = job
    return _witnesses(graphs, params, concept)


def enumerate_equilibria(
    n: int,
    alpha,
    adversary,
    concept: Concept,
    *,
    dedup: bool = False,
    connected_only: bool = True,
    workers: Optional[int] = None,
) -> list:
    """All equilibria on ``n`` players, as graphs (BLF) or profiles (ULF).

    The result order is fixed by the candidate order and does not depend on
    ``workers``.
    """
    params = GameParams(n, Fraction(alpha), concept.rule, adversary)
    _check_caps(n, concept, params)
    workers = resolve_workers(workers)
    if dedup:
        reps = unlabeled_graphs(n, connected_only)
        if workers == 1 or len(reps) < 64:
            return _witnesses(reps, params, concept)
        size = -(-len(reps) // (4 * workers))
        jobs = [(reps[i : i + size], params, concept) for i in range(0, len(reps), size)]
        run = _rep_chunk
    else:
        total = 1 << (n * (n - 1) // 2)
        if workers == 1 or total < _PARALLEL_THRESHOLD:
            return _witnesses(labeled_graphs(n, connected_only), params, concept)
        size = -(-total // (4 * workers))
        jobs = [(n, connected_only, i, min(i + size, total), params, concept) for i in range(0, total, size)]
        run = _labeled_chunk
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return [x for chunk in pool.map(run, jobs) for x in chunk]


@dataclass(frozen=True)
class PoAReport:
    n: int
    alpha: Fraction
    adversary: str
    concept: Concept
    optimum: Fraction
    worst: Optional[Fraction]
    witness: Optional[object]
    ratio: Optional[Fraction]
    count: int
    deduplicated: bool

    @property
    def empty(self) -> bool:
        return self.count == 0


def _social(obj, params: GameParams):
    if isinstance(obj, Graph):
        return graph_social_cost(obj, params)
    return social_cost(obj, params)


def price_of_anarchy(
    n: int,
    alpha,
    adversary,
    concept: Concept,
    *,
    dedup: bool = True,
    workers: Optional[int] = None,
) -> PoAReport:
    """Worst equilibrium social cost over the optimum.

    When no equilibrium exists the report has ``count == 0`` and ``ratio``
    ``None``.  ``count`` counts isomorphism classes (BLF) or profiles on class
    representatives (ULF) when ``dedup`` is set.
    """
    alpha = Fraction(alpha)
    params = GameParams(n, alpha, concept.rule, adversary)
    found = enumerate_equilibria(n, alpha, adversary, concept, dedup=dedup, workers=workers)
    opt, _ = optimum(n, alpha, concept.rule)
    worst = witness = None
    for obj in found:
        sc = _social(obj, params)
        if worst is None or sc > worst:
            worst, witness = sc, obj
    ratio = None if worst is None else worst / opt
    return PoAReport(n, alpha, adversary.name, concept, opt, worst, witness, ratio, len(found), dedup)


def witness_ratio(obj, params: GameParams) -> Fraction:
    """Social cost of one given equilibrium candidate over the optimum."""
    if isinstance(obj, StrategyProfile) and params.rule is Rule.BLF:
        obj = build_graph(obj, Rule.BLF)
    opt, _ = optimum(params.n, params.alpha, params.rule)
    return _social(obj, params) / opt
