"""Independent oracles: plain BFS after deleting links, no bridge trees."""

from __future__ import annotations

import math
import random
from collections import deque
from functools import lru_cache
from fractions import Fraction
from itertools import combinations

import pytest

from anarchy_lab.fixtures import random_connected_graph


def reach(n, links, v, skip=()):
    skip = set(skip)
    adj = {x: [] for x in range(1, n + 1)}
    for a, b in links:
        if (a, b) in skip or (b, a) in skip:
            continue
        adj[a].append(b)
        adj[b].append(a)
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def connected(n, links):
    return len(reach(n, links, 1)) == n


def rel(n, links, e, v):
    return n - len(reach(n, links, v, skip=[e]))


def sep(n, links, e):
    return sum(rel(n, links, e, v) for v in range(1, n + 1))


def probs(n, links, adversary):
    links = sorted(links)
    if adversary == "simple":
        return {e: Fraction(1, len(links)) for e in links}
    seps = {e: sep(n, links, e) for e in links}
    top = max(seps.values())
    winners = [e for e in links if seps[e] == top]
    return {e: Fraction(1, len(winners)) if e in winners else Fraction(0) for e in links}


def indirect(n, links, v, adversary):
    """Expected number of players v loses; ``math.inf`` if disconnected."""
    links = sorted(links)
    if not connected(n, links):
        return math.inf
    p = probs(n, links, adversary)
    return sum((rel(n, links, e, v) * p[e] for e in links), Fraction(0))


def blf_cost(n, links, v, alpha, adversary):
    deg = sum(1 for e in links if v in e)
    return deg * alpha + indirect(n, links, v, adversary)


def social(n, links, alpha, adversary, per_link=2):
    return sum(
        (sum(1 for e in links if v in e) * alpha * per_link / 2 + indirect(n, links, v, adversary))
        for v in range(1, n + 1)
    )


def all_connected_link_sets(n):
    pairs = list(combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        links = [p for i, p in enumerate(pairs) if mask >> i & 1]
        if connected(n, links):
            yield links


@lru_cache(maxsize=None)
def link_count_and_expected_separation(n):
    """``{(m, sum_e sep(e)/m)}`` over all labeled connected graphs, simple-minded."""
    out = set()
    for links in all_connected_link_sets(n):
        out.add((len(links), Fraction(sum(sep(n, links, e) for e in links), len(links))))
    return frozenset(out)


def brute_force_optimum(n, alpha, per_link=2):
    return min(per_link * m * alpha + x for m, x in link_count_and_expected_separation(n))


def naive_pairwise_stable(n, links, alpha, adversary):
    links = set(links)
    cost = {v: blf_cost(n, links, v, alpha, adversary) for v in range(1, n + 1)}
    for e in links:
        for v in e:
            if blf_cost(n, links - {e}, v, alpha, adversary) < cost[v]:
                return False
    for e in combinations(range(1, n + 1), 2):
        if e in links:
            continue
        v, w = e
        after = links | {e}
        if blf_cost(n, after, v, alpha, adversary) <= cost[v] and blf_cost(n, after, w, alpha, adversary) <= cost[w]:
            return False
    return True


def random_graphs(seed, count, lo, hi):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_connected_graph(rng.randint(lo, hi), rng)


@pytest.fixture
def rng():
    return random.Random(20130916)


def ulf_cost(n, requests, v, alpha, adversary):
    links = {tuple(sorted(p)) for p in requests}
    bought = sum(1 for a, _ in requests if a == v)
    return bought * alpha + indirect(n, links, v, adversary)


def naive_ulf_deviation(n, requests, alpha, adversary):
    """First (player, new row) strictly improving on the current cost, searched over all rows."""
    requests = set(requests)
    for v in range(1, n + 1):
        current = ulf_cost(n, requests, v, alpha, adversary)
        others = [w for w in range(1, n + 1) if w != v]
        kept = {(a, b) for a, b in requests if a != v}
        for k in range(len(others) + 1):
            for row in combinations(others, k):
                trial = kept | {(v, w) for w in row}
                if ulf_cost(n, trial, v, alpha, adversary) < current:
                    return v, row
    return None


def naive_blf_deviation(n, links, alpha, adversary):
    """Full-row BLF deviations from the canonical profile of ``links``."""
    links = set(links)
    for v in range(1, n + 1):
        current = blf_cost(n, links, v, alpha, adversary)
        others = [w for w in range(1, n + 1) if w != v]
        for k in range(len(others) + 1):
            for row in combinations(others, k):
                built = {e for e in links if v not in e}
                built |= {tuple(sorted((v, w))) for w in row if tuple(sorted((v, w))) in links}
                cost = k * alpha + indirect(n, built, v, adversary)
                if cost < current:
                    return v, row
    return None
