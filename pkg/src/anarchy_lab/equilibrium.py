"""Equilibrium predicates, convexity and path limits.

Every inequality is evaluated over exact rationals (with :data:`INF`).
Predicates return a :class:`Verdict` which is truthy iff the property
holds; a failing verdict carries a :class:`DeviationWitness`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .bridges import bridge_tree, path_relevance, tree_paths
from .cost import INF, indirect_costs
from .game import GameParams, Graph, Rule, StrategyProfile, build_graph, link

ULF_PLAYER_CAP = 12
DEGREE_CAP = 20


class CapExceededError(ValueError):
    pass


class Concept(enum.Enum):
    NE_ULF = "ne"
    MAXNE_ULF = "maxne"
    PNE_BLF = "pne"
    PS_BLF = "ps"

    @property
    def rule(self) -> Rule:
        return Rule.ULF if self in (Concept.NE_ULF, Concept.MAXNE_ULF) else Rule.BLF


@dataclass(frozen=True)
class DeviationWitness:
    """A deviation that strictly violates the checked predicate.

    ``kind`` is one of ``"row"`` (a player replaces her request row),
    ``"add-set"`` (a player buys extra links), ``"remove"`` (a player drops
    incident links) or ``"add"`` (two players jointly add a link).
    """

    kind: str
    players: tuple
    links: tuple
    before: tuple
    after: tuple
    row: Optional[tuple] = None


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[DeviationWitness] = None

    def __bool__(self):
        return self.holds


HOLDS = Verdict(True)


def _expect_rule(params: GameParams, rule: Rule) -> None:
    if params.rule is not rule:
        raise ValueError(f"this check needs rule {rule.name}, got {params.rule.name}")


def _check_ulf_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceededError(
            f"n={n} exceeds the exhaustive ULF cap of {cap} players "
            f"(2^(n-1) deviations per player); pass a larger cap explicitly"
        )


def is_nash_ulf(s: StrategyProfile, params: GameParams, cap: int = ULF_PLAYER_CAP) -> Verdict:
    """No player can lower her cost by any replacement of her request row.

    Requests towards players that already request the link are skipped:
    they cost alpha and change nothing, so they never help.
    """
    _expect_rule(params, Rule.ULF)
    _check_ulf_cap(s.n, cap)
    g = build_graph(s, Rule.ULF)
    alpha, adv = params.alpha, params.adversary
    base = indirect_costs(g, adv)
    for v in g.vertices:
        current = s.request_count(v) * alpha + base[v - 1]
        fixed = {e for e in g.links if v not in e}
        fixed.update(link(v, w) for w in g.vertices if w != v and s[w, v])
        free = [w for w in g.vertices if w != v and not s[w, v]]
        best = None
        for k in range(len(free) + 1):
            for chosen in combinations(free, k):
                h = Graph(g.n, frozenset(fixed.union(link(v, w) for w in chosen)))
                cost = k * alpha + indirect_costs(h, adv)[v - 1]
                if cost < current and (best is None or cost < best[0]):
                    best = (cost, chosen)
        if best is not None:
            return Verdict(
                False,
                DeviationWitness("row", (v,), (), (current,), (best[0],), row=best[1]),
            )
    return HOLDS


def is_max_ne_ulf(s: StrategyProfile, params: GameParams, cap: int = ULF_PLAYER_CAP) -> Verdict:
    """NE in which every nonempty set of extra purchases strictly hurts the buyer."""
    verdict = is_nash_ulf(s, params, cap)
    if not verdict:
        return verdict
    g = build_graph(s, Rule.ULF)
    alpha, adv = params.alpha, params.adversary
    base = indirect_costs(g, adv)
    for v in g.vertices:
        bought = s.request_count(v)
        current = bought * alpha + base[v - 1]
        absent = [w for w in g.vertices if w != v and w not in g.adjacency[v]]
        for k in range(1, len(absent) + 1):
            for chosen in combinations(absent, k):
                added = tuple(link(v, w) for w in chosen)
                cost = (bought + k) * alpha + indirect_costs(g.add(*added), adv)[v - 1]
                if not cost > current:
                    return Verdict(
                        False, DeviationWitness("add-set", (v,), added, (current,), (cost,))
                    )
    return HOLDS


def _costs(g: Graph, params: GameParams) -> list:
    ind = indirect_costs(g, params.adversary)
    return [g.degree(v) * params.alpha + ind[v - 1] for v in g.vertices]


def _removal_violation(g: Graph, params: GameParams, max_size: Optional[int]):
    """First player that strictly gains by dropping a set of incident links."""
    before = _costs(g, params)
    for v in g.vertices:
        nbrs = sorted(g.adjacency[v])
        top = len(nbrs) if max_size is None else min(max_size, len(nbrs))
        for k in range(1, top + 1):
            for chosen in combinations(nbrs, k):
                dropped = tuple(link(v, w) for w in chosen)
                h = g.remove(*dropped)
                after = (len(nbrs) - k) * params.alpha + indirect_costs(h, params.adversary)[v - 1]
                if after < before[v - 1]:
                    return DeviationWitness("remove", (v,), dropped, (before[v - 1],), (after,))
    return None


def addition_gains(g: Graph, e, params: GameParams) -> tuple:
    """Cost of both endpoints of absent link ``e`` before and after adding it."""
    v, w = link(*e)
    before = _costs(g, params)
    ind = indirect_costs(g.add((v, w)), params.adversary)
    after_v = (g.degree(v) + 1) * params.alpha + ind[v - 1]
    after_w = (g.degree(w) + 1) * params.alpha + ind[w - 1]
    return (before[v - 1], before[w - 1]), (after_v, after_w)


def _addition_violation(g: Graph, params: GameParams):
    """First absent link both endpoints weakly want (violating the pairwise condition)."""
    before = _costs(g, params)
    for v, w in g.absent_links():
        ind = indirect_costs(g.add((v, w)), params.adversary)
        after_v = (g.degree(v) + 1) * params.alpha + ind[v - 1]
        after_w = (g.degree(w) + 1) * params.alpha + ind[w - 1]
        if after_v <= before[v - 1] and after_w <= before[w - 1]:
            return DeviationWitness(
                "add", (v, w), ((v, w),), (before[v - 1], before[w - 1]), (after_v, after_w)
            )
    return None


def is_pne(g: Graph, params: GameParams, degree_cap: int = DEGREE_CAP) -> Verdict:
    """Pairwise Nash equilibrium of the canonical BLF profile of ``g``.

    Under BLF a unilateral change can only withdraw requests (dropping the
    matching links) or add unanswered requests, which cost alpha and build
    nothing.  So the Nash part searches every subset of incident links.
    """
    _expect_rule(params, Rule.BLF)
    worst = max((g.degree(v) for v in g.vertices), default=0)
    if worst > degree_cap:
        raise CapExceededError(
            f"max degree {worst} exceeds the cap of {degree_cap} (2^deg removal sets per player)"
        )
    w = _removal_violation(g, params, None) or _addition_violation(g, params)
    return HOLDS if w is None else Verdict(False, w)


def is_pairwise_stable(g: Graph, params: GameParams) -> Verdict:
    _expect_rule(params, Rule.BLF)
    w = _removal_violation(g, params, 1) or _addition_violation(g, params)
    return HOLDS if w is None else Verdict(False, w)


def check(obj, params: GameParams, concept: Concept) -> Verdict:
    """Dispatch on ``concept``; ``obj`` is a profile for ULF and a graph for BLF."""
    if concept is Concept.NE_ULF:
        return is_nash_ulf(obj, params)
    if concept is Concept.MAXNE_ULF:
        return is_max_ne_ulf(obj, params)
    if isinstance(obj, StrategyProfile):
        obj = build_graph(obj, Rule.BLF)
    if concept is Concept.PNE_BLF:
        return is_pne(obj, params)
    return is_pairwise_stable(obj, params)


def convexity_holds(s: StrategyProfile, v: int, removals, params: GameParams) -> bool:
    """Compare dropping all of ``removals`` at once against dropping each alone.

    Checks ``I(S - all) - I(S) >= sum_i (I(S - v w_i) - I(S))`` for player v.
    When ``S`` itself is disconnected the cost is already infinite and the
    inequality is taken to hold.
    """
    g = build_graph(s, params.rule)
    removals = sorted(set(removals))
    for w in removals:
        if w == v or not g.has_link(v, w):
            raise ValueError(f"{v}-{w} is not a link of the built graph")
    adv = params.adversary
    base = indirect_costs(g, adv)[v - 1]
    if base is INF:
        return True

    def without(ws):
        rows = [list(r) for r in s.requests]
        for w in ws:
            rows[v - 1][w - 1] = 0
        h = build_graph(StrategyProfile(s.n, tuple(map(tuple, rows))), params.rule)
        return indirect_costs(h, adv)[v - 1]

    lhs = without(removals) - base
    rhs = sum((without([w]) - base for w in removals), 0)
    return lhs >= rhs


def unlimited_paths(g: Graph, alpha) -> list:
    """Bridge tree paths limited from neither end (relevance sum > 2 n alpha at both)."""
    tree = bridge_tree(g)
    bound = 2 * g.n * alpha
    return [
        p
        for p in tree_paths(tree)
        if path_relevance(tree, p, "first") > bound and path_relevance(tree, p, "last") > bound
    ]
