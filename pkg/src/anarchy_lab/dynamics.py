"""Improving-move dynamics for finding pairwise stable graphs.

A move is either a single-link removal that strictly lowers the seller's
cost, or a joint addition that neither endpoint weakly opposes (both costs
stay equal or drop).  These are exactly the violations of pairwise
stability, so a graph with no move left is pairwise stable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .bridges import DisconnectedGraphError
from .cost import indirect_costs
from .game import GameParams, Graph, Rule

POLICIES = ("lex", "steepest", "random")


@dataclass(frozen=True)
class Move:
    kind: str  # "remove" or "add"
    link: tuple
    players: tuple
    before: tuple
    after: tuple

    @property
    def gain(self):
        return sum(b - a for b, a in zip(self.before, self.after))


@dataclass(frozen=True)
class DynamicsResult:
    trajectory: tuple
    final: Graph
    stable: bool


def _moves(g: Graph, params: GameParams):
    alpha, adv = params.alpha, params.adversary
    ind = indirect_costs(g, adv)
    cost = {v: g.degree(v) * alpha + ind[v - 1] for v in g.vertices}
    for e in g.sorted_links():
        after = indirect_costs(g.remove(e), adv)
        for v in e:
            new = (g.degree(v) - 1) * alpha + after[v - 1]
            if new < cost[v]:
                yield Move("remove", e, (v,), (cost[v],), (new,))
    for e in g.absent_links():
        after = indirect_costs(g.add(e), adv)
        v, w = e
        nv = (g.degree(v) + 1) * alpha + after[v - 1]
        nw = (g.degree(w) + 1) * alpha + after[w - 1]
        if nv <= cost[v] and nw <= cost[w]:
            yield Move("add", e, e, (cost[v], cost[w]), (nv, nw))


def improving_moves(g: Graph, params: GameParams) -> list:
    """All improving moves: removals by link then seller, then additions by link."""
    return list(_moves(g, params))


def _apply(g: Graph, move: Move) -> Graph:
    return g.remove(move.link) if move.kind == "remove" else g.add(move.link)


def pairwise_dynamics(
    g0: Graph,
    params: GameParams,
    policy: str = "lex",
    seed: Optional[int] = None,
    max_steps: int = 1000,
) -> DynamicsResult:
    """Apply improving moves until none is left or ``max_steps`` is reached.

    ``lex`` takes the first move of :func:`improving_moves`, ``steepest`` the
    one with the largest total cost drop (first on ties) and ``random`` a
    uniform choice driven by ``seed``.
    """
    if params.rule is not Rule.BLF:
        raise ValueError("pairwise dynamics run under BLF")
    if not g0.is_connected:
        raise DisconnectedGraphError("dynamics need a connected start graph")
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    rng = random.Random(seed)
    g = g0
    trajectory = []
    for _ in range(max_steps):
        if policy == "lex":
            # only the first move is needed, so stop generating there
            move = next(_moves(g, params), None)
        else:
            moves = improving_moves(g, params)
            move = None
            if moves:
                move = max(moves, key=lambda m: m.gain) if policy == "steepest" else rng.choice(moves)
        if move is None:
            return DynamicsResult(tuple(trajectory), g, True)
        trajectory.append(move)
        g = _apply(g, move)
    return DynamicsResult(tuple(trajectory), g, next(_moves(g, params), None) is None)
