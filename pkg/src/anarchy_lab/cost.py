"""Building, disconnection, player and social cost; optima.

Costs are exact: :class:`fractions.Fraction` for finite values and the
singleton :data:`INF` for the cost of a disconnected graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from . import fixtures
from .adversary import AdversaryKind, LinkDistribution, distribution
from .bridges import relevance_table, separations
from .game import GameParams, Graph, Rule, StrategyProfile, build_graph


class _Infinity:
    """Absorbing infinity, larger than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "Infinity"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("anarchy_lab.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("Infinity - Infinity is undefined")
        return self

    def __rsub__(self, other):
        raise ArithmeticError("cannot subtract Infinity from a finite cost")


INF = _Infinity()
ExtendedRational = Union[Fraction, _Infinity]


def is_finite(x) -> bool:
    return x is not INF


def format_value(x) -> str:
    """Exact string form: ``"7/4"``, ``"3"`` or ``"Infinity"``."""
    if x is INF:
        return "Infinity"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def indirect_cost(g: Graph, v: int, dist: LinkDistribution) -> ExtendedRational:
    if not g.is_connected:
        return INF
    total = Fraction(0)
    for e, row in relevance_table(g).items():
        total += row[v - 1] * dist[e]
    return total


@lru_cache(maxsize=1 << 17)
def indirect_costs(g: Graph, adversary: AdversaryKind) -> tuple:
    """Disconnection cost of every player, index ``v - 1``."""
    if not g.is_connected:
        return (INF,) * g.n
    dist = distribution(g, adversary)
    totals = [Fraction(0)] * g.n
    for e, row in relevance_table(g).items():
        p = dist[e]
        if p:
            for i, r in enumerate(row):
                totals[i] += r * p
    return tuple(totals)


def player_cost(s: StrategyProfile, v: int, params: GameParams) -> ExtendedRational:
    g = build_graph(s, params.rule)
    return s.request_count(v) * params.alpha + indirect_costs(g, params.adversary)[v - 1]


def social_cost(s: StrategyProfile, params: GameParams) -> ExtendedRational:
    g = build_graph(s, params.rule)
    indirect = indirect_costs(g, params.adversary)
    if not g.is_connected:
        return INF
    return sum(s.request_count(v) for v in g.vertices) * params.alpha + sum(indirect)


def graph_social_cost(g: Graph, params: GameParams) -> ExtendedRational:
    """Social cost of an essential profile building ``g``, in closed form.

    ``k*m*alpha + sum(sep(e) * Pr[e])`` with ``k = 2`` under BLF and 1 under ULF.
    """
    if not g.is_connected:
        return INF
    per_link = 2 if params.rule is Rule.BLF else 1
    dist = distribution(g, params.adversary)
    expected = sum((sep * dist[e] for e, sep in separations(g).items()), Fraction(0))
    return per_link * g.m * params.alpha + expected


@dataclass(frozen=True)
class CostReport:
    building: tuple
    indirect: tuple
    total: tuple
    social: ExtendedRational
    m: int

    def as_dict(self) -> dict:
        return {
            "m": self.m,
            "social": format_value(self.social),
            "players": [
                {
                    "player": v,
                    "building": format_value(b),
                    "indirect": format_value(i),
                    "total": format_value(t),
                }
                for v, (b, i, t) in enumerate(zip(self.building, self.indirect, self.total), 1)
            ],
        }


def cost_report(s: StrategyProfile, params: GameParams) -> CostReport:
    g = build_graph(s, params.rule)
    indirect = indirect_costs(g, params.adversary)
    building = tuple(s.request_count(v) * params.alpha for v in g.vertices)
    total = tuple(b + i for b, i in zip(building, indirect))
    social = INF if not g.is_connected else sum(total)
    return CostReport(building, indirect, total, social, g.m)


def optimum(n: int, alpha, rule: Rule = Rule.BLF):
    """Optimal social cost and a witness graph (cycle or star).

    The cycle wins for ``alpha <= n - 1`` (ties go to the cycle).  Under ULF
    every link is paid once, so both values halve their building part.
    """
    alpha = Fraction(alpha)
    if n < 3 or alpha <= 0:
        raise ValueError(f"need n >= 3 and alpha > 0, got n={n}, alpha={alpha}")
    per_link = 2 if rule is Rule.BLF else 1
    cycle_cost = per_link * n * alpha
    star_cost = per_link * (n - 1) * alpha + 2 * (n - 1)
    if cycle_cost <= star_cost:
        return cycle_cost, fixtures.cycle(n)
    return star_cost, fixtures.star(n)


def opt_lower_bound(n: int, alpha) -> Fraction:
    """``min(2 n alpha, 2 (n-1)(alpha+1))``; never exceeds the optimum."""
    alpha = Fraction(alpha)
    return min(2 * n * alpha, 2 * (n - 1) * (alpha + 1))
