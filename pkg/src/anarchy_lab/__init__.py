"""Bilateral network formation against a link-destroying adversary."""

from .adversary import SIMPLE_MINDED, SMART, Custom, LinkDistribution, critical_links, distribution
from .bridges import (
    BridgeTree,
    DisconnectedGraphError,
    TreePath,
    bridge_tree,
    bridges,
    path_relevance,
    relevance,
    relevance_naive,
    relevance_sum,
    separation,
    total_separation,
    tree_diameter,
)
from .cost import INF, CostReport, cost_report, indirect_cost, opt_lower_bound, optimum, player_cost, social_cost
from .dynamics import pairwise_dynamics
from .equilibrium import (
    Concept,
    DeviationWitness,
    Verdict,
    convexity_holds,
    is_max_ne_ulf,
    is_nash_ulf,
    is_pairwise_stable,
    is_pne,
)
from .fixtures import FixtureSpec, bound_constants, make_fixture
from .game import GameParams, Graph, Rule, StrategyProfile, bilateralize, build_graph, edit_profile, is_essential, link
from .search import PoAReport, enumerate_equilibria, price_of_anarchy, witness_ratio

__version__ = "0.1.0"

__all__ = [
    "BridgeTree",
    "Concept",
    "CostReport",
    "Custom",
    "DeviationWitness",
    "DisconnectedGraphError",
    "FixtureSpec",
    "GameParams",
    "Graph",
    "INF",
    "LinkDistribution",
    "PoAReport",
    "Rule",
    "SIMPLE_MINDED",
    "SMART",
    "StrategyProfile",
    "TreePath",
    "Verdict",
    "bilateralize",
    "bound_constants",
    "bridge_tree",
    "bridges",
    "build_graph",
    "convexity_holds",
    "cost_report",
    "critical_links",
    "distribution",
    "edit_profile",
    "enumerate_equilibria",
    "indirect_cost",
    "is_essential",
    "is_max_ne_ulf",
    "is_nash_ulf",
    "is_pairwise_stable",
    "is_pne",
    "link",
    "make_fixture",
    "opt_lower_bound",
    "optimum",
    "pairwise_dynamics",
    "path_relevance",
    "player_cost",
    "price_of_anarchy",
    "relevance",
    "relevance_naive",
    "relevance_sum",
    "separation",
    "social_cost",
    "total_separation",
    "tree_diameter",
    "witness_ratio",
]
