"""Probability measures over the links of a built graph."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .bridges import separations
from .game import Graph, link


class InvalidDistributionError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleMinded:
    """Destroys a link chosen uniformly at random."""

    name = "simple"


@dataclass(frozen=True)
class Smart:
    """Destroys a link chosen uniformly among those of maximum separation."""

    name = "smart"


@dataclass(frozen=True)
class Custom:
    """Explicit per-link probabilities for one fixed graph."""

    table: tuple
    name = "custom"

    @classmethod
    def from_mapping(cls, mapping: Mapping) -> "Custom":
        items = sorted((link(*e), Fraction(p)) for e, p in mapping.items())
        return cls(tuple(items))

    def as_dict(self) -> dict:
        return dict(self.table)


AdversaryKind = Union[SimpleMinded, Smart, Custom]

SIMPLE_MINDED = SimpleMinded()
SMART = Smart()


def parse_adversary(name: str) -> AdversaryKind:
    key = name.strip().lower().replace("_", "-")
    if key in ("simple", "simple-minded", "uniform"):
        return SIMPLE_MINDED
    if key == "smart":
        return SMART
    raise ValueError(f"unknown adversary {name!r} (expected 'simple' or 'smart')")


def parse_link_key(key: str):
    try:
        v, w = (int(x) for x in key.split("-"))
    except ValueError:
        raise InvalidDistributionError(f"bad link key {key!r}, expected 'v-w'") from None
    return link(v, w)


def custom_from_json(text: str) -> Custom:
    """Read a ``{"v-w": "p/q", ...}`` document."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDistributionError(f"line {exc.lineno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise InvalidDistributionError("custom adversary table must be a JSON object")
    table = {}
    for key, value in raw.items():
        try:
            p = Fraction(str(value))
        except ValueError:
            raise InvalidDistributionError(f"{key}: {value!r} is not a rational") from None
        table[parse_link_key(key)] = p
    return Custom.from_mapping(table)


@dataclass(frozen=True, eq=False)
class LinkDistribution:
    probs: dict

    def __getitem__(self, e) -> Fraction:
        return self.probs.get(link(*e), Fraction(0))

    @property
    def support(self) -> frozenset:
        return frozenset(e for e, p in self.probs.items() if p)

    def items(self):
        return sorted(self.probs.items())


def critical_links(g: Graph):
    """Links of maximum separation and that maximum."""
    if not g.links:
        raise InvalidDistributionError("graph has no links")
    seps = separations(g)
    top = max(seps.values())
    return frozenset(e for e, s in seps.items() if s == top), top


def distribution(g: Graph, kind: AdversaryKind) -> LinkDistribution:
    if not g.links:
        raise InvalidDistributionError("an adversary needs at least one link")
    if isinstance(kind, SimpleMinded):
        p = Fraction(1, g.m)
        return LinkDistribution({e: p for e in g.links})
    if isinstance(kind, Smart):
        top, _ = critical_links(g)
        p = Fraction(1, len(top))
        return LinkDistribution({e: (p if e in top else Fraction(0)) for e in g.links})
    if isinstance(kind, Custom):
        probs = {e: Fraction(0) for e in g.links}
        for e, p in kind.table:
            if e not in g.links:
                raise InvalidDistributionError(f"{e[0]}-{e[1]} is not a link of the graph")
            if not 0 <= p <= 1:
                raise InvalidDistributionError(f"probability {p} of {e[0]}-{e[1]} is outside [0, 1]")
            probs[e] = p
        total = sum(probs.values())
        if total != 1:
            raise InvalidDistributionError(f"probabilities sum to {total}, not 1")
        return LinkDistribution(probs)
    raise TypeError(f"unknown adversary {kind!r}")
