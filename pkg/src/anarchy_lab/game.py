"""Players, strategy profiles, link formation and built graphs.

Players are the integers ``1..n``.  A link is stored as an ordered pair
``(v, w)`` with ``v < w``; use :func:`link` to normalise.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Tuple

Link = Tuple[int, int]


def link(v: int, w: int) -> Link:
    """Return the normalised link ``{v, w}``."""
    if v == w:
        raise ValueError(f"a link needs two distinct endpoints, got {v}-{w}")
    return (v, w) if v < w else (w, v)


class Rule(enum.Enum):
    ULF = "ulf"
    BLF = "blf"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n``."""

    n: int
    links: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        normalised = frozenset(link(v, w) for v, w in self.links)
        for v, w in normalised:
            if not (1 <= v <= self.n and 1 <= w <= self.n):
                raise ValueError(f"link {v}-{w} is outside 1..{self.n}")
        object.__setattr__(self, "links", normalised)

    @classmethod
    def from_links(cls, n: int, links: Iterable[Iterable[int]]) -> "Graph":
        return cls(n, frozenset(link(*e) for e in links))

    @property
    def m(self) -> int:
        return len(self.links)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: set() for v in self.vertices}
        for v, w in self.links:
            adj[v].add(w)
            adj[w].add(v)
        return {v: frozenset(nb) for v, nb in adj.items()}

    def sorted_links(self) -> list:
        return sorted(self.links)

    def has_link(self, v: int, w: int) -> bool:
        return link(v, w) in self.links

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def absent_links(self) -> Iterator[Link]:
        for v in range(1, self.n + 1):
            for w in range(v + 1, self.n + 1):
                if (v, w) not in self.links:
                    yield (v, w)

    def add(self, *new: Link) -> "Graph":
        return Graph(self.n, self.links.union(link(*e) for e in new))

    def remove(self, *old: Link) -> "Graph":
        return Graph(self.n, self.links.difference(link(*e) for e in old))

    def reachable(self, source: int, skip: Link | None = None) -> set:
        """Vertices reachable from ``source``, optionally ignoring one link."""
        adj = self.adjacency
        seen = {source}
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in seen or (skip is not None and link(x, y) == skip):
                    continue
                seen.add(y)
                queue.append(y)
        return seen

    @cached_property
    def is_connected(self) -> bool:
        return len(self.reachable(1)) == self.n

    def __repr__(self):
        return f"Graph(n={self.n}, links={self.sorted_links()})"


@dataclass(frozen=True)
class StrategyProfile:
    """Binary request matrix; ``requests[v-1][w-1] == 1`` means v requests {v, w}.

    Diagonal entries are forced to 0.
    """

    n: int
    requests: tuple

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"a game needs n >= 3 players, got {self.n}")
        rows = tuple(tuple(int(x) for x in row) for row in self.requests)
        if len(rows) != self.n or any(len(row) != self.n for row in rows):
            raise ValueError(f"request matrix must be {self.n}x{self.n}")
        for row in rows:
            if any(x not in (0, 1) for x in row):
                raise ValueError("request entries must be 0 or 1")
        rows = tuple(
            tuple(0 if i == j else x for j, x in enumerate(row))
            for i, row in enumerate(rows)
        )
        object.__setattr__(self, "requests", rows)

    @classmethod
    def zeros(cls, n: int) -> "StrategyProfile":
        return cls(n, tuple((0,) * n for _ in range(n)))

    @classmethod
    def from_requests(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "StrategyProfile":
        """Profile where each ``(v, w)`` in ``pairs`` is a request by v to w."""
        mat = [[0] * n for _ in range(n)]
        for v, w in pairs:
            if v == w:
                raise ValueError(f"player {v} cannot request a link to itself")
            mat[v - 1][w - 1] = 1
        return cls(n, tuple(map(tuple, mat)))

    @classmethod
    def canonical(cls, g: Graph) -> "StrategyProfile":
        """The unique essential BLF profile building ``g``."""
        return cls.from_requests(g.n, [p for v, w in g.links for p in ((v, w), (w, v))])

    def __getitem__(self, vw: Tuple[int, int]) -> int:
        v, w = vw
        return self.requests[v - 1][w - 1]

    def row(self, v: int) -> tuple:
        return self.requests[v - 1]

    def requests_of(self, v: int) -> list:
        return [w for w, x in enumerate(self.requests[v - 1], start=1) if x]

    def request_count(self, v: int) -> int:
        return sum(self.requests[v - 1])

    def request_pairs(self) -> list:
        return [(v, w) for v in range(1, self.n + 1) for w in self.requests_of(v)]

    def with_row(self, v: int, targets: Iterable[int]) -> "StrategyProfile":
        row = [0] * self.n
        for w in targets:
            row[w - 1] = 1
        rows = list(self.requests)
        rows[v - 1] = tuple(row)
        return StrategyProfile(self.n, tuple(rows))


@dataclass(frozen=True)
class GameParams:
    n: int
    alpha: Fraction
    rule: Rule = Rule.BLF
    adversary: object = None

    def __post_init__(self):
        from .adversary import SIMPLE_MINDED

        alpha = Fraction(self.alpha)
        if alpha <= 0:
            raise ValueError(f"link cost must be positive, got {alpha}")
        if self.n < 3:
            raise ValueError(f"a game needs n >= 3 players, got {self.n}")
        object.__setattr__(self, "alpha", alpha)
        if self.adversary is None:
            object.__setattr__(self, "adversary", SIMPLE_MINDED)


def build_graph(s: StrategyProfile, rule: Rule) -> Graph:
    links = set()
    for v in range(1, s.n + 1):
        for w in range(v + 1, s.n + 1):
            a, b = s[v, w], s[w, v]
            if (a or b) if rule is Rule.ULF else (a and b):
                links.add((v, w))
    return Graph(s.n, frozenset(links))


def is_essential(s: StrategyProfile, rule: Rule) -> bool:
    for v in range(1, s.n + 1):
        for w in range(v + 1, s.n + 1):
            a, b = s[v, w], s[w, v]
            if rule is Rule.ULF and a and b:
                return False
            if rule is Rule.BLF and a != b:
                return False
    return True


def edit_profile(s: StrategyProfile, v: int, w: int, bit: int) -> StrategyProfile:
    """``S+vw`` (bit=1) or ``S-vw`` (bit=0)."""
    if v == w:
        raise ValueError(f"cannot edit the diagonal entry ({v},{v})")
    if bit not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {bit}")
    rows = [list(row) for row in s.requests]
    rows[v - 1][w - 1] = bit
    return StrategyProfile(s.n, tuple(map(tuple, rows)))


def bilateralize(s: StrategyProfile) -> StrategyProfile:
    n = s.n
    return StrategyProfile(
        n,
        tuple(
            tuple(min(1, s[v, w] + s[w, v]) if v != w else 0 for w in range(1, n + 1))
            for v in range(1, n + 1)
        ),
    )
