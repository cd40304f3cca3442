"""Named constructions and constants.

Vertex numbering is fixed so that serialised output is stable:

* ``cycle(n)``: links ``i - (i+1)`` and ``n - 1``.
* ``star(n)``: centre 1, leaves ``2..n``.
* ``three_stars(n0)``: hub ``u0 = 1``; then the stars in decreasing size,
  each centre followed by its leaves.  With ``n0 = 5``: ``u1 = 2`` (leaves
  3-6), ``u2 = 7`` (leaves 8-10), ``u3 = 11`` (leaves 12-13).
* ``cycle_with_path(n, l)``: cycle on ``1..n-l``, path
  ``1 - (n-l+1) - ... - n`` hanging off vertex 1.
* ``bridge_tree_example()``: see :data:`EXAMPLE_VERTEX_NAMES`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .game import Graph, StrategyProfile, link


class FixtureError(ValueError):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise FixtureError(msg)


def cycle(n: int) -> Graph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph.from_links(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star(n: int) -> Graph:
    _need(n >= 3, f"star needs n >= 3, got {n}")
    return Graph.from_links(n, [(1, i) for i in range(2, n + 1)])


def directed_cycle_profile(n: int) -> StrategyProfile:
    """ULF cycle where player i pays for the link to i+1 (n pays for n-1)."""
    _need(n >= 3, f"directed cycle needs n >= 3, got {n}")
    return StrategyProfile.from_requests(n, [(i, i % n + 1) for i in range(1, n + 1)])


def star_outward_profile(n: int) -> StrategyProfile:
    """ULF star whose centre 1 pays for every link."""
    _need(n >= 3, f"star needs n >= 3, got {n}")
    return StrategyProfile.from_requests(n, [(1, i) for i in range(2, n + 1)])


def three_stars(n0: int) -> Graph:
    _need(n0 >= 3, f"three_stars needs n0 >= 3, got {n0}")
    links = []
    nxt = 2
    for size in (n0, n0 - 1, n0 - 2):
        centre = nxt
        links.append((1, centre))
        links.extend((centre, centre + j) for j in range(1, size))
        nxt = centre + size
    return Graph.from_links(3 * n0 - 2, links)


def three_stars_hubs(n0: int) -> tuple:
    """``(u0, u1, u2, u3)`` in the numbering of :func:`three_stars`."""
    return 1, 2, n0 + 2, 2 * n0 + 1


def cycle_with_path(n: int, length: int) -> Graph:
    _need(length >= 1, f"path length must be >= 1, got {length}")
    _need(n >= length + 3, f"cycle_with_path needs n >= l + 3, got n={n}, l={length}")
    k = n - length
    links = [(i, i % k + 1) for i in range(1, k + 1)]
    tail = [1] + list(range(k + 1, n + 1))
    links.extend(zip(tail, tail[1:]))
    return Graph.from_links(n, links)


EXAMPLE_VERTEX_NAMES = (
    "a1 a2 a3 a4 b1 b2 b3 b4 b5 b6 b7 b8 c1 d1 d2 e1 e2 e3 f1 f2 f3 f4".split()
)
_C = {name: i for i, name in enumerate(EXAMPLE_VERTEX_NAMES, start=1)}
_EXAMPLE_LINKS = """
a1-a2 a2-a3 a3-a4 a4-a1 a1-b1
b2-b3 b3-b4 b4-b5 b5-b6 b6-b7 b7-b1 b7-b2 b3-b8 b8-b6
b2-c1 d1-d2 b6-e1 e1-e2 e2-e3 e3-e1 a4-d1
b4-f1 f1-f2 f2-f3 f3-f4
""".split()


def bridge_tree_example() -> Graph:
    """The 22-vertex bridge tree illustration (``a1 = 1`` ... ``f4 = 22``)."""
    return Graph.from_links(
        len(EXAMPLE_VERTEX_NAMES),
        [tuple(_C[x] for x in pair.split("-")) for pair in _EXAMPLE_LINKS],
    )


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    params: tuple = ()


_BUILDERS = {
    "cycle": (cycle, 1),
    "star": (star, 1),
    "directed_cycle_profile": (directed_cycle_profile, 1),
    "star_outward_profile": (star_outward_profile, 1),
    "three_stars": (three_stars, 1),
    "cycle_with_path": (cycle_with_path, 2),
    "bridge_tree_example": (bridge_tree_example, 0),
}

FIXTURE_NAMES = tuple(_BUILDERS)


def parse_fixture(text: str) -> FixtureSpec:
    """Parse ``name:p1,p2`` (e.g. ``cycle_with_path:16,4``)."""
    name, _, rest = text.partition(":")
    name = name.strip()
    try:
        params = tuple(int(x) for x in rest.split(",") if x.strip())
    except ValueError:
        raise FixtureError(f"fixture parameters must be integers: {text!r}") from None
    return FixtureSpec(name, params)


def make_fixture(spec: FixtureSpec):
    if spec.name not in _BUILDERS:
        raise FixtureError(
            f"unknown fixture {spec.name!r}; choose from {', '.join(FIXTURE_NAMES)}"
        )
    build, arity = _BUILDERS[spec.name]
    _need(
        len(spec.params) == arity,
        f"{spec.name} takes {arity} parameter(s), got {len(spec.params)}",
    )
    return build(*spec.params)


def bound_constants(n: int):
    """``(c, alpha0(n))`` with ``c = 4`` and ``alpha0 = (1 + 1/(n-1))**2 / 8``."""
    _need(n >= 2, f"alpha0 needs n >= 2, got {n}")
    return 4, Fraction(1, 8) * (1 + Fraction(1, n - 1)) ** 2


def random_connected_graph(n: int, rng: random.Random, density=None) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``density``.

    Without ``density`` a fresh one is drawn per call, skewed towards sparse
    graphs so that bridges stay common.
    """
    order = list(range(1, n + 1))
    rng.shuffle(order)
    links = {link(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    p = 0.6 * rng.random() ** 2 if density is None else density
    for pair in combinations(range(1, n + 1), 2):
        if pair not in links and rng.random() < p:
            links.add(pair)
    return Graph(n, frozenset(links))
