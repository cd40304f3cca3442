"""Edge-list files, rational parsing and DOT export.

Edge-list format::

    # comments and blank lines are ignored
    n 5
    1 2
    2 3

Vertices are 1-based.  For ULF profiles a line ``v w`` is a request by v
for the link to w, so the same file describes who pays for what.
"""

from __future__ import annotations

from fractions import Fraction

from .cost import format_value
from .game import Graph, StrategyProfile, link


class GraphFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_rational(text: str) -> Fraction:
    """``"5/2"``, ``"3"`` or ``"-1/4"`` as an exact Fraction (no decimals)."""
    s = str(text).strip()
    num, slash, den = s.partition("/")
    try:
        value = Fraction(int(num), int(den)) if slash else Fraction(int(num))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{text!r} is not a rational of the form p/q or an integer") from None
    return value


def _pairs(text: str):
    n = None
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if not seen_header:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphFormatError(lineno, f"expected header 'n <count>', got {line!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphFormatError(lineno, f"vertex count {parts[1]!r} is not an integer") from None
            if n < 1:
                raise GraphFormatError(lineno, f"vertex count must be positive, got {n}")
            seen_header = True
            continue
        if len(parts) != 2:
            raise GraphFormatError(lineno, f"expected 'v w', got {line!r}")
        try:
            v, w = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(lineno, f"vertices must be integers, got {line!r}") from None
        if v == w:
            raise GraphFormatError(lineno, f"self-loop {v}-{w}")
        if not (1 <= v <= n and 1 <= w <= n):
            raise GraphFormatError(lineno, f"vertex out of range 1..{n} in {line!r}")
        yield lineno, v, w
    if not seen_header:
        raise GraphFormatError(1, "missing header 'n <count>'")


def _header(text: str) -> int:
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            return int(line.split()[1])
    raise GraphFormatError(1, "missing header 'n <count>'")


def read_graph(text: str) -> Graph:
    links = set()
    pairs = list(_pairs(text))
    for lineno, v, w in pairs:
        e = link(v, w)
        if e in links:
            raise GraphFormatError(lineno, f"duplicate link {e[0]}-{e[1]}")
        links.add(e)
    return Graph(_header(text), frozenset(links))


def read_profile(text: str) -> StrategyProfile:
    requests = set()
    pairs = list(_pairs(text))
    for lineno, v, w in pairs:
        if (v, w) in requests:
            raise GraphFormatError(lineno, f"duplicate request {v} {w}")
        requests.add((v, w))
    return StrategyProfile.from_requests(_header(text), sorted(requests))


def write_graph(g: Graph) -> str:
    return "".join([f"n {g.n}\n"] + [f"{v} {w}\n" for v, w in g.sorted_links()])


def write_profile(s: StrategyProfile) -> str:
    return "".join([f"n {s.n}\n"] + [f"{v} {w}\n" for v, w in s.request_pairs()])


def to_dot(g: Graph, bridges=frozenset(), critical=frozenset(), owners=None) -> str:
    """Undirected DOT; bridges drawn bold, critical links red."""
    lines = ["graph G {"]
    lines += [f"  {v};" for v in g.vertices]
    for e in g.sorted_links():
        attrs = []
        if e in bridges:
            attrs += ["style=bold", 'label="bridge"']
        if e in critical:
            attrs.append("color=red")
        if owners and e in owners:
            attrs.append(f'taillabel="{owners[e]}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {e[0]} -- {e[1]}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def link_key(e) -> str:
    return f"{e[0]}-{e[1]}"


def rational_map(mapping) -> dict:
    return {link_key(e): format_value(p) for e, p in sorted(mapping.items())}
