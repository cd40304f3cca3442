"""Bridges, bridgeless components and the bridge tree.

All relevance and separation quantities are computed on connected graphs
only; a disconnected input raises :class:`DisconnectedGraphError`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from .game import Graph, Link, link


class DisconnectedGraphError(ValueError):
    """Raised when a bridge quantity is requested for a disconnected graph."""


class NotALinkError(ValueError):
    pass


def _require_connected(g: Graph) -> None:
    if not g.is_connected:
        raise DisconnectedGraphError(
            f"bridge structure is undefined for a disconnected graph ({g!r})"
        )


def _require_link(g: Graph, e) -> Link:
    e = link(*e)
    if e not in g.links:
        raise NotALinkError(f"{e[0]}-{e[1]} is not a link of the graph")
    return e


def _dfs_order(adj, root):
    # yields (vertex, parent, neighbour iterator) frames for an iterative DFS
    return [(root, 0, iter(sorted(adj[root])))]


@lru_cache(maxsize=1 << 16)
def bridge_set(g: Graph) -> frozenset:
    """Bridges of every connected component of ``g`` (no connectivity check)."""
    adj = g.adjacency
    disc: dict = {}
    low: dict = {}
    found = set()
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = _dfs_order(adj, root)
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(sorted(adj[w]))))
                    break
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        found.add(link(p, v))
    return frozenset(found)


def bridges(g: Graph) -> frozenset:
    _require_connected(g)
    return bridge_set(g)


@dataclass(frozen=True, eq=False)
class TreePath:
    nodes: tuple

    @property
    def links(self) -> list:
        return [link(a, b) for a, b in zip(self.nodes, self.nodes[1:])]

    def __len__(self):
        return len(self.nodes) - 1


@dataclass(frozen=True, eq=False)
class BridgeTree:
    """Contraction of a connected graph by its bridgeless components.

    Nodes are identified by the smallest player they contain.
    """

    nodes: tuple
    tree_links: frozenset
    bridge_map: dict
    kappa: dict

    @cached_property
    def _by_id(self) -> dict:
        return {min(c): c for c in self.nodes}

    @property
    def node_ids(self) -> list:
        return sorted(self._by_id)

    def component(self, node: int) -> frozenset:
        return self._by_id[node]

    def weight(self, node: int) -> int:
        return len(self._by_id[node])

    @property
    def weights(self) -> dict:
        return {k: len(c) for k, c in sorted(self._by_id.items())}

    @property
    def n(self) -> int:
        return sum(len(c) for c in self.nodes)

    @cached_property
    def adjacency(self) -> dict:
        adj = {k: set() for k in self._by_id}
        for a, b in self.tree_links:
            adj[a].add(b)
            adj[b].add(a)
        return {k: sorted(v) for k, v in adj.items()}

    @cached_property
    def _rooted(self):
        root = min(self._by_id)
        parent = {root: None}
        depth = {root: 0}
        order = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in parent:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    order.append(y)
                    queue.append(y)
        below = {k: self.weight(k) for k in order}
        for k in reversed(order[1:]):
            below[parent[k]] += below[k]
        # Euler intervals for subtree membership
        tin, tout = {}, {}
        clock = 0
        stack = [(root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                tout[x] = clock
                continue
            tin[x] = clock
            clock += 1
            stack.append((x, True))
            for y in reversed(self.adjacency[x]):
                if parent.get(y) == x:
                    stack.append((y, False))
        return parent, depth, below, tin, tout

    def _in_subtree(self, node: int, top: int) -> bool:
        _, _, _, tin, tout = self._rooted
        return tin[top] <= tin[node] and tout[node] <= tout[top]

    def far_weight(self, tree_link, node: int) -> int:
        """Players on the side of ``tree_link`` away from ``node``."""
        a, b = link(*tree_link)
        if (a, b) not in self.tree_links:
            raise NotALinkError(f"{a}-{b} is not a bridge tree link")
        parent, _, below, _, _ = self._rooted
        child = b if parent.get(b) == a else a
        inside = below[child]
        return self.n - inside if self._in_subtree(node, child) else inside

    def path(self, start: int, end: int) -> TreePath:
        parent, depth, _, _, _ = self._rooted
        up, down = [start], [end]
        a, b = start, end
        while depth[a] > depth[b]:
            a = parent[a]
            up.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            down.append(b)
        while a != b:
            a, b = parent[a], parent[b]
            up.append(a)
            down.append(b)
        return TreePath(tuple(up + down[-2::-1]))

    def validate(self, p: TreePath) -> None:
        if not p.nodes:
            raise ValueError("empty tree path")
        if len(set(p.nodes)) != len(p.nodes):
            raise ValueError(f"tree path {p.nodes} repeats a node")
        for k in p.nodes:
            if k not in self._by_id:
                raise ValueError(f"{k} is not a bridge tree node")
        for a, b in zip(p.nodes, p.nodes[1:]):
            if link(a, b) not in self.tree_links:
                raise ValueError(f"tree path {p.nodes}: {a} and {b} are not adjacent")


def _components_without(g: Graph, removed: frozenset) -> list:
    adj = g.adjacency
    seen: set = set()
    comps = []
    for s in g.vertices:
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in comp and link(x, y) not in removed:
                    comp.add(y)
                    queue.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


@lru_cache(maxsize=1 << 14)
def bridge_tree(g: Graph) -> BridgeTree:
    _require_connected(g)
    found = bridge_set(g)
    comps = sorted(_components_without(g, found), key=min)
    kappa = {v: min(c) for c in comps for v in c}
    bmap = {}
    for v, w in found:
        bmap[link(kappa[v], kappa[w])] = (v, w)
    return BridgeTree(tuple(comps), frozenset(bmap), bmap, kappa)


@lru_cache(maxsize=1 << 16)
def relevance_table(g: Graph) -> dict:
    """Map each bridge to the tuple of its relevances for players 1..n."""
    tree = bridge_tree(g)
    table = {}
    for tl, b in tree.bridge_map.items():
        table[b] = tuple(tree.far_weight(tl, tree.kappa[v]) for v in g.vertices)
    return table


def relevance(g: Graph, e, v: int) -> int:
    e = _require_link(g, e)
    _require_connected(g)
    row = relevance_table(g).get(e)
    return 0 if row is None else row[v - 1]


def relevance_naive(g: Graph, e, v: int) -> int:
    """Delete ``e`` and count the players ``v`` can no longer reach."""
    e = _require_link(g, e)
    _require_connected(g)
    return g.n - len(g.reachable(v, skip=e))


@lru_cache(maxsize=1 << 16)
def relevance_sums(g: Graph) -> tuple:
    _require_connected(g)
    sums = [0] * g.n
    for row in relevance_table(g).values():
        for i, r in enumerate(row):
            sums[i] += r
    return tuple(sums)


def relevance_sum(g: Graph, v: int) -> int:
    return relevance_sums(g)[v - 1]


def separation(g: Graph, e) -> tuple:
    """Return ``(nu, sep)`` for link ``e``."""
    e = _require_link(g, e)
    _require_connected(g)
    row = relevance_table(g).get(e)
    if row is None:
        return 0, 0
    nu = min(row[e[0] - 1], row[e[1] - 1])
    return nu, 2 * nu * (g.n - nu)


@lru_cache(maxsize=1 << 16)
def separations(g: Graph) -> dict:
    """``sep`` for every link of a connected graph."""
    _require_connected(g)
    table = relevance_table(g)
    out = {}
    for e in g.links:
        row = table.get(e)
        if row is None:
            out[e] = 0
        else:
            nu = min(row[e[0] - 1], row[e[1] - 1])
            out[e] = 2 * nu * (g.n - nu)
    return out


def total_separation(g: Graph) -> int:
    return sum(separations(g).values())


def tree_diameter(t: BridgeTree) -> int:
    def farthest(src):
        dist = {src: 0}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            for y in t.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        far = max(dist, key=lambda k: (dist[k], -k))
        return far, dist[far]

    start = min(t.node_ids)
    a, _ = farthest(start)
    _, d = farthest(a)
    return d


def path_relevance(t: BridgeTree, p: TreePath, end: str = "first") -> int:
    """Sum of the relevances of the bridges along ``p`` seen from one end."""
    t.validate(p)
    if end not in ("first", "last"):
        raise ValueError(f"end must be 'first' or 'last', got {end!r}")
    x = p.nodes[0] if end == "first" else p.nodes[-1]
    return sum(t.far_weight(tl, x) for tl in p.links)


def tree_paths(t: BridgeTree):
    """Every path of at least one link, once per unordered endpoint pair."""
    for a, b in combinations(t.node_ids, 2):
        yield t.path(a, b)


@lru_cache(maxsize=1 << 14)
def blocks(g: Graph) -> tuple:
    """Vertex sets of the biconnected components (blocks) of ``g``."""
    adj = g.adjacency
    disc: dict = {}
    low: dict = {}
    found = []
    timer = 0
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = _dfs_order(adj, root)
        edges = []
        while stack:
            v, parent, it = stack[-1]
            for w in it:
                if w == parent:
                    continue
                if w in disc:
                    if disc[w] < disc[v]:
                        edges.append((v, w))
                        low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = timer
                    timer += 1
                    edges.append((v, w))
                    stack.append((w, v, iter(sorted(adj[w]))))
                    break
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        comp = set()
                        while True:
                            a, b = edges.pop()
                            comp.update((a, b))
                            if (a, b) == (p, v):
                                break
                        found.append(frozenset(comp))
    return tuple(found)


def is_chord(g: Graph, e) -> bool:
    """True if some cycle passes through both endpoints of ``e`` without using it."""
    x, y = _require_link(g, e)
    return any(x in b and y in b for b in blocks(g.remove((x, y))))


def is_chord_free(g: Graph) -> bool:
    return not any(is_chord(g, e) for e in g.links)
