"""Guest graphs, caterpillar structure, and feasibility screening.

A *guest* is one of the n-vertex graphs to be packed (path, cycle,
caterpillar, matching).  A *host* is the union graph the packers build.
Everything here is plain combinatorics on vertex ids 0..n-1; drawings
live in :mod:`onepack.drawing`.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

Edge = Tuple[int, int]  # always stored with u < v

KINDS = ("path", "cycle", "caterpillar", "matching", "tree", "general")


def norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


@dataclasses.dataclass(frozen=True)
class GuestGraph:
    n: int
    edges: Tuple[Edge, ...]
    kind: str = "general"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"vertex out of range in edge ({u},{v})")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if (u, v) != norm_edge(u, v):
                raise ValueError(f"edge ({u},{v}) not normalized (u < v required)")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
        if self.kind != "general" and not self._kind_consistent():
            raise ValueError(f"edge set is not a {self.kind}")

    @staticmethod
    def from_edges(n: int, edges, kind: str = "general") -> "GuestGraph":
        return GuestGraph(n, tuple(sorted(norm_edge(u, v) for u, v in edges)), kind)

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> Dict[int, List[int]]:
        adj: Dict[int, List[int]] = {v: [] for v in range(self.n)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def _kind_consistent(self) -> bool:
        deg = self.degrees()
        m = len(self.edges)
        if self.kind == "path":
            return (m == self.n - 1 and self.is_connected()
                    and max(deg, default=0) <= 2)
        if self.kind == "cycle":
            return m == self.n and self.is_connected() and all(d == 2 for d in deg)
        if self.kind == "matching":
            return all(d == 1 for d in deg) and self.n % 2 == 0
        if self.kind == "tree":
            return m == self.n - 1 and self.is_connected()
        if self.kind == "caterpillar":
            return isinstance(classify_tree(self), CaterpillarDecomposition)
        return True

    def path_order(self) -> List[int]:
        """Vertex sequence when this guest is a path."""
        adj = self.adjacency()
        deg = self.degrees()
        if self.n == 1:
            return [0]
        ends = [v for v in range(self.n) if deg[v] == 1]
        if len(ends) != 2 or max(deg) > 2 or len(self.edges) != self.n - 1:
            raise ValueError("not a path")
        order = [min(ends)]
        prev = None
        while len(order) < self.n:
            nxts = [w for w in adj[order[-1]] if w != prev]
            if len(nxts) != 1:
                raise ValueError("not a path")
            prev = order[-1]
            order.append(nxts[0])
        return order


@dataclasses.dataclass(frozen=True)
class CaterpillarDecomposition:
    """Spine/backbone structure of a caterpillar.

    spine: the path left after removing every leaf (may be a single vertex).
    backbone: spine extended by one adjacent leaf at each end; n' = len(backbone).
    leaves[s]: non-backbone leaves hanging off spine vertex s.
    leg_counts[s]: number of leaves at s counted in the caterpillar itself
    (backbone-end leaves included), i.e. deg(s) minus its spine neighbors.
    """
    n: int
    spine: Tuple[int, ...]
    backbone: Tuple[int, ...]
    leaves: Tuple[Tuple[int, Tuple[int, ...]], ...]  # (spine vertex, leaf list)
    leg_counts: Tuple[Tuple[int, int], ...]

    def leaves_map(self) -> Dict[int, Tuple[int, ...]]:
        return dict(self.leaves)

    def leg_map(self) -> Dict[int, int]:
        return dict(self.leg_counts)

    @property
    def n_prime(self) -> int:
        return len(self.backbone)


@dataclasses.dataclass(frozen=True)
class Star:
    center: int
    n: int


@dataclasses.dataclass(frozen=True)
class OtherTree:
    reason: str


@dataclasses.dataclass(frozen=True)
class NotTree:
    reason: str


def classify_tree(g: GuestGraph):
    """Classify g as Path / Caterpillar / Star / OtherTree / NotTree.

    Paths and stars are caterpillars too, so both come back as a
    CaterpillarDecomposition; Star is returned only for the degenerate
    single-spine-vertex case (its backbone is not well defined).
    A path is reported as a decomposition whose spine degrees are all 2.
    """
    if g.n < 2:
        return NotTree("fewer than 2 vertices")
    if len(g.edges) != g.n - 1:
        return NotTree("edge count != n-1")
    if not g.is_connected():
        return NotTree("disconnected")
    deg = g.degrees()
    adj = g.adjacency()

    non_leaves = [v for v in range(g.n) if deg[v] >= 2]
    if not non_leaves:
        # single edge: spine is empty after leaf removal; treat as 2-path
        return _path_decomposition(g, [0, g.edges[0][1]] if g.n == 2 else [])
    # the spine must induce a path
    spine_set = set(non_leaves)
    spine_deg = {v: sum(1 for w in adj[v] if w in spine_set) for v in non_leaves}
    if any(d > 2 for d in spine_deg.values()):
        return OtherTree("leaf removal does not yield a path")
    ends = [v for v in non_leaves if spine_deg[v] <= 1]
    if len(non_leaves) == 1:
        spine = [non_leaves[0]]
    else:
        if len(ends) != 2 or any(d == 0 for d in spine_deg.values()):
            return OtherTree("leaf removal does not yield a path")
        spine = [min(ends)]
        prev = None
        while True:
            cur = spine[-1]
            nxts = [w for w in adj[cur] if w in spine_set and w != prev]
            if not nxts:
                break
            prev = cur
            spine.append(nxts[0])
        if len(spine) != len(non_leaves):
            return OtherTree("leaf removal does not yield a path")

    if len(spine) == 1 and deg[spine[0]] == g.n - 1 and g.n >= 4:
        return Star(center=spine[0], n=g.n)

    return _decompose(g, spine)


def _path_decomposition(g: GuestGraph, order: Sequence[int]):
    order = list(order) if order else g.path_order()
    spine = tuple(order[1:-1])
    leaves = tuple((s, ()) for s in spine)
    legs = []
    for i, s in enumerate(spine):
        c = 0
        if i == 0:
            c += 1
        if i == len(spine) - 1:
            c += 1
        legs.append((s, c))
    return CaterpillarDecomposition(
        n=g.n, spine=spine, backbone=tuple(order),
        leaves=leaves, leg_counts=tuple(legs))


def _decompose(g: GuestGraph, spine: List[int]):
    deg = g.degrees()
    if max(deg) <= 2:
        return _path_decomposition(g, [])
    adj = g.adjacency()
    spine_set = set(spine)
    leaf_map = {s: sorted(w for w in adj[s] if w not in spine_set) for s in spine}
    # backbone = spine plus one leaf at each end
    first, last = spine[0], spine[-1]
    if not leaf_map[first] or not leaf_map[last]:
        # can only happen for a single-vertex spine with <2 leaves; not a tree case here
        return OtherTree("spine end without a leaf")
    if len(spine) == 1:
        if deg[first] < 2:
            return OtherTree("degenerate spine")
        b0, b1 = leaf_map[first][0], leaf_map[first][1]
        backbone = (b0, first, b1)
        leaves = ((first, tuple(leaf_map[first][2:])),)
    else:
        b0 = leaf_map[first][0]
        b1 = leaf_map[last][0]
        backbone = (b0,) + tuple(spine) + (b1,)
        leaves = []
        for s in spine:
            ls = list(leaf_map[s])
            if s == first:
                ls.remove(b0)
            if s == last:
                ls.remove(b1)
            leaves.append((s, tuple(ls)))
        leaves = tuple(leaves)
    legs = tuple((s, len(leaf_map[s])) for s in spine)
    return CaterpillarDecomposition(
        n=g.n, spine=tuple(spine), backbone=backbone,
        leaves=leaves, leg_counts=legs)


def is_h_legged(d: CaterpillarDecomposition, h: int) -> bool:
    """True iff every spine vertex has caterpillar degree 2 or >= h+2."""
    if h < 1:
        raise ValueError("h must be positive")
    spine_set = set(d.spine)
    leg = d.leg_map()
    for i, s in enumerate(d.spine):
        nbrs_on_spine = 0
        if i > 0:
            nbrs_on_spine += 1
        if i + 1 < len(d.spine):
            nbrs_on_spine += 1
        degree = nbrs_on_spine + leg[s]
        if degree != 2 and degree < h + 2:
            return False
    return True


@dataclasses.dataclass(frozen=True)
class Pass:
    pass


@dataclasses.dataclass(frozen=True)
class Fail:
    reason: str
    code: str


class MixedVertexCounts(ValueError):
    pass


def feasibility_screen(instance: Sequence[GuestGraph]):
    """Necessary conditions for a packing to exist (not sufficient)."""
    if not instance:
        return Fail("empty instance", "empty")
    ns = {g.n for g in instance}
    if len(ns) > 1:
        raise MixedVertexCounts(f"guests disagree on n: {sorted(ns)}")
    n = ns.pop()
    connected = [g for g in instance if g.kind != "matching"]
    matchings = [g for g in instance if g.kind == "matching"]
    k = len(connected)
    if k > 3:
        return Fail(f"{k} connected guests; at most 3 can be packed", "too-many-guests")
    if k > 0 and n < 2 * k:
        return Fail(f"n={n} < 2k={2*k}", "n-too-small")
    if k > 0:
        for g in connected:
            dmax = max(g.degrees())
            if dmax > n - k:
                return Fail(f"a guest has degree {dmax} > n-k={n-k}", "degree-too-high")
    m_total = sum(len(g.edges) for g in instance)
    if m_total > 4 * n - 8:
        return Fail(f"{m_total} edges exceed 4n-8={4*n-8}", "edge-bound")
    if matchings and k == 3:
        # three paths plus a perfect matching
        if n % 2 == 1:
            return Fail("quadruple needs even n", "quad-parity")
        if n <= 10:
            return Fail(f"quadruple with n={n} <= 10 has no packing", "quad-small-n")
    return Pass()


def crossing_lower_bound(m: int, n: int) -> int:
    """Any drawing of an m-edge graph needs >= m-(3n-6) crossings."""
    return max(0, m - (3 * n - 6))


# --- convenience constructors used all over the tests -----------------------

def path_graph(n: int) -> GuestGraph:
    return GuestGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)], "path")


def cycle_graph(n: int) -> GuestGraph:
    return GuestGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], "cycle")


def matching_graph(n: int) -> GuestGraph:
    if n % 2:
        raise ValueError(f"perfect matching needs even n, got {n}")
    return GuestGraph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)], "matching")


def relabeled(g: GuestGraph, perm: Sequence[int], kind: Optional[str] = None) -> GuestGraph:
    """Apply vertex relabeling v -> perm[v]."""
    return GuestGraph.from_edges(
        g.n, [(perm[u], perm[v]) for u, v in g.edges], kind or g.kind)
