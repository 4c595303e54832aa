"""Exact 1-planarity testing by branch-and-bound over crossing matchings.

A graph is 1-planar iff some matching on its edge set, pairing only
non-adjacent edges (adjacent crossings can always be rerouted away),
has a planar planarization.  The search decides edges in a fixed order
(uncrossed, or paired with a later non-adjacent undecided edge) and
prunes with:

  * the 1-planar edge bound m <= 4n-8,
  * the crossing lower bound m - (3n-6) against the pairs still possible,
  * planarity of the committed part (decided-uncrossed edges plus the
    planarizations of chosen pairs) -- a topological minor of every
    completion's planarization, so its non-planarity is conclusive.

Verdicts are exact; exceeding the budget yields Timeout, never a guess.
OnePlanar verdicts carry a drawing that passes validate_drawing.
"""

from __future__ import annotations

import dataclasses
import time
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .drawing import HostEdge, OnePlaneDrawing, dummy_id
from .model import crossing_lower_bound, norm_edge


@dataclasses.dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 50_000_000
    wall_clock: float = 900.0  # seconds

    def __post_init__(self):
        if self.max_nodes <= 0 or self.wall_clock <= 0:
            raise ValueError("budget fields must be positive")


@dataclasses.dataclass(frozen=True)
class OnePlanar:
    drawing: OnePlaneDrawing
    nodes_explored: int = 0


@dataclasses.dataclass(frozen=True)
class NotOnePlanar:
    reason: str = "exhaustive search"
    nodes_explored: int = 0


@dataclasses.dataclass(frozen=True)
class Timeout:
    nodes_explored: int = 0


class _Stop(Exception):
    pass


def planarization_graph(n: int, edges: Sequence[Tuple[int, int]],
                        pairs: Sequence[Tuple[int, int]]) -> nx.Graph:
    """Planarization with crossing pair j contracted to dummy -(j+1)."""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    crossed = set()
    for j, (a, b) in enumerate(pairs):
        d = dummy_id(j)
        for eid in (a, b):
            u, v = edges[eid]
            g.add_edge(u, d)
            g.add_edge(d, v)
            crossed.add(eid)
    for eid, (u, v) in enumerate(edges):
        if eid not in crossed:
            g.add_edge(u, v)
    return g


def drawing_from_pairs(n: int, edges: Sequence[Tuple[int, int]],
                       pairs: Sequence[Tuple[int, int]],
                       labels: Optional[Sequence[object]] = None
                       ) -> Optional[OnePlaneDrawing]:
    """Build a validator-ready drawing for a planar planarization.

    An embedding may show a chosen pair touching at its dummy instead of
    crossing (same-edge sub-edges adjacent); such pairs are simply not
    crossings and get dropped, which only makes the planarization easier.
    Returns None if the planarization is not planar.
    """
    pairs = list(pairs)
    if labels is None:
        labels = [0] * len(edges)
    while True:
        g = planarization_graph(n, edges, pairs)
        ok, emb = nx.check_planarity(g)
        if not ok:
            return None
        rot_nbrs = emb.get_data()
        touching = []
        for j, (a, b) in enumerate(pairs):
            d = dummy_id(j)
            nbr_edge = {}
            for eid in (a, b):
                u, v = edges[eid]
                nbr_edge[u] = eid
                nbr_edge[v] = eid
            ring = [nbr_edge[w] for w in rot_nbrs[d]]
            if ring[0] == ring[1] or ring[1] == ring[2]:
                touching.append(j)
        if not touching:
            break
        pairs = [p for j, p in enumerate(pairs) if j not in set(touching)]

    host = tuple(HostEdge(i, u, v, labels[i]) for i, (u, v) in enumerate(edges))
    xof = {}
    for j, (a, b) in enumerate(pairs):
        xof[a] = j
        xof[b] = j
    # planarization edge (x, y) -> sub-edge key
    sub_of: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for e in host:
        if e.eid in xof:
            d = dummy_id(xof[e.eid])
            sub_of[(e.u, d)] = (e.eid, 0)
            sub_of[(d, e.u)] = (e.eid, 0)
            sub_of[(e.v, d)] = (e.eid, 1)
            sub_of[(d, e.v)] = (e.eid, 1)
        else:
            sub_of[(e.u, e.v)] = (e.eid, 0)
            sub_of[(e.v, e.u)] = (e.eid, 0)
    rotation = {v: tuple(sub_of[(v, w)] for w in nbrs)
                for v, nbrs in rot_nbrs.items()}
    for v in range(n):
        rotation.setdefault(v, ())
    return OnePlaneDrawing(n=n, host_edges=host,
                           crossings=tuple(tuple(sorted(p)) for p in pairs),
                           rotation=rotation)


def drawing_from_pairs_multi(n: int, edges: Sequence[Tuple[int, int]],
                             pairs: Sequence[Tuple[int, int]],
                             labels: Optional[Sequence[object]] = None
                             ) -> Optional[OnePlaneDrawing]:
    """Like drawing_from_pairs, but tolerates parallel host edges.

    Every planarization segment is subdivided by a private midpoint
    vertex before the planarity check (so the planarization is always a
    simple graph), and midpoints are contracted away when the rotation
    system is read back.  Needed for intermediate drawings that carry
    parallel edge pairs.
    """
    pairs = list(pairs)
    if labels is None:
        labels = [0] * len(edges)
    while True:
        xof: Dict[int, int] = {}
        for j, (a, b) in enumerate(pairs):
            xof[a] = j
            xof[b] = j
        segs: List[Tuple[Tuple[int, int], Tuple[int, int]]] = []
        for eid, (u, v) in enumerate(edges):
            if eid in xof:
                d = dummy_id(xof[eid])
                segs.append(((u, d), (eid, 0)))
                segs.append(((d, v), (eid, 1)))
            else:
                segs.append(((u, v), (eid, 0)))
        g = nx.Graph()
        g.add_nodes_from(range(n))
        key_of_mid = {}
        for t, ((x, y), key) in enumerate(segs):
            mid = ("m", t)
            key_of_mid[mid] = key
            g.add_edge(x, mid)
            g.add_edge(mid, y)
        ok, emb = nx.check_planarity(g)
        if not ok:
            return None
        rot_nbrs = emb.get_data()
        touching = []
        for j in range(len(pairs)):
            d = dummy_id(j)
            ring = [key_of_mid[w][0] for w in rot_nbrs[d]]
            if ring[0] == ring[1] or ring[1] == ring[2]:
                touching.append(j)
        if not touching:
            break
        pairs = [p for j, p in enumerate(pairs) if j not in set(touching)]

    host = tuple(HostEdge(i, u, v, labels[i]) for i, (u, v) in enumerate(edges))
    rotation = {}
    for v, nbrs in rot_nbrs.items():
        if isinstance(v, tuple):
            continue
        rotation[v] = tuple(key_of_mid[w] for w in nbrs)
    for v in range(n):
        rotation.setdefault(v, ())
    return OnePlaneDrawing(n=n, host_edges=host,
                           crossings=tuple(tuple(sorted(p)) for p in pairs),
                           rotation=rotation)


def one_planar_test(n: int, edges: Sequence[Tuple[int, int]],
                    budget: SearchBudget = SearchBudget()):
    edges = sorted(norm_edge(u, v) for u, v in edges)
    m = len(edges)
    if n >= 3 and m > 4 * n - 8:
        return NotOnePlanar(f"{m} edges exceed 4n-8 = {4 * n - 8}", 0)

    dr = drawing_from_pairs(n, edges, [])
    if dr is not None:
        return OnePlanar(dr, 0)

    need = crossing_lower_bound(m, n)
    adjacent = [[False] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if set(edges[i]) & set(edges[j]):
                adjacent[i][j] = adjacent[j][i] = True

    deadline = time.monotonic() + budget.wall_clock
    state = {"nodes": 0}

    def committed_planar(pairs: List[Tuple[int, int]], decided_uncrossed: List[int]) -> bool:
        g = planarization_graph(n, edges, pairs)
        # remove undecided edges: keep only committed structure
        keep = set(decided_uncrossed)
        paired = {e for p in pairs for e in p}
        h = nx.Graph()
        h.add_nodes_from(g.nodes)
        for j, (a, b) in enumerate(pairs):
            d = dummy_id(j)
            for eid in (a, b):
                u, v = edges[eid]
                h.add_edge(u, d)
                h.add_edge(d, v)
        for eid in keep:
            h.add_edge(*edges[eid])
        return nx.check_planarity(h, counterexample=False)[0]

    found: List[List[Tuple[int, int]]] = []

    def rec(i: int, pairs: List[Tuple[int, int]], uncrossed: List[int],
            undecided_left: int):
        state["nodes"] += 1
        if state["nodes"] % 2048 == 0 and time.monotonic() > deadline:
            raise _Stop("time")
        if state["nodes"] > budget.max_nodes:
            raise _Stop("nodes")
        if len(pairs) + undecided_left // 2 < need:
            return
        if i == m:
            dr = drawing_from_pairs(n, edges, pairs)
            if dr is not None:
                found.append(pairs[:])
                raise _Stop("found")
            return
        decided = {e for p in pairs for e in p} | set(uncrossed)
        if i in decided:
            rec(i + 1, pairs, uncrossed, undecided_left)
            return
        # branch: pair i with each later undecided non-adjacent edge
        for j in range(i + 1, m):
            if j in decided or adjacent[i][j]:
                continue
            pairs.append((i, j))
            if committed_planar(pairs, uncrossed):
                rec(i + 1, pairs, uncrossed, undecided_left - 2)
            pairs.pop()
        # branch: commit i uncrossed
        uncrossed.append(i)
        if committed_planar(pairs, uncrossed):
            rec(i + 1, pairs, uncrossed, undecided_left - 1)
        uncrossed.pop()

    try:
        rec(0, [], [], m)
    except _Stop as stop:
        if stop.args[0] == "found":
            dr = drawing_from_pairs(n, edges, found[0])
            return OnePlanar(dr, state["nodes"])
        return Timeout(state["nodes"])
    return NotOnePlanar("exhaustive search", state["nodes"])
