"""Exhaustive small-instance packing oracle.

Decides whether the given guests admit a 1-planar packing by complete
enumeration: guest 0 is pinned to the identity mapping (any packing can
be relabeled so it is), later guests are mapped by backtracking with
incremental edge-disjointness, partial unions are deduplicated up to
isomorphism (sound for existence: an isomorphism transports any
extension), and each distinct final union goes to the exact 1-planarity
tester.  NotExists verdicts are exhaustive within the mapping space.

reference_mode disables the isomorphism dedup and the union-graph cache
so pruned and unpruned runs can be checked against each other.
"""

from __future__ import annotations

import dataclasses
import time
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .drawing import HostEdge, OnePlaneDrawing, PackingCertificate
from .model import GuestGraph, crossing_lower_bound, norm_edge
from .oneplanar import (NotOnePlanar, OnePlanar, SearchBudget, Timeout,
                        one_planar_test)


@dataclasses.dataclass(frozen=True)
class Exists:
    certificate: PackingCertificate


@dataclasses.dataclass(frozen=True)
class NotExists:
    reason: str = "exhaustive search"


class _OutOfTime(Exception):
    pass


def _wl_key(n: int, edges: frozenset) -> str:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return nx.weisfeiler_lehman_graph_hash(g, iterations=3)


def _isomorphic(n: int, e1: frozenset, e2: frozenset) -> bool:
    g1 = nx.Graph()
    g1.add_nodes_from(range(n))
    g1.add_edges_from(e1)
    g2 = nx.Graph()
    g2.add_nodes_from(range(n))
    g2.add_edges_from(e2)
    return nx.is_isomorphic(g1, g2)


def _guest_mappings(g: GuestGraph, union: frozenset, deadline: float):
    """All bijections 0..n-1 -> 0..n-1 mapping g edge-disjointly from union."""
    n = g.n
    adj = g.adjacency()
    # assign guest vertices in an order that keeps the partial graph connected
    order: List[int] = []
    seen = set()
    for root in range(n):
        if root in seen:
            continue
        stack = [root]
        seen.add(root)
        while stack:
            v = stack.pop()
            order.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    mp = [-1] * n
    used = [False] * n
    out = []

    def rec(idx: int):
        if time.monotonic() > deadline:
            raise _OutOfTime()
        if idx == n:
            out.append(tuple(mp))
            return
        v = order[idx]
        placed_nbrs = [w for w in adj[v] if mp[w] >= 0]
        for hv in range(n):
            if used[hv]:
                continue
            ok = True
            for w in placed_nbrs:
                if norm_edge(hv, mp[w]) in union:
                    ok = False
                    break
            if ok:
                mp[v] = hv
                used[hv] = True
                rec(idx + 1)
                mp[v] = -1
                used[hv] = False

    rec(0)
    return out


def oracle_pack(instance: Sequence[GuestGraph],
                budget: SearchBudget = SearchBudget(wall_clock=1800),
                reference_mode: bool = False):
    instance = tuple(instance)
    if not instance:
        return NotExists("empty instance")
    ns = {g.n for g in instance}
    if len(ns) != 1:
        return NotExists("guests disagree on n")
    n = ns.pop()
    m_total = sum(len(g.edges) for g in instance)
    if m_total > n * (n - 1) // 2:
        return NotExists(f"{m_total} edges cannot be pairwise distinct on {n} vertices")
    if n >= 3 and m_total > 4 * n - 8:
        return NotExists(f"{m_total} edges exceed 4n-8 = {4 * n - 8}")

    deadline = time.monotonic() + budget.wall_clock
    identity = tuple(range(n))
    g0_edges = frozenset(instance[0].edges)

    # states per level: (union edge set, mappings so far)
    states: List[Tuple[frozenset, Tuple[Tuple[int, ...], ...]]] = [
        (g0_edges, (identity,))]

    try:
        for gi in range(1, len(instance)):
            nxt: List[Tuple[frozenset, Tuple[Tuple[int, ...], ...]]] = []
            buckets: Dict[str, List[frozenset]] = {}
            for union, maps in states:
                for mp in _guest_mappings(instance[gi], union, deadline):
                    img = frozenset(norm_edge(mp[a], mp[b]) for a, b in instance[gi].edges)
                    new_union = union | img
                    if not reference_mode:
                        key = _wl_key(n, new_union)
                        dup = any(_isomorphic(n, new_union, old)
                                  for old in buckets.get(key, ()))
                        if dup:
                            continue
                        buckets.setdefault(key, []).append(new_union)
                    nxt.append((new_union, maps + (mp,)))
            states = nxt
            if not states:
                return NotExists("no edge-disjoint union of the guests exists")
    except _OutOfTime:
        return Timeout()

    tested: Dict[str, List[Tuple[frozenset, object]]] = {}
    for union, maps in states:
        remaining = deadline - time.monotonic()
        if remaining <= 0:
            return Timeout()
        verdict = None
        if not reference_mode:
            key = _wl_key(n, union)
            for old, v in tested.get(key, ()):
                if _isomorphic(n, union, old):
                    verdict = v
                    break
        if verdict is None:
            verdict = one_planar_test(
                n, sorted(union),
                SearchBudget(max_nodes=budget.max_nodes, wall_clock=remaining))
            if not reference_mode:
                tested.setdefault(_wl_key(n, union), []).append((union, verdict))
        if isinstance(verdict, Timeout):
            return Timeout()
        if isinstance(verdict, OnePlanar):
            cert = _certificate_from(instance, maps, verdict.drawing)
            return Exists(cert)
    return NotExists("exhaustive search over mappings")


def _certificate_from(instance, maps, drawing: OnePlaneDrawing) -> PackingCertificate:
    label_of: Dict[Tuple[int, int], int] = {}
    for gi, (g, mp) in enumerate(zip(instance, maps)):
        for a, b in g.edges:
            label_of[norm_edge(mp[a], mp[b])] = gi
    host = tuple(dataclasses.replace(e, label=label_of[e.ends])
                 for e in drawing.host_edges)
    dr = dataclasses.replace(drawing, host_edges=host)
    return PackingCertificate(instance=instance, mappings=tuple(maps),
                              drawing=dr, provenance="oracle")
