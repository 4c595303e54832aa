"""Planarity testing with combinatorial embedding output.

Thin wrapper over networkx's left-right planarity algorithm; converts
verdicts into this package's rotation-system drawing model so the Euler
validator can cross-check every embedding independently.
"""

from __future__ import annotations

import dataclasses
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .drawing import HostEdge, OnePlaneDrawing
from .model import norm_edge


@dataclasses.dataclass(frozen=True)
class Planar:
    rotation: Dict[int, Tuple[int, ...]]  # vertex -> neighbors in cyclic order


@dataclasses.dataclass(frozen=True)
class NonPlanar:
    witness_edges: Tuple[Tuple[int, int], ...]  # a K5 or K3,3 subdivision


def planarity_test(n: int, edges: Sequence[Tuple[int, int]]):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    ok, cert = nx.check_planarity(g, counterexample=True)
    if not ok:
        return NonPlanar(tuple(sorted(norm_edge(u, v) for u, v in cert.edges())))
    rotation = {v: tuple(nbrs) for v, nbrs in cert.get_data().items()}
    return Planar(rotation)


def drawing_from_planar_embedding(n: int,
                                  labelled_edges: Sequence[Tuple[int, int, object]],
                                  rotation: Dict[int, Tuple[int, ...]]
                                  ) -> OnePlaneDrawing:
    """Zero-crossing OnePlaneDrawing from a neighbor-order embedding."""
    host = tuple(HostEdge(i, u, v, lbl) for i, (u, v, lbl) in enumerate(labelled_edges))
    sub_of = {}
    for e in host:
        sub_of[(e.u, e.v)] = (e.eid, 0)
        sub_of[(e.v, e.u)] = (e.eid, 0)
    rot = {v: tuple(sub_of[(v, w)] for w in nbrs) for v, nbrs in rotation.items()}
    for v in range(n):
        rot.setdefault(v, ())
    return OnePlaneDrawing(n=n, host_edges=host, crossings=(), rotation=rot)
