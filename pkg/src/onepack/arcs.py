"""Arc-diagram builder: a combinatorial authoring backend for drawings.

Vertices sit on a horizontal baseline in a fixed left-to-right order;
every edge is either a baseline segment between consecutive vertices or
a semicircular arc above (UP) or below (DOWN) the line.  With semicircle
geometry the crossing structure is forced:

  * two same-side arcs cross iff their intervals strictly interleave,
    and then exactly once (two circles centred on the same line meet at
    most once per half-plane);
  * nested or disjoint arcs never cross; baseline edges are never crossed;
  * interleaving arcs cannot share an endpoint, so adjacent crossings
    are impossible by construction.

The rotation at a baseline vertex (counterclockwise from the rightward
baseline direction) is: baseline-right, up-right arcs by increasing
span, up-left arcs by decreasing span, baseline-left, down-left arcs by
increasing span, down-right arcs by decreasing span.  At a crossing of
two UP arcs a=(i1,j1), b=(i2,j2) with i1<i2<j1<j2 the counterclockwise
order is [a-right, b-right, a-left, b-left]; for DOWN arcs the mirror.

The builder refuses arcs that would be crossed twice, so authoring
errors surface at construction time; the validator stays the referee.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from .drawing import DISCARD, HostEdge, OnePlaneDrawing, dummy_id

UP = "up"
DOWN = "down"
BASE = "base"


class ArcDiagram:
    def __init__(self, order: Sequence[int]):
        self.order = list(order)
        if len(set(self.order)) != len(self.order):
            raise ValueError("duplicate vertex in baseline order")
        self.pos = {v: i for i, v in enumerate(self.order)}
        self.edges: List[Tuple[int, int, int, str, object]] = []  # (eid, left, right, side, label)
        self._intervals: Dict[str, set] = {UP: set(), DOWN: set()}

    def add(self, u: int, v: int, side: str, label: object) -> int:
        """Add an edge; u, v are vertex ids, side is UP/DOWN/BASE."""
        if u not in self.pos or v not in self.pos:
            raise ValueError(f"unknown vertex in ({u},{v})")
        i, j = self.pos[u], self.pos[v]
        if i == j:
            raise ValueError(f"self-loop at {u}")
        if i > j:
            i, j = j, i
        if side == BASE:
            if j != i + 1:
                raise ValueError(f"baseline edge ({u},{v}) not between consecutive vertices")
        elif side in (UP, DOWN):
            if (i, j) in self._intervals[side]:
                raise ValueError(f"duplicate {side} arc over interval ({u},{v})")
            self._intervals[side].add((i, j))
        else:
            raise ValueError(f"bad side {side!r}")
        eid = len(self.edges)
        self.edges.append((eid, i, j, side, label))
        return eid

    def chain(self, vertices: Sequence[int], side: str, label: object) -> List[int]:
        return [self.add(a, b, side, label) for a, b in zip(vertices, vertices[1:])]

    def crossings(self) -> List[Tuple[int, int]]:
        pairs = []
        crossed = defaultdict(list)
        for side in (UP, DOWN):
            arcs = [(e, i, j) for (e, i, j, s, _) in self.edges if s == side]
            for a in range(len(arcs)):
                e1, i1, j1 = arcs[a]
                for b in range(a + 1, len(arcs)):
                    e2, i2, j2 = arcs[b]
                    lo, hi = (a, b) if i1 < i2 else (b, a)
                    el, il, jl = arcs[lo]
                    er, ir, jr = arcs[hi]
                    if il < ir < jl < jr:
                        pairs.append(tuple(sorted((el, er))))
                        crossed[el].append(er)
                        crossed[er].append(el)
        for eid, partners in crossed.items():
            if len(partners) > 1:
                e = self.edges[eid]
                raise ValueError(
                    f"arc {eid} ({self.order[e[1]]},{self.order[e[2]]},{e[3]}) "
                    f"crossed {len(partners)} times")
        return sorted(pairs)

    def build(self, n: Optional[int] = None, intermediate: bool = False) -> OnePlaneDrawing:
        if n is None:
            n = max(self.order) + 1
        if sorted(self.order) != list(range(n)):
            raise ValueError("baseline order must cover vertices 0..n-1 exactly")
        xpairs = self.crossings()
        xof = {}
        for jx, (a, b) in enumerate(xpairs):
            xof[a] = jx
            xof[b] = jx

        host = tuple(HostEdge(eid, self.order[i], self.order[j], label)
                     for (eid, i, j, side, label) in self.edges)

        # sub-edge incident to a given endpoint side of an edge
        def stub(eid: int, at_left: bool) -> Tuple[int, int]:
            if eid not in xof:
                return (eid, 0)
            return (eid, 0) if at_left else (eid, 1)

        rotation: Dict[int, Tuple] = {}
        for p, vtx in enumerate(self.order):
            base_r, base_l = [], []
            up_r, up_l, dn_r, dn_l = [], [], [], []
            for (eid, i, j, side, _) in self.edges:
                if p not in (i, j):
                    continue
                left_end = (p == i)
                span = j - i
                if side == BASE:
                    (base_r if left_end else base_l).append(stub(eid, left_end))
                elif side == UP:
                    (up_r if left_end else up_l).append((span, stub(eid, left_end)))
                else:
                    (dn_r if left_end else dn_l).append((span, stub(eid, left_end)))
            rot = []
            rot += base_r
            rot += [s for _, s in sorted(up_r)]                      # increasing span
            rot += [s for _, s in sorted(up_l, reverse=True)]        # decreasing span
            rot += base_l
            rot += [s for _, s in sorted(dn_l)]                      # increasing span
            rot += [s for _, s in sorted(dn_r, reverse=True)]        # decreasing span
            rotation[vtx] = tuple(rot)

        for jx, (a, b) in enumerate(xpairs):
            ea = self.edges[a]
            eb = self.edges[b]
            # order so that "a" is the arc whose left endpoint is leftmost
            if ea[1] > eb[1]:
                ea, eb = eb, ea
            side = ea[3]
            if side == UP:
                rot = ((ea[0], 1), (eb[0], 1), (ea[0], 0), (eb[0], 0))
            else:
                rot = ((ea[0], 1), (eb[0], 0), (ea[0], 0), (eb[0], 1))
            rotation[dummy_id(jx)] = rot

        return OnePlaneDrawing(
            n=n, host_edges=host,
            crossings=tuple(xpairs),
            rotation=rotation,
            intermediate=intermediate)
