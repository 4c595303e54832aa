"""Exact-arithmetic polyline drawings: the second authoring backend.

Vertices get rational coordinates; edges are straight segments or
polylines.  All intersections are computed exactly over Fractions, so
"crosses" vs "touches" is never a floating-point judgement call.  The
builder derives the crossing pairs and the full rotation system (sort
by exact angle around every vertex and crossing point) and refuses any
degeneracy: overlapping segments, intersections at endpoints or bends,
edges through vertices, doubly-crossed edges.

This backend exists for constructions that are natural to draw with
coordinates (ray layouts); the output is the same combinatorial
OnePlaneDrawing as everything else and is validated independently.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from .drawing import HostEdge, OnePlaneDrawing, dummy_id

Point = Tuple[Fraction, Fraction]


def _pt(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


def _sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def _cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def _angle_cmp(d1: Point, d2: Point) -> int:
    """Exact counterclockwise comparison of direction vectors from 0 rad."""
    def half(d: Point) -> int:
        # 0 for angle in [0, pi), 1 for [pi, 2pi)
        if d[1] > 0 or (d[1] == 0 and d[0] > 0):
            return 0
        return 1
    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    c = _cross(d1, d2)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def _seg_intersection(p1: Point, p2: Point, q1: Point, q2: Point):
    """Exact intersection of segments [p1,p2], [q1,q2].

    Returns ("none", None), ("proper", point) for a transversal crossing
    in both open interiors, or ("degenerate", msg) for anything else
    (endpoint touch, collinear overlap).
    """
    r = _sub(p2, p1)
    s = _sub(q2, q1)
    denom = _cross(r, s)
    qp = _sub(q1, p1)
    if denom == 0:
        if _cross(qp, r) != 0:
            return ("none", None)
        # collinear: overlap check via projections on r
        rr = r[0] * r[0] + r[1] * r[1]
        t0 = (qp[0] * r[0] + qp[1] * r[1])
        t1 = t0 + (s[0] * r[0] + s[1] * r[1])
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > rr:
            return ("none", None)
        if hi == 0 or lo == rr:
            return ("degenerate", "collinear endpoint touch")
        return ("degenerate", "collinear overlap")
    t = _cross(qp, s) / denom
    u = _cross(qp, r) / denom
    if t < 0 or t > 1 or u < 0 or u > 1:
        return ("none", None)
    if t in (0, 1) or u in (0, 1):
        return ("degenerate", "intersection at a segment endpoint")
    x = (p1[0] + t * r[0], p1[1] + t * r[1])
    return ("proper", x)


class GeomDrawing:
    def __init__(self):
        self.pos: Dict[int, Point] = {}
        self.edges: List[Tuple[int, int, int, object, List[Point]]] = []

    def add_vertex(self, v: int, x, y):
        p = _pt((x, y))
        if v in self.pos:
            raise ValueError(f"vertex {v} placed twice")
        if p in self.pos.values():
            raise ValueError(f"two vertices at {p}")
        self.pos[v] = p

    def add_edge(self, u: int, v: int, label: object, via: Sequence = ()) -> int:
        if u not in self.pos or v not in self.pos:
            raise ValueError(f"unknown endpoint in ({u},{v})")
        pts = [self.pos[u]] + [_pt(p) for p in via] + [self.pos[v]]
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise ValueError(f"zero-length segment on edge ({u},{v})")
        eid = len(self.edges)
        self.edges.append((eid, u, v, label, pts))
        return eid

    def chain(self, vertices: Sequence[int], label: object) -> List[int]:
        return [self.add_edge(a, b, label) for a, b in zip(vertices, vertices[1:])]

    def build(self, n: Optional[int] = None, intermediate: bool = False) -> OnePlaneDrawing:
        if n is None:
            n = max(self.pos) + 1
        if sorted(self.pos) != list(range(n)):
            raise ValueError("vertices must be exactly 0..n-1")

        segs = []  # (eid, seg index, p, q)
        for (eid, u, v, label, pts) in self.edges:
            for i, (a, b) in enumerate(zip(pts, pts[1:])):
                segs.append((eid, i, a, b))

        # no vertex may sit on a segment it does not terminate
        for w, p in self.pos.items():
            for (eid, i, a, b) in segs:
                if p in (a, b):
                    continue
                # point-on-segment: collinearity + box test
                r = _sub(b, a)
                if _cross(_sub(p, a), r) == 0:
                    dot = (p[0] - a[0]) * r[0] + (p[1] - a[1]) * r[1]
                    rr = r[0] * r[0] + r[1] * r[1]
                    if 0 <= dot <= rr:
                        raise ValueError(f"vertex {w} lies on edge {eid}")

        # pairwise intersections
        hits: Dict[int, List[Tuple[int, Point, int]]] = {}  # eid -> [(other eid, point, seg idx)]
        for a in range(len(segs)):
            e1, i1, p1, p2 = segs[a]
            for b in range(a + 1, len(segs)):
                e2, i2, q1, q2 = segs[b]
                if e1 == e2:
                    if abs(i1 - i2) == 1:
                        continue  # consecutive segments share a bend, fine
                    kind, info = _seg_intersection(p1, p2, q1, q2)
                    if kind != "none":
                        raise ValueError(f"edge {e1} self-intersects")
                    continue
                shared = self._shared_endpoint(e1, e2)
                kind, info = _seg_intersection(p1, p2, q1, q2)
                if kind == "none":
                    continue
                if kind == "degenerate":
                    if shared is not None and info == "intersection at a segment endpoint":
                        # touching exactly at the common vertex is legal
                        sp = self.pos[shared]
                        if sp in (p1, p2) and sp in (q1, q2):
                            continue
                    raise ValueError(f"edges {e1},{e2}: {info}")
                if shared is not None:
                    raise ValueError(f"adjacent edges {e1},{e2} cross")
                hits.setdefault(e1, []).append((e2, info, i1))
                hits.setdefault(e2, []).append((e1, info, i2))

        for eid, lst in hits.items():
            if len(lst) > 1:
                raise ValueError(f"edge {eid} crossed {len(lst)} times")

        pairs = sorted({tuple(sorted((e, o))) for e, lst in hits.items() for (o, _, _) in lst})
        xof = {}
        xpoint = {}
        for j, (a, b) in enumerate(pairs):
            xof[a] = j
            xof[b] = j
            xpoint[j] = hits[a][0][1]
        pts_of = {eid: pts for (eid, u, v, label, pts) in self.edges}
        seg_of_hit = {eid: lst[0][2] for eid, lst in hits.items()}

        host = tuple(HostEdge(eid, u, v, label) for (eid, u, v, label, pts) in self.edges)

        def stub_key(eid: int, at_u: bool) -> Tuple[int, int]:
            if eid not in xof:
                return (eid, 0)
            return (eid, 0) if at_u else (eid, 1)

        # rotation at real vertices
        rotation: Dict[int, Tuple] = {}
        incident: Dict[int, List[Tuple[Point, Tuple[int, int]]]] = {v: [] for v in range(n)}
        for (eid, u, v, label, pts) in self.edges:
            du = _sub(pts[1], pts[0])
            dv = _sub(pts[-2], pts[-1])
            incident[u].append((du, stub_key(eid, True)))
            incident[v].append((dv, stub_key(eid, False)))
        for v in range(n):
            dirs = incident[v]
            for a in range(len(dirs)):
                for b in range(a + 1, len(dirs)):
                    if _angle_cmp(dirs[a][0], dirs[b][0]) == 0:
                        raise ValueError(f"two edges leave vertex {v} in the same direction")
            dirs.sort(key=cmp_to_key(lambda x, y: _angle_cmp(x[0], y[0])))
            rotation[v] = tuple(s for _, s in dirs)

        # rotation at dummies
        for j, (a, b) in enumerate(pairs):
            x = xpoint[j]
            dirs = []
            for eid in (a, b):
                pts = pts_of[eid]
                i = seg_of_hit[eid]
                p, q = pts[i], pts[i + 1]
                # towards u-side: back along the polyline; towards v-side: forward
                dirs.append((_sub(p, x), (eid, 0)))
                dirs.append((_sub(q, x), (eid, 1)))
            dirs.sort(key=cmp_to_key(lambda s, t: _angle_cmp(s[0], t[0])))
            rotation[dummy_id(j)] = tuple(s for _, s in dirs)

        return OnePlaneDrawing(n=n, host_edges=host, crossings=tuple(pairs),
                               rotation=rotation, intermediate=intermediate)

    def _shared_endpoint(self, e1: int, e2: int) -> Optional[int]:
        _, u1, v1, _, _ = self.edges[e1]
        _, u2, v2, _, _ = self.edges[e2]
        common = {u1, v1} & {u2, v2}
        return common.pop() if common else None
