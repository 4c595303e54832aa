"""Combinatorial 1-plane drawings and their ground-truth validator.

A drawing is a host multigraph plus a crossing matching plus a rotation
system over the *planarization*: every crossing pair gets a degree-4
dummy vertex and each crossed edge splits into two sub-edges there.

Vertex ids in the planarization: real vertices are 0..n-1, the dummy of
crossing pair j is -(j+1) (negative, so the two namespaces cannot clash).

A sub-edge is keyed (edge_id, seg) with seg in {0, 1}; uncrossed edges
only have seg 0.  Seg 0 is incident to the edge's stored first endpoint.
A dart is (vertex, subedge): one of the two ends of a sub-edge.  Faces
are the orbits of dart -> rotation-successor of the dart's twin.

Everything is validated structurally -- no geometry anywhere. Violations
are collected, never raised, so callers see all problems at once.
"""

from __future__ import annotations

import dataclasses
from collections import Counter, defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from .model import GuestGraph, crossing_lower_bound, norm_edge

DISCARD = "discard"

SubEdge = Tuple[int, int]  # (edge_id, seg)
Dart = Tuple[int, SubEdge]  # (tail vertex, sub-edge)


@dataclasses.dataclass(frozen=True)
class HostEdge:
    eid: int
    u: int
    v: int
    label: object  # guest index (int) or DISCARD

    @property
    def ends(self) -> Tuple[int, int]:
        return norm_edge(self.u, self.v)


def dummy_id(crossing_index: int) -> int:
    return -(crossing_index + 1)


@dataclasses.dataclass(frozen=True)
class OnePlaneDrawing:
    n: int  # real vertices 0..n-1
    host_edges: Tuple[HostEdge, ...]
    crossings: Tuple[Tuple[int, int], ...]  # pairs of edge ids, each pair sorted
    rotation: Dict[int, Tuple[SubEdge, ...]]  # planarization vertex -> ccw order
    intermediate: bool = False

    # -- derived structure ---------------------------------------------------

    def edge_map(self) -> Dict[int, HostEdge]:
        return {e.eid: e for e in self.host_edges}

    def crossing_of(self) -> Dict[int, int]:
        """edge id -> crossing index, for crossed edges."""
        out = {}
        for j, (a, b) in enumerate(self.crossings):
            out[a] = j
            out[b] = j
        return out

    def subedge_ends(self) -> Dict[SubEdge, Tuple[int, int]]:
        """sub-edge -> (tail-side endpoint, head-side endpoint)."""
        xof = self.crossing_of()
        out: Dict[SubEdge, Tuple[int, int]] = {}
        for e in self.host_edges:
            if e.eid in xof:
                d = dummy_id(xof[e.eid])
                out[(e.eid, 0)] = (e.u, d)
                out[(e.eid, 1)] = (d, e.v)
            else:
                out[(e.eid, 0)] = (e.u, e.v)
        return out

    def planar_vertices(self) -> List[int]:
        return list(range(self.n)) + [dummy_id(j) for j in range(len(self.crossings))]


@dataclasses.dataclass(frozen=True)
class Violation:
    code: str
    detail: str

    def __str__(self):
        return f"[{self.code}] {self.detail}"


def trace_faces(dr: OnePlaneDrawing) -> List[List[Dart]]:
    """Face boundary walks of the planarization's rotation system.

    Every directed sub-edge (dart) lies on exactly one walk; the walk
    count feeds the Euler check.  Raises KeyError-style Violations via
    ValueError if the rotation dangles.
    """
    ends = dr.subedge_ends()
    # position of each (vertex, subedge) occurrence in the rotation
    pos: Dict[Dart, int] = {}
    for v, rot in dr.rotation.items():
        for i, s in enumerate(rot):
            if s not in ends:
                raise ValueError(f"rotation at {v} references unknown sub-edge {s}")
            if (v, s) in pos:
                raise ValueError(f"sub-edge {s} listed twice at {v}")
            pos[(v, s)] = i

    def other_end(s: SubEdge, v: int) -> int:
        a, b = ends[s]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"sub-edge {s} not incident to {v}")

    darts = set(pos)
    faces = []
    seen = set()
    for start in sorted(darts):
        if start in seen:
            continue
        walk = []
        cur = start
        while True:
            walk.append(cur)
            seen.add(cur)
            v, s = cur
            w = other_end(s, v)
            rot = dr.rotation[w]
            i = pos[(w, s)]
            nxt = (w, rot[(i + 1) % len(rot)])
            if nxt == start:
                break
            if nxt in walk and nxt != start:
                raise ValueError("face walk revisited a dart; rotation corrupt")
            cur = nxt
        faces.append(walk)
    return faces


def validate_drawing(dr: OnePlaneDrawing) -> List[Violation]:
    """Every OnePlaneDrawing invariant; returns all violations found."""
    v: List[Violation] = []
    emap = {}
    for e in dr.host_edges:
        if e.eid in emap:
            v.append(Violation("dup-edge-id", f"edge id {e.eid} repeated"))
        emap[e.eid] = e
        if not (0 <= e.u < dr.n and 0 <= e.v < dr.n):
            v.append(Violation("bad-endpoint", f"edge {e.eid}=({e.u},{e.v}) out of range"))
        elif e.u == e.v:
            v.append(Violation("self-loop", f"edge {e.eid} at {e.u}"))

    # parallel-edge policy
    by_pair = Counter(e.ends for e in dr.host_edges if e.u != e.v)
    for pair, cnt in by_pair.items():
        if cnt > 1 and not dr.intermediate:
            v.append(Violation("parallel-edges", f"{cnt} host edges on {pair}"))

    # crossings form a matching of existing, endpoint-disjoint edges
    used = Counter()
    for j, pair in enumerate(dr.crossings):
        if len(pair) != 2 or pair[0] == pair[1]:
            v.append(Violation("bad-crossing-pair", f"crossing {j}: {pair}"))
            continue
        a, b = pair
        for eid in (a, b):
            used[eid] += 1
            if eid not in emap:
                v.append(Violation("unknown-edge", f"crossing {j} references edge {eid}"))
        if a in emap and b in emap:
            ea, eb = emap[a], emap[b]
            if set((ea.u, ea.v)) & set((eb.u, eb.v)):
                v.append(Violation("adjacent-crossing",
                                   f"crossing {j}: edges {a},{b} share an endpoint"))
    for eid, cnt in used.items():
        if cnt > 1:
            v.append(Violation("crossing-not-matching",
                               f"edge {eid} appears in {cnt} crossing pairs"))
    if v:
        # structure too broken to derive sub-edges reliably
        return v

    ends = dr.subedge_ends()
    # expected incidence per planarization vertex
    want: Dict[int, Counter] = defaultdict(Counter)
    for s, (a, b) in ends.items():
        want[a][s] += 1
        want[b][s] += 1
    got: Dict[int, Counter] = {}
    for pv in dr.planar_vertices():
        got[pv] = Counter(dr.rotation.get(pv, ()))
    extra_rot = set(dr.rotation) - set(got)
    for pv in sorted(extra_rot):
        v.append(Violation("unknown-vertex", f"rotation given for unknown vertex {pv}"))
    for pv in dr.planar_vertices():
        if want.get(pv, Counter()) != got[pv]:
            v.append(Violation("rotation-incidence",
                               f"rotation at {pv} disagrees with incident sub-edges"))

    # dummies: degree 4, same-edge sub-edges opposite (cross, don't touch)
    for j, (a, b) in enumerate(dr.crossings):
        d = dummy_id(j)
        rot = dr.rotation.get(d, ())
        if len(rot) != 4:
            v.append(Violation("dummy-degree", f"dummy of crossing {j} has degree {len(rot)}"))
            continue
        eids = [s[0] for s in rot]
        for eid in (a, b):
            places = [i for i, x in enumerate(eids) if x == eid]
            if len(places) == 2 and (places[1] - places[0]) % 4 != 2:
                v.append(Violation("touching-not-crossing",
                                   f"crossing {j}: sub-edges of edge {eid} adjacent at dummy"))
    if v:
        return v

    # connectivity of the planarization
    adj = defaultdict(set)
    for s, (a, b) in ends.items():
        adj[a].add(b)
        adj[b].add(a)
    pvs = dr.planar_vertices()
    if pvs:
        seen = {pvs[0]}
        stack = [pvs[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(pvs):
            v.append(Violation("disconnected",
                               f"planarization has {len(pvs) - len(seen)} unreachable vertices"))
            return v

    # Euler: V - E + F = 2 certifies genus 0 for the rotation system
    try:
        faces = trace_faces(dr)
    except ValueError as exc:
        v.append(Violation("dangling-half-edge", str(exc)))
        return v
    V = len(pvs)
    E = len(ends)
    F = len(faces)
    if V - E + F != 2:
        v.append(Violation("euler", f"V-E+F = {V}-{E}+{F} = {V - E + F} != 2"))
    return v


@dataclasses.dataclass(frozen=True)
class PackingCertificate:
    instance: Tuple[GuestGraph, ...]
    mappings: Tuple[Tuple[int, ...], ...]  # per guest: guest vertex -> host vertex
    drawing: OnePlaneDrawing
    provenance: str = ""

    @property
    def n(self) -> int:
        return self.drawing.n

    def crossing_count(self) -> int:
        return len(self.drawing.crossings)


def validate_certificate(c: PackingCertificate) -> List[Violation]:
    v = list(validate_drawing(c.drawing))
    if c.drawing.intermediate:
        v.append(Violation("intermediate", "certificates must not carry intermediate drawings"))
    n = c.drawing.n
    if len(c.mappings) != len(c.instance):
        v.append(Violation("mapping-count",
                           f"{len(c.mappings)} mappings for {len(c.instance)} guests"))
        return v
    for i, (g, mp) in enumerate(zip(c.instance, c.mappings)):
        if g.n != n:
            v.append(Violation("guest-n", f"guest {i} has n={g.n}, host has {n}"))
        if sorted(mp) != list(range(n)):
            v.append(Violation("mapping-not-bijection", f"mapping {i} is not a bijection"))

    if any(x.code in ("mapping-not-bijection", "guest-n") for x in v):
        return v

    # guest pull-backs: label-i host edges == image of guest i's edge set
    labelled: Dict[object, set] = defaultdict(set)
    for e in c.drawing.host_edges:
        labelled[e.label].add(e.ends)
    for i, (g, mp) in enumerate(zip(c.instance, c.mappings)):
        image = {norm_edge(mp[a], mp[b]) for a, b in g.edges}
        if image != labelled.get(i, set()):
            missing = image - labelled.get(i, set())
            spurious = labelled.get(i, set()) - image
            v.append(Violation("pullback",
                               f"guest {i}: missing {sorted(missing)[:4]}, spurious {sorted(spurious)[:4]}"))
    for lbl in labelled:
        if lbl != DISCARD and not (isinstance(lbl, int) and 0 <= lbl < len(c.instance)):
            v.append(Violation("bad-label", f"host edge labelled {lbl!r}"))
    if DISCARD in labelled:
        v.append(Violation("discard-in-certificate",
                           "discard edges must be dropped before emitting a certificate"))

    # edge-disjointness: no unordered endpoint pair may repeat
    pair_count = Counter(e.ends for e in c.drawing.host_edges)
    for pair, cnt in pair_count.items():
        if cnt > 1:
            v.append(Violation("not-edge-disjoint", f"host pair {pair} used {cnt} times"))

    m = len(c.drawing.host_edges)
    if m > 4 * n - 8:
        v.append(Violation("edge-bound", f"{m} edges > 4n-8 = {4 * n - 8}"))
    if len(c.drawing.crossings) < crossing_lower_bound(m, n):
        v.append(Violation("crossing-undercount",
                           f"{len(c.drawing.crossings)} crossings < lower bound "
                           f"{crossing_lower_bound(m, n)}"))
    return v


def degree_conservation_ok(c: PackingCertificate) -> bool:
    """Sum of guest degrees at each host vertex equals its host degree."""
    host_deg = Counter()
    for e in c.drawing.host_edges:
        if e.label == DISCARD:
            continue
        host_deg[e.u] += 1
        host_deg[e.v] += 1
    want = Counter()
    for g, mp in zip(c.instance, c.mappings):
        for d, gv in zip(g.degrees(), range(g.n)):
            want[mp[gv]] += d
    return host_deg == want
