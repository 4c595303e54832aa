"""Cutting curves and k-leaf-addition gadgets.

A cutting curve is a Jordan arc leaving a real vertex and crossing
exactly two host edges; it is encoded combinatorially as a face-hop
chain (anchor, f0, s1, f1, s2): start in face f0 incident to the anchor,
cross sub-edge s1 into f1, cross sub-edge s2 and stop.  Because the arc
stays inside two faces between its crossings, it meets no edge other
than e(s1) and e(s2) by construction.

A k-leaf addition attaches k new leaves to the anchor and reroutes the
two crossed edges through the new vertices, following a gadget template
from the versioned catalog (catalog_data/gadgets.cat).  Templates come
in two families: nonParallel (the two crossed edges have four distinct
endpoints) and parallel (the crossed edges share both endpoints).
"""

from __future__ import annotations

import dataclasses
import re
from importlib import resources
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .drawing import (Dart, HostEdge, OnePlaneDrawing, SubEdge, Violation,
                      trace_faces, validate_drawing)
from .oneplanar import drawing_from_pairs, drawing_from_pairs_multi


class KTooSmall(ValueError):
    """Leaf additions need k >= 5; no gadget exists below that."""


class UnknownFace(KeyError):
    """A cutting curve references a face not present in the drawing."""


class UnknownSubEdge(KeyError):
    """A cutting curve references a sub-edge not present in the drawing."""


Face = Tuple[Dart, ...]


def canonical_face(walk: Sequence[Dart]) -> Face:
    """Rotate a face walk so its smallest dart comes first."""
    walk = list(walk)
    i = walk.index(min(walk))
    return tuple(walk[i:] + walk[:i])


def faces_of(dr: OnePlaneDrawing) -> List[Face]:
    return [canonical_face(w) for w in trace_faces(dr)]


@dataclasses.dataclass(frozen=True)
class CuttingCurve:
    anchor: int
    f0: Face
    s1: SubEdge
    f1: Face
    s2: SubEdge


def _face_vertices(face: Face) -> set:
    return {v for v, _ in face}


def _face_subedges(face: Face) -> List[SubEdge]:
    return [s for _, s in face]


def validate_cutting_curve(dr: OnePlaneDrawing,
                           c: CuttingCurve) -> List[Violation]:
    """All cutting-curve conditions; empty list means valid.

    Raises UnknownFace / UnknownSubEdge for dangling references; every
    other problem is reported as a Violation.
    """
    known = set(faces_of(dr))
    for f in (c.f0, c.f1):
        if f not in known:
            raise UnknownFace(f"face {f} not in drawing")
    ends = dr.subedge_ends()
    for s in (c.s1, c.s2):
        if s not in ends:
            raise UnknownSubEdge(f"sub-edge {s} not in drawing")

    v: List[Violation] = []
    emap = dr.edge_map()
    xof = dr.crossing_of()
    e1, e2 = emap[c.s1[0]], emap[c.s2[0]]

    if not (0 <= c.anchor < dr.n):
        v.append(Violation("curve-anchor", f"{c.anchor} is not a real vertex"))
    elif c.anchor not in _face_vertices(c.f0):
        v.append(Violation("curve-anchor",
                           f"face f0 is not incident to anchor {c.anchor}"))
    if c.anchor in (e1.u, e1.v, e2.u, e2.v):
        v.append(Violation("curve-anchor-incident",
                           "crossed edges must not be incident to the anchor"))

    occ_f0 = _face_subedges(c.f0).count(c.s1)
    occ_f1 = _face_subedges(c.f1).count(c.s1)
    if occ_f0 == 0:
        v.append(Violation("curve-hop", "s1 is not on the boundary of f0"))
    if occ_f1 == 0:
        v.append(Violation("curve-hop", "s1 is not on the boundary of f1"))
    if c.f0 == c.f1 and occ_f0 < 2:
        v.append(Violation("curve-hop",
                           "f0 = f1 but s1 borders that face only once"))
    if c.s2 not in _face_subedges(c.f1):
        v.append(Violation("curve-hop", "s2 is not on the boundary of f1"))

    # condition iv: distinct edges that do not cross each other
    if e1.eid == e2.eid:
        v.append(Violation("condition-iv", "e(s1) and e(s2) are the same edge"))
    elif xof.get(e1.eid) is not None and xof.get(e1.eid) == xof.get(e2.eid):
        v.append(Violation("condition-iv", "e(s1) and e(s2) cross each other"))

    # condition v: parallel crossed edges must both be uncrossed
    if e1.eid != e2.eid and e1.ends == e2.ends:
        if e1.eid in xof or e2.eid in xof:
            v.append(Violation("condition-v",
                               "parallel e(s1), e(s2) must both be uncrossed"))
    return v


def iter_cutting_curves(dr: OnePlaneDrawing, anchor: int,
                        label1: object, label2: object
                        ) -> Iterator[CuttingCurve]:
    """All valid curves from anchor crossing a label1 edge then a label2
    edge, in deterministic face-walk order."""
    emap = dr.edge_map()
    all_faces = faces_of(dr)
    sides: Dict[SubEdge, List[Face]] = {}
    for f in all_faces:
        for s in _face_subedges(f):
            sides.setdefault(s, []).append(f)
    for f0 in sorted(all_faces):
        if anchor not in _face_vertices(f0):
            continue
        for s1 in _face_subedges(f0):
            if emap[s1[0]].label != label1:
                continue
            f1s = [f for f in sides[s1] if f != f0]
            if not f1s:
                f1s = [f0] if _face_subedges(f0).count(s1) == 2 else []
            for f1 in f1s:
                for s2 in _face_subedges(f1):
                    if emap[s2[0]].label != label2:
                        continue
                    c = CuttingCurve(anchor, f0, s1, f1, s2)
                    if not validate_cutting_curve(dr, c):
                        yield c


def find_cutting_curve(dr: OnePlaneDrawing, anchor: int,
                       label1: object, label2: object
                       ) -> Optional[CuttingCurve]:
    """First valid curve from anchor, or None."""
    return next(iter_cutting_curves(dr, anchor, label1, label2), None)


# --------------------------------------------------------------------------
# Gadget catalog


@dataclasses.dataclass(frozen=True)
class GadgetTemplate:
    """A concrete (family, k) gadget over symbolic vertex names.

    Vertex names: 'v' (hub), attaching vertices 'a','b' (and 'c','d' for
    the nonParallel family), leaves 'w1'..'wk'.  path1/path2 replace the
    two crossed edges end to end; crossings lists internal crossing
    pairs as ((u, v), (x, y)) name pairs.
    """
    family: str
    k: int
    hub: str
    attach: Tuple[str, ...]
    leaves: Tuple[str, ...]
    path1: Tuple[str, ...]
    path2: Tuple[str, ...]
    crossings: Tuple[Tuple[Tuple[str, str], Tuple[str, str]], ...]
    rotation: Tuple[str, ...]


_EXPR_OK = re.compile(r"^[0-9ik+\-*/() ]+$")


def _eval_idx(expr: str, k: int, i: int = 0) -> int:
    if not _EXPR_OK.match(expr):
        raise ValueError(f"bad index expression {expr!r}")
    return int(eval(expr.replace("/", "//"), {"__builtins__": {}},
                    {"k": k, "i": i}))


def _name(token: str, k: int, i: int = 0) -> str:
    if token.startswith("w{"):
        return "w%d" % _eval_idx(token[2:-1], k, i)
    return token


def _expand_tokens(tokens: Sequence[str], k: int) -> List[str]:
    out = []
    for t in tokens:
        if ":" in t:
            lo_t, hi_t, step = t.split(":")
            lo = _eval_idx(lo_t[2:-1], k)
            hi = _eval_idx(hi_t[2:-1], k)
            out.extend("w%d" % j for j in range(lo, hi + 1, int(step)))
        else:
            out.append(_name(t, k))
    return out


def _edge(tok: str, k: int, i: int = 0) -> Tuple[str, str]:
    parts = tok.split(",")
    if len(parts) != 2:
        raise ValueError(f"bad edge token {tok!r}")
    return (_name(parts[0], k, i), _name(parts[1], k, i))


def _parse_catalog(text: str) -> List[dict]:
    records = []
    rec = None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "gadget":
            if rec is not None:
                raise ValueError(f"line {ln}: record not closed")
            family, cls, kspec = parts[1], parts[2], parts[3]
            key, val = kspec.split("=")
            rec = {"family": family, "class": cls, key: int(val), "lines": []}
        elif kind == "end":
            if rec is None:
                raise ValueError(f"line {ln}: stray end")
            records.append(rec)
            rec = None
        else:
            if rec is None:
                raise ValueError(f"line {ln}: content outside a record")
            rec["lines"].append(parts)
    if rec is not None:
        raise ValueError("unterminated record")
    return records


def _load_catalog() -> List[dict]:
    text = (resources.files("onepack") / "catalog_data" /
            "gadgets.cat").read_text()
    return _parse_catalog(text)


_CATALOG: Optional[List[dict]] = None


def catalog_records() -> List[dict]:
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _load_catalog()
    return _CATALOG


def _instantiate(rec: dict, k: int) -> GadgetTemplate:
    hub = "v"
    attach: Tuple[str, ...] = ()
    leaves: List[str] = []
    path1: List[str] = []
    path2: List[str] = []
    crossings: List[Tuple[Tuple[str, str], Tuple[str, str]]] = []
    rotation: List[str] = []
    for parts in rec["lines"]:
        kind = parts[0]
        if kind == "hub":
            hub = parts[1]
        elif kind == "attach":
            attach = tuple(parts[1:])
        elif kind == "leaves":
            leaves = _expand_tokens(parts[1:], k)
        elif kind == "path1":
            path1 = _expand_tokens(parts[1:], k)
        elif kind == "path2":
            path2 = _expand_tokens(parts[1:], k)
        elif kind == "cross":
            crossings.append((_edge(parts[1], k), _edge(parts[2], k)))
        elif kind == "crossunit":
            lo_t, hi_t = parts[1].split(":")
            lo, hi = _eval_idx(lo_t, k), _eval_idx(hi_t, k)
            for i in range(lo, hi + 1):
                crossings.append((_edge(parts[2], k, i), _edge(parts[3], k, i)))
        elif kind == "rotation":
            rotation = [parts[1]] + _expand_tokens(parts[2:], k)
        else:
            raise ValueError(f"unknown catalog line kind {kind!r}")
    return GadgetTemplate(family=rec["family"], k=k, hub=hub, attach=attach,
                          leaves=tuple(leaves), path1=tuple(path1),
                          path2=tuple(path2), crossings=tuple(crossings),
                          rotation=tuple(rotation))


def _template_for(family: str, cls: str, k: int) -> Optional[GadgetTemplate]:
    for rec in catalog_records():
        if rec["family"] != family or rec["class"] != cls:
            continue
        if "k" in rec and rec["k"] != k:
            continue
        if "kmin" in rec and k < rec["kmin"]:
            continue
        return _instantiate(rec, k)
    return None


def gadget_candidates(parallel: bool, k: int) -> List[GadgetTemplate]:
    """All catalog templates usable for (family, k), primary wiring first.

    For even k the nonParallel family has two wirings; the evenAlt
    fallback survives the degenerate geometries where the two replaced
    edges share an endpoint."""
    if k < 5:
        raise KTooSmall(f"leaf additions require k >= 5, got {k}")
    family = "parallel" if parallel else "nonParallel"
    classes = ["k%d" % k] if k in (5, 6, 7) else \
              ["evenBig" if k % 2 == 0 else "oddBig"]
    if not parallel and k % 2 == 0:
        classes.append("evenAlt")
    out = [t for t in (_template_for(family, cls, k) for cls in classes)
           if t is not None]
    if not out:
        raise LookupError(f"no catalog record for ({family}, k={k})")
    return out


def select_gadget(parallel: bool, k: int) -> GadgetTemplate:
    """The primary (family, k) template: exact records for k in {5,6,7},
    the evenBig/oddBig parametric records extended to any larger k."""
    return gadget_candidates(parallel, k)[0]


# --------------------------------------------------------------------------
# Applying a leaf addition


def _rebuild(n: int, edges: List[Tuple[int, int]], labels: List[object],
             pairs: List[Tuple[int, int]]) -> Optional[OnePlaneDrawing]:
    has_parallel = len({tuple(sorted(e)) for e in edges}) != len(edges)
    build = drawing_from_pairs_multi if has_parallel else drawing_from_pairs
    dr = build(n, edges, pairs, labels)
    if dr is None:
        return None
    if has_parallel:
        dr = dataclasses.replace(dr, intermediate=True)
    return dr


def apply_leaf_addition(dr: OnePlaneDrawing, c: CuttingCurve, k: int,
                        leaf_label: object) -> OnePlaneDrawing:
    """Attach k leaves at the curve's anchor and reroute e(s1), e(s2)
    through them per the catalog gadget.  The result passes
    validate_drawing; new leaf vertices get ids n..n+k-1."""
    if k < 5:
        raise KTooSmall(f"leaf additions require k >= 5, got {k}")
    problems = validate_cutting_curve(dr, c)
    if problems:
        raise ValueError("invalid cutting curve: " +
                         "; ".join(map(str, problems)))

    emap = dr.edge_map()
    xof = dr.crossing_of()
    e1, e2 = emap[c.s1[0]], emap[c.s2[0]]
    parallel = e1.ends == e2.ends
    templates = gadget_candidates(parallel, k)

    n_new = dr.n + k

    # Orientation of the replaced edges onto the attaching vertices.  The
    # stub (s1/s2) is the sub-edge the curve enters through; its real
    # endpoint is the near attaching vertex (a for e1, c for e2).  For an
    # uncrossed edge either end may serve, so both are tried.
    def orientations(e: HostEdge, s: SubEdge, near: str, far: str):
        if e.eid in xof:
            nr, fr = (e.u, e.v) if s[1] == 0 else (e.v, e.u)
            yield {near: nr, far: fr}
        else:
            yield {near: e.u, far: e.v}
            yield {near: e.v, far: e.u}

    if parallel:
        o1s = list(orientations(e1, c.s1, "a", "b"))
        o2s = [{}]
    else:
        o1s = list(orientations(e1, c.s1, "a", "b"))
        o2s = list(orientations(e2, c.s2, "c", "d"))

    base_edges: List[Tuple[int, int]] = []
    base_labels: List[object] = []
    old_to_new: Dict[int, int] = {}
    for e in dr.host_edges:
        if e.eid in (e1.eid, e2.eid):
            continue
        old_to_new[e.eid] = len(base_edges)
        base_edges.append((e.u, e.v))
        base_labels.append(e.label)
    base_pairs = [tuple(sorted((old_to_new[a], old_to_new[b])))
                  for a, b in dr.crossings
                  if a not in (e1.eid, e2.eid) and b not in (e1.eid, e2.eid)]
    partner1 = next((b if a == e1.eid else a for a, b in dr.crossings
                     if e1.eid in (a, b)), None)
    partner2 = next((b if a == e2.eid else a for a, b in dr.crossings
                     if e2.eid in (a, b)), None)

    best_dropped = None
    for tpl, o1, o2 in ((t, a, b) for t in templates for a in o1s for b in o2s):
            vmap = {"v": c.anchor}
            for i, name in enumerate(tpl.leaves):
                vmap[name] = dr.n + i
            vmap.update(o1)
            vmap.update(o2)
            if parallel:
                vmap.setdefault("c", vmap["b"])
                vmap.setdefault("d", vmap["a"])
            edges = list(base_edges)
            labels = list(base_labels)
            pairs = list(base_pairs)
            eid_of: Dict[Tuple[str, str], int] = {}

            def add(u_name, v_name, lab):
                eid_of[(u_name, v_name)] = len(edges)
                edges.append((vmap[u_name], vmap[v_name]))
                labels.append(lab)

            for name in tpl.leaves:
                add("v", name, leaf_label)
            for u_name, v_name in zip(tpl.path2, tpl.path2[1:]):
                add(u_name, v_name, e2.label)
            for u_name, v_name in zip(tpl.path1, tpl.path1[1:]):
                add(u_name, v_name, e1.label)

            def lookup(edge_names):
                if edge_names in eid_of:
                    return eid_of[edge_names]
                return eid_of[(edge_names[1], edge_names[0])]

            for ea, eb in tpl.crossings:
                pairs.append(tuple(sorted((lookup(ea), lookup(eb)))))
            # inherited ambient crossings land on the far attaching edges
            if partner1 is not None:
                far1 = lookup((tpl.path1[-2], tpl.path1[-1]))
                pairs.append(tuple(sorted((far1, old_to_new[partner1]))))
            if partner2 is not None:
                far2 = lookup((tpl.path2[-2], tpl.path2[-1]))
                pairs.append(tuple(sorted((far2, old_to_new[partner2]))))

            # no multi-edges among the gadget-touched vertices
            seen_pairs = {}
            dup = False
            for (u, v) in edges:
                key = (u, v) if u <= v else (v, u)
                seen_pairs[key] = seen_pairs.get(key, 0) + 1
            gadget_verts = {vmap[name] for name in vmap}
            for (u, v), cnt in seen_pairs.items():
                if cnt > 1 and u in gadget_verts and v in gadget_verts:
                    dup = True
            if dup and not dr.intermediate:
                continue

            out = _rebuild(n_new, edges, labels, pairs)
            if out is None:
                continue
            bad = validate_drawing(out)
            if bad:
                continue
            if len(out.crossings) == len(pairs):
                return out
            if best_dropped is None:
                best_dropped = out
    if best_dropped is not None:
        return best_dropped
    raise RuntimeError("leaf addition could not be realized for this curve")


def single_leaf_addition(dr: OnePlaneDrawing, c: CuttingCurve,
                         leaf_label: object) -> OnePlaneDrawing:
    """Attach one leaf at the curve's anchor: both crossed edges become
    length-2 detours through the new vertex (id dr.n).

    A degenerate leaf addition that adds no crossings of its own -- the
    new vertex sits on the curve, each replaced edge is rerouted through
    it, and any ambient crossing of a replaced edge is inherited by the
    detour's far half.  Requires the two crossed edges to be
    endpoint-disjoint (a shared endpoint would force a parallel pair)."""
    problems = validate_cutting_curve(dr, c)
    if problems:
        raise ValueError("invalid cutting curve: " +
                         "; ".join(map(str, problems)))
    emap = dr.edge_map()
    xof = dr.crossing_of()
    e1, e2 = emap[c.s1[0]], emap[c.s2[0]]
    if set(e1.ends) & set(e2.ends):
        raise RuntimeError("single-leaf addition needs endpoint-disjoint edges")
    w = dr.n

    def halves(e: HostEdge, s: SubEdge):
        if e.eid in xof:
            nr, fr = (e.u, e.v) if s[1] == 0 else (e.v, e.u)
            yield nr, fr
        else:
            yield e.u, e.v
            yield e.v, e.u

    base_edges: List[Tuple[int, int]] = []
    base_labels: List[object] = []
    old_to_new: Dict[int, int] = {}
    for e in dr.host_edges:
        if e.eid in (e1.eid, e2.eid):
            continue
        old_to_new[e.eid] = len(base_edges)
        base_edges.append((e.u, e.v))
        base_labels.append(e.label)
    base_pairs = [tuple(sorted((old_to_new[a], old_to_new[b])))
                  for a, b in dr.crossings
                  if a not in (e1.eid, e2.eid) and b not in (e1.eid, e2.eid)]
    partner1 = next((b if a == e1.eid else a for a, b in dr.crossings
                     if e1.eid in (a, b)), None)
    partner2 = next((b if a == e2.eid else a for a, b in dr.crossings
                     if e2.eid in (a, b)), None)

    for n1, f1 in halves(e1, c.s1):
        for n2, f2 in halves(e2, c.s2):
            edges = list(base_edges)
            labels = list(base_labels)
            pairs = list(base_pairs)
            far_eids = {}
            edges.append((c.anchor, w)); labels.append(leaf_label)
            for near, far, e in ((n1, f1, e1), (n2, f2, e2)):
                edges.append((near, w)); labels.append(e.label)
                far_eids[e.eid] = len(edges)
                edges.append((w, far)); labels.append(e.label)
            if partner1 is not None:
                pairs.append(tuple(sorted((far_eids[e1.eid],
                                           old_to_new[partner1]))))
            if partner2 is not None:
                pairs.append(tuple(sorted((far_eids[e2.eid],
                                           old_to_new[partner2]))))
            out = _rebuild(dr.n + 1, edges, labels, pairs)
            if out is None or validate_drawing(out):
                continue
            if len(out.crossings) == len(pairs):
                return out
    raise RuntimeError("single-leaf addition could not be realized")


# --------------------------------------------------------------------------
# Reference contexts (used by the build-time catalog validation tests)


def reference_context(parallel: bool) -> Tuple[OnePlaneDrawing, CuttingCurve]:
    """A minimal drawing plus curve exercising one gadget family.

    nonParallel: hexagon v,a,c,x,d,b with uncrossed chords e1=(a,b),
    e2=(c,d).  parallel: vertices v,a,b with a doubled edge (a,b)
    (intermediate drawing).  Labels: context 'ctx', e1 1, e2 2.
    """
    if parallel:
        edges = [(1, 2), (1, 2), (0, 1), (0, 2)]
        labels = [1, 2, "ctx", "ctx"]
        dr = drawing_from_pairs_multi(3, edges, [], labels)
        dr = dataclasses.replace(dr, intermediate=True)
    else:
        edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
                 (1, 5), (2, 4)]
        labels = ["ctx"] * 6 + [1, 2]
        dr = drawing_from_pairs(6, edges, [], labels)
    curve = find_cutting_curve(dr, 0, 1, 2)
    if curve is None:
        raise RuntimeError("reference context has no valid cutting curve")
    return dr, curve
