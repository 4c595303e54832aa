import dataclasses

import pytest

from onepack.arcs import BASE, DOWN, UP, ArcDiagram
from onepack.drawing import (
    HostEdge, OnePlaneDrawing, PackingCertificate, degree_conservation_ok,
    trace_faces, validate_certificate, validate_drawing,
)
from onepack.model import GuestGraph, path_graph


def triangle():
    d = ArcDiagram([0, 1, 2])
    d.add(0, 1, BASE, 0)
    d.add(1, 2, BASE, 0)
    d.add(0, 2, UP, 0)
    return d.build()


def crossed_quad():
    d = ArcDiagram([0, 1, 2, 3])
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        d.add(a, b, BASE, 0)
    d.add(0, 2, UP, 0)
    d.add(1, 3, UP, 0)
    return d.build()


def test_triangle_faces():
    dr = triangle()
    assert validate_drawing(dr) == []
    assert len(trace_faces(dr)) == 2


def test_k4_planar_faces():
    d = ArcDiagram([0, 1, 2, 3])
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        d.add(a, b, BASE, 0)
    d.add(0, 2, UP, 0)
    d.add(1, 3, DOWN, 0)
    d.add(0, 3, UP, 0)
    dr = d.build()
    assert validate_drawing(dr) == []
    assert len(trace_faces(dr)) == 4  # V-E+F = 4-6+4 = 2


def test_single_crossing_euler():
    dr = crossed_quad()
    assert dr.crossings == ((3, 4),)
    assert validate_drawing(dr) == []
    # planarization: 5 vertices, 7 sub-edges, 4 faces
    assert len(trace_faces(dr)) == 4


def test_k5_one_crossing():
    d = ArcDiagram([0, 1, 2, 3, 4])
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4)]:
        d.add(a, b, BASE, 0)
    for a, b in [(0, 2), (1, 3), (0, 3), (0, 4)]:
        d.add(a, b, UP, 0)
    for a, b in [(1, 4), (2, 4)]:
        d.add(a, b, DOWN, 0)
    dr = d.build()
    assert len(dr.crossings) == 1
    assert validate_drawing(dr) == []


def test_double_crossing_refused_by_builder():
    d = ArcDiagram([0, 1, 2, 3, 4, 5])
    d.add(0, 3, UP, 0)
    d.add(1, 4, UP, 0)
    d.add(2, 5, UP, 0)  # (1,4) would be crossed twice
    with pytest.raises(ValueError):
        d.crossings()


def test_validator_catches_adjacent_crossing():
    dr = crossed_quad()
    # claim edges 2=(2,3) and 3=(0,2) cross: they share vertex 2
    bad = dataclasses.replace(dr, crossings=((2, 3),))
    codes = {v.code for v in validate_drawing(bad)}
    assert "adjacent-crossing" in codes


def test_validator_catches_matching_violation():
    d = ArcDiagram([0, 1, 2, 3, 4, 5])
    for a, b in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]:
        d.add(a, b, BASE, 0)
    d.add(0, 2, UP, 0)
    d.add(1, 3, UP, 0)
    d.add(2, 4, DOWN, 0)
    d.add(3, 5, DOWN, 0)
    dr = d.build()
    assert len(dr.crossings) == 2
    e1 = dr.crossings[0][0]
    bad = dataclasses.replace(dr, crossings=(dr.crossings[0], (e1, dr.crossings[1][1])))
    codes = {v.code for v in validate_drawing(bad)}
    assert "crossing-not-matching" in codes


def test_validator_catches_touching_not_crossing():
    dr = crossed_quad()
    rot = dict(dr.rotation)
    (dummy,) = [v for v in rot if v < 0]
    a, b, c, d = rot[dummy]
    rot[dummy] = (a, c, b, d)  # same-edge sub-edges now adjacent
    bad = dataclasses.replace(dr, rotation=rot)
    codes = {v.code for v in validate_drawing(bad)}
    assert "touching-not-crossing" in codes


def test_validator_catches_bad_rotation_swap():
    dr = triangle()
    rot = dict(dr.rotation)
    rot[0] = (rot[0][1], rot[0][0])
    bad = dataclasses.replace(dr, rotation=rot)
    # swapping at a degree-2 vertex keeps incidence but cannot break Euler;
    # swap at vertex 1 of K4 instead
    d = ArcDiagram([0, 1, 2, 3])
    for a, b in [(0, 1), (1, 2), (2, 3)]:
        d.add(a, b, BASE, 0)
    d.add(0, 2, UP, 0)
    d.add(1, 3, DOWN, 0)
    d.add(0, 3, UP, 0)
    dr = d.build()
    rot = dict(dr.rotation)
    r1 = list(rot[1])
    r1[0], r1[1] = r1[1], r1[0]
    rot[1] = tuple(r1)
    bad = dataclasses.replace(dr, rotation=rot)
    codes = {v.code for v in validate_drawing(bad)}
    assert "euler" in codes


def test_validator_catches_disconnected():
    dr = triangle()
    host = dr.host_edges + (HostEdge(99, 3, 4, 0),)
    rot = dict(dr.rotation)
    rot[3] = ((99, 0),)
    rot[4] = ((99, 0),)
    bad = OnePlaneDrawing(n=5, host_edges=host, crossings=dr.crossings, rotation=rot)
    codes = {v.code for v in validate_drawing(bad)}
    assert "disconnected" in codes


def test_parallel_edges_policy():
    d = ArcDiagram([0, 1])
    d.add(0, 1, BASE, 0)
    d.add(0, 1, UP, 1)
    dr = d.build(intermediate=True)
    assert validate_drawing(dr) == []
    final = dataclasses.replace(dr, intermediate=False)
    codes = {v.code for v in validate_drawing(final)}
    assert "parallel-edges" in codes


def make_two_path_cert():
    # host on 4 vertices: two edge-disjoint spanning paths with one crossing
    d = ArcDiagram([0, 1, 2, 3])
    d.add(0, 1, BASE, 0)
    d.add(1, 2, BASE, 0)
    d.add(2, 3, BASE, 0)
    d.add(0, 2, UP, 1)
    d.add(1, 3, UP, 1)
    d.add(0, 3, DOWN, 1)
    dr = d.build()
    g0 = path_graph(4)
    g1 = GuestGraph.from_edges(4, [(0, 2), (1, 3), (0, 3)], "path")
    return PackingCertificate(
        instance=(g0, g1), mappings=((0, 1, 2, 3), (0, 1, 2, 3)), drawing=dr)


def test_certificate_valid():
    c = make_two_path_cert()
    assert validate_certificate(c) == []
    assert degree_conservation_ok(c)


def test_certificate_label_flip_detected():
    c = make_two_path_cert()
    host = list(c.drawing.host_edges)
    host[0] = dataclasses.replace(host[0], label=1)
    bad = dataclasses.replace(c, drawing=dataclasses.replace(c.drawing, host_edges=tuple(host)))
    codes = {v.code for v in validate_certificate(bad)}
    assert "pullback" in codes


def test_certificate_rejects_non_bijection():
    c = make_two_path_cert()
    bad = dataclasses.replace(c, mappings=((0, 1, 2, 2), c.mappings[1]))
    codes = {v.code for v in validate_certificate(bad)}
    assert "mapping-not-bijection" in codes
