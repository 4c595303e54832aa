"""Packing three spanning paths with at most 7 crossings.

Construction overview (all sizes verified by the drawing validator and
exact crossing-count assertions):

  * n=6: octahedron (outer triangle 0,1,2; inner triangle 3,4,5) plus
    the three "long diagonals" (o_j, i_{j+1}); diagonal j crosses the
    octahedron edge (o_{j+1}, i_j).  Union is K6; 3 crossings.
  * n=7: the 7-vertex core: octahedron plus an apex adjacent to all six
    vertices; apex->o_j crosses the inner edge (i_{j-1}, i_j).  Union is
    K7 minus the matching {(o_j, i_{j+1})}; 3 crossings; guest path j
    runs from o_j to i_{j+1}.
  * n=7+3k (k>=1): three rays of k vertices around the core; path j is
    a zig-zag over rays j,j+1, the core path from o_j to i_{j+1}, and a
    straight run along ray j+2; connectors (o_j, u_{j,1}) are planar
    and (i_{j+1}, u_{j+2,1}) crosses the outer edge (o_{j+1}, o_{j+2});
    6 crossings.
  * one extra vertex: adjacent to the three ray tips (planar; the tips
    lie on the outer face), still 6 crossings; two extras: a second such
    vertex, also planar (K_{2,3} into the outer face), 6 crossings.
    With no rays (n=8,9) the extras attach to the outer triangle / the
    inner triangle, the latter with 2 more crossings (5 total).

The drawing is produced combinatorially: the planarization of the host
graph with the declared crossing pairs is planar by construction; its
embedding supplies the rotation system.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..drawing import OnePlaneDrawing, PackingCertificate, validate_certificate
from ..model import GuestGraph, norm_edge, path_graph
from ..oneplanar import drawing_from_pairs


class NTooSmall(ValueError):
    pass


class ConstructionError(AssertionError):
    """A template failed its own post-conditions; a bug, never fixed up."""


def _ham_path_decomposition(n: int, edges: Sequence[Tuple[int, int]],
                            endpoint_pairs: Optional[Sequence[Tuple[int, int]]] = None
                            ) -> Optional[List[List[int]]]:
    """Partition `edges` into Hamiltonian paths (n-1 edges each).

    endpoint_pairs, when given, pins path j to run between the given
    vertices.  Deterministic first solution via lexicographic DFS.
    """
    edges = [norm_edge(u, v) for u, v in edges]
    k = len(edges) // (n - 1)
    if k * (n - 1) != len(edges):
        return None
    avail = set(edges)
    paths: List[List[int]] = []

    def extend(seq: List[int], target: Optional[int]) -> bool:
        if len(seq) == n:
            if target is not None and seq[-1] != target:
                return False
            paths.append(seq[:])
            if build(len(paths)):
                return True
            paths.pop()
            return False
        used = set(seq)
        for w in range(n):
            if w in used:
                continue
            e = norm_edge(seq[-1], w)
            if e not in avail:
                continue
            if target is not None and w == target and len(seq) != n - 1:
                continue
            avail.discard(e)
            seq.append(w)
            if extend(seq, target):
                return True
            seq.pop()
            avail.add(e)
        return False

    def build(j: int) -> bool:
        if j == k:
            return not avail
        if endpoint_pairs is not None:
            s, t = endpoint_pairs[j]
            return extend([s], t)
        # anchor on the smallest vertex with an available edge (must be
        # a path end for some path; trying it as an end is exhaustive
        # enough because path ends cover every odd-degree vertex)
        starts = sorted({v for e in avail for v in e})
        for s in starts:
            if extend([s], None):
                return True
        return False

    return paths if build(0) else None


def _oct_edges() -> List[Tuple[int, int]]:
    out = []
    for j in range(3):
        out.append(norm_edge(j, (j + 1) % 3))           # outer triangle
        out.append(norm_edge(3 + j, 3 + (j + 1) % 3))   # inner triangle
        out.append(norm_edge(j, 3 + j))                 # o_j - i_j
        out.append(norm_edge(j, 3 + (j + 2) % 3))       # o_j - i_{j-1}
    return out


@lru_cache(maxsize=None)
def _core7_paths() -> Tuple[Tuple[int, ...], ...]:
    """The 7-vertex core decomposition: path j from o_j=j to i_{j+1}."""
    edges = _oct_edges() + [norm_edge(6, x) for x in range(6)]
    pairs = [(j, 3 + (j + 1) % 3) for j in range(3)]
    sol = _ham_path_decomposition(7, edges, pairs)
    if sol is None:
        raise ConstructionError("7-vertex core admits no constrained decomposition")
    return tuple(tuple(p) for p in sol)


@lru_cache(maxsize=None)
def _core6_paths() -> Tuple[Tuple[int, ...], ...]:
    """K6 into three Hamiltonian paths (host drawing: octahedron + diagonals)."""
    edges = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    sol = _ham_path_decomposition(6, edges)
    if sol is None:
        raise ConstructionError("K6 decomposition not found")
    return tuple(tuple(p) for p in sol)


def _core7_crossing_pairs() -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    # apex->o_j crosses inner edge (i_{j-1}, i_j)
    return [(norm_edge(6, j), norm_edge(3 + (j + 2) % 3, 3 + j)) for j in range(3)]


def _core6_crossing_pairs() -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    # diagonal (o_j, i_{j+1}) crosses (o_{j+1}, i_j)
    return [(norm_edge(j, 3 + (j + 1) % 3), norm_edge((j + 1) % 3, 3 + j))
            for j in range(3)]


def _assemble(n: int, sequences: Sequence[Sequence[int]],
              crossing_pairs: Sequence[Tuple[Tuple[int, int], Tuple[int, int]]],
              provenance: str) -> PackingCertificate:
    """Host = union of the three path sequences; rotation from embedding."""
    edge_list: List[Tuple[int, int]] = []
    labels: List[object] = []
    eid_of: Dict[Tuple[int, int], int] = {}
    for i, seq in enumerate(sequences):
        if sorted(seq) != list(range(n)):
            raise ConstructionError(f"path {i} is not spanning: {seq}")
        for a, b in zip(seq, seq[1:]):
            e = norm_edge(a, b)
            if e in eid_of:
                raise ConstructionError(f"host edge {e} used twice")
            eid_of[e] = len(edge_list)
            edge_list.append(e)
            labels.append(i)
    pair_ids = []
    for ea, eb in crossing_pairs:
        if ea not in eid_of or eb not in eid_of:
            raise ConstructionError(f"crossing pair ({ea},{eb}) references a non-edge")
        pair_ids.append(tuple(sorted((eid_of[ea], eid_of[eb]))))
    dr = drawing_from_pairs(n, edge_list, pair_ids, labels)
    if dr is None:
        raise ConstructionError("planarization of the template is not planar")
    if len(dr.crossings) != len(pair_ids):
        raise ConstructionError("a declared crossing degenerated to a touching pair")
    cert = PackingCertificate(
        instance=tuple(path_graph(n) for _ in sequences),
        mappings=tuple(tuple(seq) for seq in sequences),
        drawing=dr, provenance=provenance)
    return cert


def seven_vertex_core() -> OnePlaneDrawing:
    return pack_three_paths(7).drawing


def pack_three_paths(n: int) -> PackingCertificate:
    if n < 6:
        raise NTooSmall(f"three spanning paths need n >= 6, got {n}")
    if n == 6:
        return _assemble(6, _core6_paths(), _core6_crossing_pairs(), "three-paths n=6")
    sequences, pairs = three_paths_template(n)
    return _assemble(n, sequences, pairs, f"three-paths n={n}")


def ray_tip(n: int, t: int) -> int:
    """Vertex id of the tip of ray t in the n-vertex ray template."""
    k, r = divmod(n - 7, 3)
    if k < 1:
        raise ValueError("no rays at this size")
    return 7 + 3 * (k - 1) + (t % 3)


# n=9 does not fit the ray scheme (no room for rays, and the 7-vertex core
# cannot absorb two extra endpoint vertices).  Host: a triangular drum --
# two stacked antiprisms on vertex layers {0,1,2}, {3,4,5}, {6,7,8} with all
# three layer triangles -- plus three layer-1-to-layer-3 chords, each crossing
# one middle-triangle edge.  24 edges, 3 crossings.
_NINE_SEQUENCES = (
    (0, 1, 2, 3, 4, 5, 6, 7, 8),
    (1, 4, 0, 2, 6, 8, 5, 3, 7),
    (2, 5, 1, 8, 4, 7, 0, 3, 6),
)
_NINE_PAIRS = (
    ((0, 7), (3, 4)),
    ((1, 8), (4, 5)),
    ((2, 6), (3, 5)),
)


def three_paths_template(n: int):
    """Path vertex sequences + crossing pairs (as vertex pairs) for n >= 7."""
    if n == 9:
        return [list(s) for s in _NINE_SEQUENCES], [tuple(p) for p in _NINE_PAIRS]
    k, r = divmod(n - 7, 3)
    core = _core7_paths()
    pairs = _core7_crossing_pairs()

    def u(i: int, t: int) -> int:  # ray i, position t = 1..k
        return 7 + 3 * (t - 1) + (i % 3)

    sequences: List[List[int]] = []
    for i in range(3):
        seq: List[int] = []
        if k >= 1:
            zig = []
            for t in range(1, k + 1):
                zig.append(u(i, t))
                zig.append(u(i + 1, t))
            seq.extend(reversed(zig))
        seq.extend(core[i])  # o_i ... i_{i+1}
        if k >= 1:
            seq.extend(u(i + 2, t) for t in range(1, k + 1))
        sequences.append(seq)

    if k >= 1:
        for j in range(3):
            # connector (i_{j+1}, u_{j+2,1}) crosses outer edge (o_{j+1}, o_{j+2})
            pairs.append((norm_edge(3 + (j + 1) % 3, u(j + 2, 1)),
                          norm_edge((j + 1) % 3, (j + 2) % 3)))

    v = 7 + 3 * k
    w = v + 1
    if r >= 1:
        if k >= 1:
            # v adjacent to tip u(t, k); edge serves the path whose zig-zag
            # ends there, which is path t-1
            for i in range(3):
                sequences[i].insert(0, v)  # tip u(i+1, k) is the front of path i
        else:
            for j in range(3):
                sequences[j].insert(0, v)  # (v, o_j), planar tripod
    if r == 2:
        if k >= 1:
            for i in range(3):
                sequences[i].append(w)  # (w, u(i+2,k)) at the run end
            # v's tripod pockets one tip away from the outer face, so one
            # w-edge must cross one v-edge (hence 7 crossings here)
            pairs.append((norm_edge(w, u(0, k)), norm_edge(v, u(1, k))))
        else:
            # n=9: w sits inside a core face; (w, i_1) and (w, i_2) cross
            for j in range(3):
                sequences[j].append(w)  # (w, i_{j+1})
            pairs.append((norm_edge(w, 4), norm_edge(1, 3)))
            pairs.append((norm_edge(w, 5), norm_edge(0, 3)))

    return sequences, pairs
