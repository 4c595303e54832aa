"""Packer for three spanning paths plus a perfect matching.

For n >= 24 the host is built from k-1 concentric octagon rings (n = 8k + r,
r in {0, 2, 4, 6}).  The innermost and outermost rings are each capped by a
small disk graph whose size absorbs the residue; every quadrilateral face of
the resulting planar graph receives two crossing diagonals.  The edge
partition into three Hamiltonian paths, a perfect matching, and a handful of
discarded edges is stored in *contracted* form - a single bottom/top ring
pair plus the two caps - and expanded to any k by inserting periodic middle
rings (see :data:`onepack.packers._quad_data.ANNULUS`).

For 12 <= n <= 22 the rings do not fit; fixed templates over bespoke hosts
are used instead (:data:`onepack.packers._quad_data.SMALL`).

For n <= 10 or odd n no packing exists and a :class:`NoPacking` refusal with
the counting reason is returned.
"""

from __future__ import annotations

import dataclasses
from typing import Dict, List, Optional, Sequence, Tuple

from ..model import Edge, matching_graph, norm_edge, path_graph
from ..drawing import PackingCertificate
from ..oneplanar import drawing_from_pairs
from ._quad_data import ANNULUS, SMALL
from .paths import ConstructionError

RESIDUES = (0, 2, 4, 6)

#: partition class names
PATH1, PATH2, PATH3, MATCHING, DISCARD = \
    "path1", "path2", "path3", "matching", "discard"


class KTooSmall(ValueError):
    """Ring construction needs at least three ring levels (k >= 3)."""


class BadResidue(ValueError):
    """Residue must be one of 0, 2, 4, 6."""


@dataclasses.dataclass(frozen=True)
class NoPacking:
    reason: str  # "parity" | "edge-bound" | "degree-six"
    detail: str


@dataclasses.dataclass
class QuadHost:
    """Host graph for n = 8k + r: rings, caps, and crossing diagonals.

    ``edges`` lists every host edge including the inserted diagonals;
    ``planar_edges`` is the diagonal-free subgraph (planar, min degree >= 3).
    ``partition`` is filled by :func:`partition_edges`.
    """
    k: int
    r: int
    n: int
    edges: Tuple[Edge, ...]
    planar_edges: Tuple[Edge, ...]
    crossing_pairs: Tuple[Tuple[Edge, Edge], ...]
    partition: Optional[Dict[Edge, str]] = None


def _ring_vertex(i: int, j: int) -> int:
    """Vertex id of position j (mod 8) on ring i (1-based)."""
    return 8 * (i - 1) + (j % 8)


def _realizer(k: int, m_in: int):
    """Map contracted node tuples to vertex ids at ring count k."""
    base_in = 8 * (k - 1)
    base_out = base_in + m_in

    def real(t) -> int:
        kind, idx = t
        if kind == "B":
            return _ring_vertex(1, idx)
        if kind == "T":
            return _ring_vertex(k - 1, idx)
        if kind == "X":
            return base_in + idx
        if kind == "Y":
            return base_out + idx
        raise ConstructionError(f"unknown contracted node {t!r}")
    return real


def base_quad_graph(k: int, r: int) -> QuadHost:
    """Concentric-ring host with caps and two crossing diagonals per quad."""
    if r not in RESIDUES:
        raise BadResidue(f"residue must be in {RESIDUES}, got {r}")
    if k < 3:
        raise KTooSmall(f"ring construction needs k >= 3, got {k}")
    delta = (k - 2) % 8
    tpl = ANNULUS[r][delta]
    p_in, h_in, m_in = tpl["inner"]
    p_out, h_out, m_out = tpl["outer"]
    n = 8 * k + r
    real = _realizer(k, m_in)

    planar: List[Edge] = []
    diagonals: List[Edge] = []
    pairs: List[Tuple[Edge, Edge]] = []
    v = _ring_vertex
    for i in range(1, k):
        for j in range(8):
            planar.append(norm_edge(v(i, j), v(i, j + 1)))
    for i in range(1, k - 1):
        for j in range(8):
            planar.append(norm_edge(v(i, j), v(i + 1, j)))
            ea = norm_edge(v(i, j), v(i + 1, j + 1))
            eb = norm_edge(v(i, j + 1), v(i + 1, j))
            diagonals += [ea, eb]
            pairs.append((ea, eb))
    for c in range(8):
        planar.append(norm_edge(v(1, c), real(("X", p_in[c]))))
        planar.append(norm_edge(v(k - 1, c), real(("Y", p_out[c]))))
    for a, b in h_in:
        planar.append(norm_edge(real(("X", a)), real(("X", b))))
    for a, b in h_out:
        planar.append(norm_edge(real(("Y", a)), real(("Y", b))))
    for (a, c), (b, d) in tpl["cap_pairs"]:
        ea = norm_edge(real(tuple(a)), real(tuple(c)))
        eb = norm_edge(real(tuple(b)), real(tuple(d)))
        diagonals += [ea, eb]
        pairs.append((ea, eb))

    edges = sorted(set(planar) | set(diagonals))
    if len(edges) != len(planar) + len(diagonals):
        raise ConstructionError("duplicate host edge in ring construction")
    return QuadHost(k=k, r=r, n=n, edges=tuple(edges),
                    planar_edges=tuple(sorted(planar)),
                    crossing_pairs=tuple(pairs))


def _expand_path(seq, sign: int, k: int, real) -> List[int]:
    """Expand a contracted path; ring-to-ring hops insert one vertex per
    middle ring, drifting ``sign`` positions per level."""
    out = [real(tuple(seq[0]))]
    for a, b in zip(seq, seq[1:]):
        a, b = tuple(a), tuple(b)
        if {a[0], b[0]} == {"B", "T"} and k > 3:
            c = a[1] if a[0] == "B" else b[1]
            mid = [_ring_vertex(i, c + sign * (i - 1)) for i in range(2, k - 1)]
            if a[0] == "T":
                mid.reverse()
            out.extend(mid)
        out.append(real(b))
    return out


def expanded_partition_parts(k: int, r: int):
    """(sequences, matching_edges) of the expanded template at n = 8k + r."""
    delta = (k - 2) % 8
    tpl = ANNULUS[r][delta]
    m_in = tpl["inner"][2]
    real = _realizer(k, m_in)
    seqs = [_expand_path(tpl["p1"], 0, k, real),
            _expand_path(tpl["p2"], +1, k, real),
            _expand_path(tpl["p3"], -1, k, real)]
    pm = [norm_edge(real(tuple(a)), real(tuple(b))) for a, b in tpl["pm"]]
    for i in range(2, k - 1):
        for s in range(4):
            pm.append(norm_edge(_ring_vertex(i, 2 * s),
                                _ring_vertex(i, 2 * s + 1)))
    return seqs, pm


def partition_edges(host: QuadHost) -> Dict[Edge, str]:
    """Assign every host edge to path1/path2/path3/matching/discard."""
    seqs, pm = expanded_partition_parts(host.k, host.r)
    part: Dict[Edge, str] = {}
    host_set = set(host.edges)
    n = host.n
    for name, seq in zip((PATH1, PATH2, PATH3), seqs):
        if sorted(seq) != list(range(n)):
            raise ConstructionError(f"{name} is not spanning at n={n}")
        for a, b in zip(seq, seq[1:]):
            e = norm_edge(a, b)
            if e not in host_set or e in part:
                raise ConstructionError(f"{name} edge {e} unavailable")
            part[e] = name
    covered: set = set()
    for e in pm:
        if e not in host_set or e in part or set(e) & covered:
            raise ConstructionError(f"matching edge {e} unavailable")
        covered |= set(e)
        part[e] = MATCHING
    if len(covered) != n:
        raise ConstructionError("matching is not perfect")
    for e in host.edges:
        part.setdefault(e, DISCARD)
    host.partition = part
    return part


def _emit(n: int, seqs: Sequence[Sequence[int]], pm: Sequence[Edge],
          pairs: Sequence[Tuple[Edge, Edge]],
          provenance: str) -> PackingCertificate:
    """Certificate host = the three paths plus the matching; crossing pairs
    whose edges both survive the discard are kept."""
    edge_list: List[Edge] = []
    labels: List[object] = []
    eid: Dict[Edge, int] = {}
    for lab, seq in enumerate(seqs):
        if sorted(seq) != list(range(n)):
            raise ConstructionError(f"path {lab} is not spanning")
        for a, b in zip(seq, seq[1:]):
            e = norm_edge(a, b)
            if e in eid:
                raise ConstructionError(f"host edge {e} used twice")
            eid[e] = len(edge_list)
            edge_list.append(e)
            labels.append(lab)
    covered: set = set()
    for e in pm:
        if e in eid or set(e) & covered:
            raise ConstructionError(f"matching edge {e} clashes")
        covered |= set(e)
        eid[e] = len(edge_list)
        edge_list.append(e)
        labels.append(3)
    if len(covered) != n:
        raise ConstructionError("matching is not perfect")
    pair_ids = [tuple(sorted((eid[ea], eid[eb])))
                for ea, eb in pairs if ea in eid and eb in eid]
    dr = drawing_from_pairs(n, edge_list, pair_ids, labels)
    if dr is None:
        raise ConstructionError("planarization of the template is not planar")
    if len(dr.crossings) != len(pair_ids):
        raise ConstructionError("a declared crossing degenerated")

    mapping_pm: List[int] = []
    for a, b in pm:
        mapping_pm += [a, b]
    cert = PackingCertificate(
        instance=(path_graph(n), path_graph(n), path_graph(n),
                  matching_graph(n)),
        mappings=(tuple(seqs[0]), tuple(seqs[1]), tuple(seqs[2]),
                  tuple(mapping_pm)),
        drawing=dr, provenance=provenance)
    return cert


def _pack_small(n: int) -> PackingCertificate:
    tpl = SMALL[n]
    seqs = [tpl["p1"], tpl["p2"], tpl["p3"]]
    pm = [norm_edge(a, b) for a, b in tpl["pm"]]
    pairs = [(norm_edge(*ea), norm_edge(*eb)) for ea, eb in tpl["pairs"]]
    return _emit(n, seqs, pm, pairs,
                 f"three-paths+matching n={n} (fixed template)")


def pack_three_paths_matching(n: int):
    """Certified packing of three spanning paths plus a perfect matching,
    or a :class:`NoPacking` refusal for n odd or n <= 10."""
    if n % 2:
        return NoPacking("parity",
                         f"three paths + perfect matching forces even n; "
                         f"path endpoints cannot absorb odd degree at n={n}")
    if n <= 8:
        need = 7 * n // 2 - 3
        cap = 4 * n - 8
        return NoPacking("edge-bound",
                         f"union needs {need} edges but a 1-planar graph on "
                         f"{n} vertices has at most {cap}")
    if n == 10:
        return NoPacking("degree-six",
                         "a packing at n=10 would be an optimal 1-planar "
                         "graph, which has at least eight vertices of degree "
                         "exactly six, but the union leaves at most six "
                         "vertices of degree != 7")
    if n <= 22:
        return _pack_small(n)
    r = n % 8
    k = (n - r) // 8
    host = base_quad_graph(k, r)
    part = partition_edges(host)
    seqs, pm = expanded_partition_parts(k, r)
    survivors = {e for e, cls in part.items() if cls != DISCARD}
    pairs = [(ea, eb) for ea, eb in host.crossing_pairs
             if ea in survivors and eb in survivors]
    return _emit(n, seqs, pm, pairs,
                 f"three-paths+matching n={n} (k={k}, r={r})")


def debug_host(n: int) -> QuadHost:
    """Full host including discard edges, for inspection (n >= 24)."""
    r = n % 8
    k = (n - r) // 8
    host = base_quad_graph(k, r)
    partition_edges(host)
    return host
