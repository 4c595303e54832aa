"""Packing of three edge-disjoint Hamiltonian cycles into a 1-plane host.

The construction joins two three-path packings (see :mod:`.paths`) into
three cycles.  With halves of sizes n1 and n2, path i of the first half
runs between ray tips T1[i+1] and T1[i+2] and path i of the second half
between T2[i+1] and T2[i+2]; linking tip to tip closes the three cycles.

How the two halves meet depends on n mod 3:

* n % 3 == 2: both halves leave out no extra vertices (sizes 1 mod 3)
  and join tip-to-tip with no additional crossings (12 total).
* n % 3 == 1: the second half carries two extra vertices v, w that serve
  as the shared front/back endpoints of its three paths; one join edge
  must cross one of the fan edges (14 crossings total).
* n % 3 == 0: both halves have sizes 1 mod 3 and a hub vertex x is
  inserted on the junction edge of every cycle; two join edges cross two
  hub edges (14 crossings total).

Each rule was found once by exhaustive search over tip pairings and
declared crossing pairs and is frozen here; the planarity check inside
``drawing_from_pairs`` re-certifies it for every n at pack time.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from ..drawing import PackingCertificate, validate_certificate
from ..model import GuestGraph, cycle_graph, norm_edge
from ..oneplanar import drawing_from_pairs
from .paths import ConstructionError, NTooSmall, ray_tip, three_paths_template

Pair = Tuple[Tuple[int, int], Tuple[int, int]]


def _assemble_cycles(n: int, sequences: Sequence[Sequence[int]],
                     crossing_pairs: Sequence[Pair],
                     provenance: str) -> PackingCertificate:
    edge_list: List[Tuple[int, int]] = []
    labels: List[int] = []
    eid_of: Dict[Tuple[int, int], int] = {}
    for lab, seq in enumerate(sequences):
        closed = list(seq) + [seq[0]]
        for a, b in zip(closed, closed[1:]):
            e = norm_edge(a, b)
            if e in eid_of:
                raise ConstructionError(f"duplicate host edge {e}")
            eid_of[e] = len(edge_list)
            edge_list.append(e)
            labels.append(lab)
    try:
        id_pairs = [(eid_of[a], eid_of[b]) for a, b in crossing_pairs]
    except KeyError as exc:
        raise ConstructionError(f"crossing pair names a non-edge: {exc}") from exc
    drawing = drawing_from_pairs(n, edge_list, id_pairs, labels=labels)
    if drawing is None:
        raise ConstructionError("planarization of the declared drawing is not planar")
    if len(drawing.crossings) != len(crossing_pairs):
        raise ConstructionError("declared crossing pairs were not all realized")
    guest = cycle_graph(n)
    cert = PackingCertificate(
        instance=(guest, guest, guest),
        mappings=tuple(tuple(seq) for seq in sequences),
        drawing=drawing,
        provenance=provenance,
    )
    violations = validate_certificate(cert)
    if violations:
        raise ConstructionError(f"construction invalid: {violations[:3]}")
    return cert


def _half(n_half: int, offset: int):
    """Template of one half, shifted by ``offset``."""
    seqs, pairs = three_paths_template(n_half)
    seqs = [[v + offset for v in s] for s in seqs]
    pairs = [tuple(norm_edge(a + offset, b + offset) for a, b in pr) for pr in pairs]
    return seqs, pairs


def _largest_residue1(limit: int) -> int:
    return limit - ((limit - 1) % 3)


def pack_three_cycles(n: int) -> PackingCertificate:
    """Pack three edge-disjoint Hamiltonian cycles on n >= 20 vertices."""
    if n < 20:
        raise NTooSmall(f"three-cycle construction needs n >= 20, got {n}")
    r = n % 3
    if r == 0:
        # two plain halves plus a hub vertex x on the junction edges
        body = n - 1
        n1 = _largest_residue1(body // 2)
        n2 = body - n1
        x = n - 1
        s1, p1 = _half(n1, 0)
        s2, p2 = _half(n2, n1)
        sequences = [s1[i] + [x] + s2[i] for i in range(3)]
        t1 = [ray_tip(n1, t) for t in range(3)]
        t2 = [n1 + ray_tip(n2, t) for t in range(3)]
        extra = [
            (norm_edge(t1[0], t2[1]), norm_edge(t1[1], x)),
            (norm_edge(t1[2], t2[0]), norm_edge(t2[2], x)),
        ]
    else:
        n1 = _largest_residue1(n // 2)
        n2 = n - n1
        s1, p1 = _half(n1, 0)
        s2, p2 = _half(n2, n1)
        sequences = [s1[i] + s2[i] for i in range(3)]
        if r == 2:
            extra = []
        else:
            # second half has shared endpoints v (front) and w (back)
            k2 = (n2 - 7) // 3
            v2 = n1 + 7 + 3 * k2
            w2 = v2 + 1
            t1 = [ray_tip(n1, t) for t in range(3)]
            extra = [(norm_edge(t1[2], v2), norm_edge(t1[1], w2))]
    pairs = list(p1) + list(p2) + extra
    return _assemble_cycles(n, sequences, pairs, f"three-cycles n={n}")
