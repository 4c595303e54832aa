"""Three edge-disjoint Hamiltonian cycles packer."""

import pytest

from onepack.drawing import validate_certificate
from onepack.model import norm_edge
from onepack.packers.cycles import pack_three_cycles
from onepack.packers.paths import NTooSmall


@pytest.mark.parametrize("n", list(range(20, 35)) + [50, 99, 200])
def test_cycles_valid_and_bounded(n):
    cert = pack_three_cycles(n)
    assert len(cert.drawing.crossings) <= 14
    assert validate_certificate(cert) == []


def test_mappings_are_hamiltonian_cycles():
    cert = pack_three_cycles(23)
    union = set()
    for seq in cert.mappings:
        assert sorted(seq) == list(range(23))
        closed = list(seq) + [seq[0]]
        edges = {norm_edge(a, b) for a, b in zip(closed, closed[1:])}
        assert len(edges) == 23
        assert not edges & union
        union |= edges
    assert union == {e.ends for e in cert.drawing.host_edges}


@pytest.mark.parametrize("n", [6, 12, 19])
def test_too_small_rejected(n):
    with pytest.raises(NTooSmall):
        pack_three_cycles(n)
