"""Three edge-disjoint Hamiltonian paths packer."""

import pytest

from onepack.drawing import validate_certificate
from onepack.model import norm_edge
from onepack.packers.paths import NTooSmall, pack_three_paths


def _union_edges(cert):
    return {e.ends for e in cert.drawing.host_edges}


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_small_sizes_three_crossings(n):
    cert = pack_three_paths(n)
    assert len(cert.drawing.crossings) == 3
    assert validate_certificate(cert) == []


@pytest.mark.parametrize("n", list(range(10, 41)))
def test_mid_sizes_valid(n):
    cert = pack_three_paths(n)
    cc = len(cert.drawing.crossings)
    assert 3 <= cc <= 7
    if (n - 7) % 3 != 2:
        assert cc == 6
    assert validate_certificate(cert) == []


def test_mappings_are_hamiltonian_paths():
    cert = pack_three_paths(13)
    union = set()
    for seq in cert.mappings:
        assert sorted(seq) == list(range(13))
        edges = {norm_edge(a, b) for a, b in zip(seq, seq[1:])}
        assert len(edges) == 12
        assert not edges & union
        union |= edges
    assert union == _union_edges(cert)


def test_k6_union_for_n6():
    cert = pack_three_paths(6)
    assert len(_union_edges(cert)) == 15  # three paths on 6 vertices tile K6


@pytest.mark.parametrize("n", [0, 1, 5])
def test_too_small_rejected(n):
    with pytest.raises(NTooSmall):
        pack_three_paths(n)
