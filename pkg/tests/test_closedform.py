from decimal import Decimal
from fractions import Fraction

import pytest

from lindep.closedform import predict_all
from lindep.gf import prime_power


def test_q3_n2_example():
    p = predict_all(3, 2)
    assert (p.size, p.N, p.clique, p.chromatic, p.spanning_trees) == (12, 4, 3, 3, 81)
    assert p.eulerian and not p.complete and p.planar
    assert p.independence == 4 and p.diameter == 2 and p.domination == 1


def test_q2_n2_energies():
    p = predict_all(2, 2)
    assert p.laplacian_energy_paper == Fraction(5)
    assert p.energy_paper == 0
    assert p.distance_energy_paper == 8
    assert abs(p.energy_derived - 2 * Decimal(3).sqrt()) < Decimal("1e-25")
    assert abs(p.distance_energy_derived - (4 + 2 * Decimal(7).sqrt())) < Decimal("1e-25")


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 11, 16])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counting_identities(q, n):
    p = predict_all(q, n)
    assert (q - 1) * p.N + 1 == q ** n == p.num_vertices
    # windmill: N cliques of size q sharing one vertex
    assert p.size == p.N * q * (q - 1) // 2
    assert p.energy_derived > p.energy_paper
    assert p.distance_energy_derived > p.distance_energy_paper


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_n1_specialization(q):
    p = predict_all(q, 1)
    assert p.complete and p.N == 1
    assert p.diameter == 1
    assert p.vertex_connectivity == q - 1 == p.edge_connectivity
    assert p.algebraic_connectivity == q
    assert p.spanning_trees == q ** (q - 2)  # Cayley


def test_deterministic():
    assert predict_all(5, 3) == predict_all(5, 3)
    assert predict_all(5, 3).to_dict() == predict_all(5, 3).to_dict()


@pytest.mark.parametrize("q", [1, 6, 10, 12, 0])
def test_rejects_non_prime_power(q):
    assert prime_power(q) is None
    with pytest.raises(ValueError):
        predict_all(q, 2)


def test_rejects_bad_dimension():
    with pytest.raises(ValueError):
        predict_all(3, 0)
