import math
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lindep.exceptions import CapacityError
from lindep.graph import DepGraph, laplacian_matrix
from lindep.poly import ExactPoly
from lindep.spectra import (SpectrumDescription, adjacency_energy, algebraic_connectivity,
                            bareiss_det, berkowitz, charpoly_exact, charpoly_naive,
                            coefficient_bound, distance_energy, laplacian_energy, numeric_energy,
                            predicted_adjacency_poly, predicted_distance_poly,
                            predicted_laplacian_poly, spanning_trees_from_spectrum,
                            spanning_trees_kirchhoff, spectrum_from_factored_form,
                            spectrum_from_poly)

from .conftest import GRID, charpoly, graph, matrix

K2 = [[0, 1], [1, 0]]
K3 = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
STAR_L = [[3, -1, -1, -1], [-1, 1, 0, 0], [-1, 0, 1, 0], [-1, 0, 0, 1]]


def cofactor_charpoly(M):
    """det(xI - M) by first-row cofactor expansion over ExactPoly entries."""
    n = len(M)
    entries = [[ExactPoly((-M[i][j], 1)) if i == j else ExactPoly((-M[i][j],))
                for j in range(n)] for i in range(n)]

    def det(rows):
        if len(rows) == 1:
            return rows[0][0]
        total = ExactPoly(())
        for j, e in enumerate(rows[0]):
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = e * det(minor)
            total = total + term if j % 2 == 0 else total - term
        return total

    return det(entries)


def test_charpoly_small_examples():
    assert str(charpoly_exact(K2)) == "x^2 - 1"
    assert charpoly_exact(K3) == ExactPoly((-2, -3, 0, 1))
    assert cofactor_charpoly(K3) == ExactPoly((-2, -3, 0, 1))
    assert charpoly_exact(K3) == ExactPoly.from_roots([2, -1, -1])
    star = ExactPoly((0, -4, 9, -6, 1))
    assert cofactor_charpoly(STAR_L) == star
    assert charpoly_exact(STAR_L) == star == ExactPoly.from_roots([0, 4, 1, 1])


def test_naive_examples():
    assert charpoly_naive(np.eye(3, dtype=int)) == ExactPoly.from_roots([1, 1, 1])
    assert charpoly_naive([[0, 0], [0, 0]]) == ExactPoly((0, 0, 1))
    assert charpoly_naive(K3) == ExactPoly((-2, -3, 0, 1))
    with pytest.raises(CapacityError):
        charpoly_naive(np.zeros((9, 9), dtype=int))


def test_empty_matrix():
    assert charpoly_exact([]) == ExactPoly((1,))


matrices = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                       min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_exact_matches_naive_property(rows):
    exact = charpoly_exact(rows)
    assert exact == charpoly_naive(rows)
    assert exact == berkowitz(rows)
    assert exact.is_monic() and exact.degree == len(rows)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-10 ** 9, 10 ** 9), min_size=n, max_size=n),
                       min_size=n, max_size=n)))
def test_exact_with_large_entries(rows):
    assert charpoly_exact(rows) == cofactor_charpoly(rows)


def test_coefficient_bound_dominates():
    rng = np.random.default_rng(7)
    for _ in range(20):
        M = rng.integers(-5, 6, size=(7, 7))
        bound = coefficient_bound(M.tolist())
        assert max(abs(c) for c in charpoly_exact(M).coeffs) <= bound


@pytest.mark.parametrize("q,n,expected", [
    (2, 2, ExactPoly((0, 0, -3, 0, 1))),
    (2, 1, ExactPoly((-1, 0, 1))),
    (3, 1, ExactPoly((-2, -3, 0, 1))),
])
def test_predicted_adjacency(q, n, expected):
    assert predicted_adjacency_poly(q, n) == expected


@pytest.mark.parametrize("q,n,roots", [
    (2, 2, [0, 4, 1, 1]),
    (2, 1, [0, 2]),
    (3, 1, [0, 3, 3]),
])
def test_predicted_laplacian(q, n, roots):
    assert predicted_laplacian_poly(q, n) == ExactPoly.from_roots(roots)


def test_predicted_distance():
    assert predicted_distance_poly(2, 1) == ExactPoly((-1, 0, 1))
    quad = ExactPoly((-3, -4, 1))
    assert predicted_distance_poly(2, 2) == quad * ExactPoly.from_roots([-2, -2])
    assert predicted_distance_poly(3, 1) == ExactPoly((-2, -3, 0, 1))
    D_star = [[0, 1, 1, 1], [1, 0, 2, 2], [1, 2, 0, 2], [1, 2, 2, 0]]
    assert charpoly_naive(D_star) == predicted_distance_poly(2, 2)


def test_spectrum_examples():
    s = spectrum_from_factored_form(2, 2, "adjacency")
    assert s.integer_roots == ((0, 2),) and s.surd_pair == (0, 3)
    s = spectrum_from_factored_form(2, 2, "laplacian")
    assert dict(s.integer_roots) == {0: 1, 4: 1, 1: 2} and s.surd_pair is None
    s = spectrum_from_factored_form(3, 1, "distance")
    assert s.integer_roots == ((-1, 1),) and s.surd_pair == (1, 2)
    assert sorted(s.surd_roots()) == [Decimal(-1), Decimal(2)]
    with pytest.raises(ValueError):
        spectrum_from_factored_form(3, 1, "signless")


@pytest.mark.parametrize("case", GRID[:14])
@pytest.mark.parametrize("which", ["adjacency", "laplacian", "distance"])
def test_spectrum_reconstructs_prediction(case, which):
    p, k, n = case
    q = p ** k
    s = spectrum_from_factored_form(q, n, which)
    pred = {"adjacency": predicted_adjacency_poly, "laplacian": predicted_laplacian_poly,
            "distance": predicted_distance_poly}[which](q, n)
    assert s.degree == q ** n
    assert s.to_poly() == pred
    recovered = spectrum_from_poly(pred)
    assert recovered.to_poly() == pred
    if s.surd_pair is None or not math.isqrt(s.surd_pair[0] ** 2 + 4 * s.surd_pair[1]) ** 2 == (
            s.surd_pair[0] ** 2 + 4 * s.surd_pair[1]):
        assert recovered == s


def test_spectrum_from_poly_rejects_irreducible_cubic():
    with pytest.raises(ValueError):
        spectrum_from_poly(ExactPoly((-2, 0, 0, 1)))


@pytest.mark.parametrize("case", [(2, 1, 4), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 3, 1)])
def test_trace_coefficients(case):
    p, k, n = case
    q = p ** k
    deg = q ** n
    assert charpoly(*case, "adjacency")[deg - 1] == 0
    assert charpoly(*case, "distance")[deg - 1] == 0
    assert charpoly(*case, "laplacian")[deg - 1] == -q * (q ** n - 1)


def _close_to_surd(e, const, coef, radicand, tol="1e-40"):
    """|e - (const + coef * sqrt(radicand))| < tol, at 60 digits."""
    with localcontext() as ctx:
        ctx.prec = 60
        return abs(e - (const + coef * Decimal(radicand).sqrt())) < Decimal(tol)


def test_adjacency_energy_examples():
    assert adjacency_energy(spectrum_from_factored_form(2, 1, "adjacency")) == 2
    e = adjacency_energy(spectrum_from_factored_form(2, 2, "adjacency"))
    assert _close_to_surd(e, 0, 2, 3)
    assert str(e).startswith("3.4641016")
    assert adjacency_energy(spectrum_from_factored_form(3, 1, "adjacency")) == 4


def test_laplacian_energy_examples():
    assert laplacian_energy(spectrum_from_factored_form(2, 1, "laplacian"), 1, 2) == 2
    assert laplacian_energy(spectrum_from_factored_form(2, 2, "laplacian"), 3, 4) == 5
    assert laplacian_energy(spectrum_from_factored_form(3, 1, "laplacian"), 3, 3) == 4


def test_distance_energy_examples():
    assert distance_energy(spectrum_from_factored_form(2, 1, "distance")) == 2
    e = distance_energy(spectrum_from_factored_form(2, 2, "distance"))
    assert _close_to_surd(e, 4, 2, 7)
    assert distance_energy(spectrum_from_factored_form(3, 1, "distance")) == 4


def test_numeric_energy_agrees_with_spectrum():
    for q, n in [(2, 2), (3, 2), (4, 1), (2, 5)]:
        for which in ("adjacency", "distance"):
            s = spectrum_from_factored_form(q, n, which)
            num = numeric_energy(s.to_poly())
            exact = adjacency_energy(s)
            assert abs(Decimal(str(num)) - exact) <= Decimal("1e-9") * exact


def test_algebraic_connectivity_examples():
    assert algebraic_connectivity(spectrum_from_factored_form(2, 2, "laplacian")) == 1
    assert algebraic_connectivity(spectrum_from_factored_form(2, 1, "laplacian")) == 2
    assert algebraic_connectivity(spectrum_from_factored_form(3, 1, "laplacian")) == 3


def test_spanning_tree_examples():
    assert spanning_trees_kirchhoff(laplacian_matrix(graph(2, 1, 1))) == 1
    assert spanning_trees_kirchhoff(STAR_L) == 1
    assert spanning_trees_kirchhoff(matrix(3, 1, 2, "laplacian")) == 81
    assert spanning_trees_kirchhoff(matrix(2, 2, 1, "laplacian")) == 16


@pytest.mark.parametrize("case", [(3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3)])
def test_kirchhoff_independent_of_deleted_index(case):
    L = matrix(*case, "laplacian")
    values = {spanning_trees_kirchhoff(L, d) for d in range(0, L.shape[0], 3)}
    p, k, n = case
    q = p ** k
    N = (q ** n - 1) // (q - 1)
    assert values == {q ** ((q - 2) * N)}
    s = spectrum_from_factored_form(q, n, "laplacian")
    assert spanning_trees_from_spectrum(s) == q ** ((q - 2) * N)


def test_laplacian_roots_nonnegative_single_zero():
    for q, n in [(2, 3), (3, 2), (4, 2), (7, 1)]:
        s = spectrum_from_factored_form(q, n, "laplacian")
        assert min(r for r, _ in s.integer_roots) == 0
        assert dict(s.integer_roots)[0] == 1


def test_bareiss_matches_leibniz():
    rng = np.random.default_rng(3)
    for n in range(1, 7):
        M = rng.integers(-4, 5, size=(n, n))
        # det(M) = (-1)^n * charpoly(0)
        assert bareiss_det(M.tolist()) == (-1) ** n * charpoly_naive(M)(0)
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [0, 1]]) == 0


def test_poly_json_round_trip():
    big = predicted_laplacian_poly(2, 6)
    d = big.to_dict()
    assert all(isinstance(c, str) for c in d["coeffs"])
    assert ExactPoly.from_json(big.to_json()) == big


def test_poly_str():
    assert str(ExactPoly((0, 0, -3, 0, 1))) == "x^4 - 3x^2"
    assert str(ExactPoly((0, -2, 1))) == "x^2 - 2x"
    assert str(ExactPoly((-2, -3, 0, 1))) == "x^3 - 3x - 2"
    assert str(ExactPoly(())) == "0"
