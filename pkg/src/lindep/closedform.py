"""Formula predictions for Γ(F_q^n) computed from (q, n) alone.

Energies come in two flavours that are never merged: ``*_paper`` fields hold
the corollary formulas exactly as stated, ``*_derived`` fields hold the values
implied by the factored characteristic polynomials. The adjacency and distance
pairs disagree.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .gf import prime_power
from .spectra import DIGITS


@dataclass(frozen=True)
class PredictionSet:
    q: int
    n: int
    N: int
    num_vertices: int
    complete: bool
    size: int
    diameter: int
    domination: int
    independence: int
    clique: int
    chromatic: int
    eulerian: bool
    edge_connectivity: int
    vertex_connectivity: int
    planar: bool
    spanning_trees: int
    algebraic_connectivity: int
    energy_paper: int
    laplacian_energy_paper: Fraction
    distance_energy_paper: int
    energy_derived: Decimal
    distance_energy_derived: Decimal

    def to_dict(self) -> dict:
        return asdict(self)


def _sqrt(n: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = DIGITS + 10
        return Decimal(n).sqrt()


def predict_all(q: int, n: int) -> PredictionSet:
    if prime_power(q) is None:
        raise ValueError(f"q must be a prime power, got {q}")
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    qn = q ** n
    N, rem = divmod(qn - 1, q - 1)
    assert rem == 0
    ones_beyond_first = N - 1  # q^(n-1) + ... + q, empty for n = 1

    laplacian_energy = (qn
                        + Fraction(qn * (q - 1) - q, qn) * ones_beyond_first
                        + Fraction(q, qn) * (q - 2) * N)

    b_dist = 2 * (qn - 1) - q
    with localcontext() as ctx:
        ctx.prec = DIGITS
        energy = +(_sqrt((q - 2) ** 2 + 4 * (qn - 1)) + (q - 2) * (2 * N - 1))
        dist_energy = +(_sqrt(b_dist ** 2 + 4 * (qn - 1)) + q * (N - 1) + (q - 2) * N)

    return PredictionSet(
        q=q, n=n, N=N, num_vertices=qn,
        complete=(n == 1),
        size=q * (qn - 1) // 2,
        diameter=2 if n >= 2 else 1,
        domination=1,
        independence=N,
        clique=q,
        chromatic=q,
        eulerian=(q % 2 == 1),
        edge_connectivity=q - 1,
        vertex_connectivity=1 if n >= 2 else q - 1,
        planar=(q <= 4),
        spanning_trees=q ** ((q - 2) * N),
        algebraic_connectivity=1 if n >= 2 else q,
        energy_paper=2 * (q - 2) * N,
        laplacian_energy_paper=laplacian_energy,
        distance_energy_paper=2 * (2 * qn - q - 2),
        energy_derived=energy,
        distance_energy_derived=dist_energy,
    )
