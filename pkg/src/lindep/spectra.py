"""Exact characteristic polynomials, factored spectra, energies, tree counts.

``charpoly_exact`` runs Berkowitz's division-free algorithm modulo a family
of word-sized primes and lifts the result by the Chinese remainder theorem.
The primes are taken until their product exceeds twice a Hadamard-type bound
on the coefficients, so the lift is exact, not probabilistic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .exceptions import CapacityError
from .poly import ExactPoly, squarefree_decomposition

#: Working precision (decimal digits) for energies and numeric roots.
DIGITS = 50

NAIVE_MAX_ORDER = 8

# primes below 2**25 keep int64 convolutions of residues exact up to this order
_PRIME_CEILING = 1 << 25
_MAX_DOT_LENGTH = (2 ** 63 - 1) // (_PRIME_CEILING ** 2)

WHICH = ("adjacency", "laplacian", "distance")


def _as_int_rows(M) -> list[list[int]]:
    rows = [[int(v) for v in row] for row in (M.tolist() if isinstance(M, np.ndarray) else M)]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return rows


def _primes_descending(start: int):
    c = start - 1 if start % 2 == 0 else start - 2
    while c > 2:
        if all(c % d for d in range(3, math.isqrt(c) + 1, 2)):
            yield c
        c -= 2


def coefficient_bound(rows: Sequence[Sequence[int]]) -> int:
    """Upper bound on |coefficients| of det(xI - M).

    The coefficient of x^(n-k) is a signed sum of C(n, k) principal k-minors,
    each at most the product of its rows' Euclidean norms (Hadamard).
    """
    n = len(rows)
    norms = sorted((math.isqrt(sum(v * v for v in r)) + 1 for r in rows), reverse=True)
    best, prod = 1, 1
    for k in range(1, n + 1):
        prod *= norms[k - 1]
        best = max(best, math.comb(n, k) * prod)
    return best


def berkowitz(M) -> ExactPoly:
    """Plain big-integer Berkowitz; O(n^4), intended for small matrices."""
    rows = _as_int_rows(M)
    n = len(rows)
    v = [1]
    for r in range(n):
        col = [1, -rows[r][r]]
        w = [rows[i][r] for i in range(r)]
        for j in range(r):
            col.append(-sum(rows[r][i] * w[i] for i in range(r)))
            if j + 1 < r:
                w = [sum(rows[i][t] * w[t] for t in range(r)) for i in range(r)]
        nv = [0] * (r + 2)
        for i in range(r + 2):
            nv[i] = sum(col[i - j] * v[j] for j in range(len(v)) if 0 <= i - j < len(col))
        v = nv
    return ExactPoly(reversed(v))


def _berkowitz_multi(rows: list[list[int]], primes: list[int]) -> np.ndarray:
    """Berkowitz modulo several primes at once.

    The integer matrix is shared by all primes, so each Krylov step is one
    float64 matrix product against a (r, #primes) block of residues. The
    caller picks primes small enough that every partial sum is an integer
    below 2**53, which keeps the BLAS products exact.
    Returns an int64 array (#primes, n+1), descending coefficients.
    """
    n = len(rows)
    A = np.array(rows, dtype=np.float64)
    P = np.array(primes, dtype=np.int64)
    Pf = P.astype(np.float64)
    v = np.ones((len(primes), 1), dtype=np.int64)
    for r in range(n):
        M = A[:r, :r]
        C = A[r, :r]
        col = np.zeros((len(primes), r + 2), dtype=np.int64)
        col[:, 0] = 1
        col[:, 1] = (-rows[r][r]) % P
        W = np.mod(A[:r, r][:, None], Pf[None, :])
        for j in range(r):
            t = np.mod(C @ W, Pf).astype(np.int64)
            col[:, j + 2] = (-t) % P
            if j + 1 < r:
                W = np.mod(M @ W, Pf[None, :])
        nv = np.zeros((len(primes), r + 2), dtype=np.int64)
        for j in range(r + 1):
            nv[:, j:] += col[:, : r + 2 - j] * v[:, j: j + 1]
            if j % 64 == 63:
                nv %= P[:, None]
        v = nv % P[:, None]
    return v


def _prime_ceiling(rows: list[list[int]]) -> int:
    n = len(rows)
    biggest = max((abs(x) for r in rows for x in r), default=0)
    return min(_PRIME_CEILING, 2 ** 53 // (n * max(biggest, 1) + 1))


def charpoly_exact(M) -> ExactPoly:
    """det(xI - M) for a square integer matrix, exactly."""
    rows = _as_int_rows(M)
    n = len(rows)
    if n == 0:
        return ExactPoly((1,))
    if n > _MAX_DOT_LENGTH:
        raise CapacityError(f"order {n} too large for the modular Berkowitz kernel")
    bound = 2 * coefficient_bound(rows) + 1
    ceiling = _prime_ceiling(rows)
    if ceiling < 1 << 12:
        raise CapacityError("matrix entries too large for the modular Berkowitz kernel")
    primes, modulus = [], 1
    for p in _primes_descending(ceiling):
        primes.append(p)
        modulus *= p
        if modulus > bound:
            break
    table = _berkowitz_multi(rows, primes)
    residues = [0] * (n + 1)
    acc = 1
    for p, cp in zip(primes, table.tolist()):
        inv = pow(acc % p, -1, p)
        for i, c in enumerate(cp):
            residues[i] += acc * (((c - residues[i]) * inv) % p)
        acc *= p
    half = acc // 2
    desc = [r - acc if r > half else r for r in residues]
    return ExactPoly(reversed(desc))


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def charpoly_naive(M) -> ExactPoly:
    """Leibniz expansion of det(xI - M) in Z[x]; order at most 8."""
    rows = _as_int_rows(M)
    n = len(rows)
    if n > NAIVE_MAX_ORDER:
        raise CapacityError(f"naive char poly limited to order {NAIVE_MAX_ORDER}, got {n}")
    total = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        term = [_perm_sign(perm)]
        for i, j in enumerate(perm):
            if i == j:
                entry = [-rows[i][i], 1]
            elif rows[i][j]:
                entry = [-rows[i][j]]
            else:
                term = None
                break
            out = [0] * (len(term) + len(entry) - 1)
            for a, x in enumerate(term):
                for b, y in enumerate(entry):
                    out[a + b] += x * y
            term = out
        if term is not None:
            for d, c in enumerate(term):
                total[d] += c
    return ExactPoly(total)


# -- predicted factorizations ------------------------------------------------

def _counts(q: int, n: int) -> tuple[int, int]:
    if q < 2 or n < 1:
        raise ValueError(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    N = (q ** n - 1) // (q - 1)
    return q ** n, N


def predicted_adjacency_poly(q: int, n: int) -> ExactPoly:
    qn, N = _counts(q, n)
    x = ExactPoly.x()
    quad = x * x - x * (q - 2) - ExactPoly.constant(qn - 1)
    return quad * ExactPoly.linear(q - 2) ** (N - 1) * ExactPoly.linear(-1) ** ((q - 2) * N)


def predicted_laplacian_poly(q: int, n: int) -> ExactPoly:
    qn, N = _counts(q, n)
    return (ExactPoly.x() * ExactPoly.linear(qn) * ExactPoly.linear(1) ** (N - 1)
            * ExactPoly.linear(q) ** ((q - 2) * N))


def predicted_distance_poly(q: int, n: int) -> ExactPoly:
    qn, N = _counts(q, n)
    x = ExactPoly.x()
    quad = x * x - x * (2 * (qn - 1) - q) - ExactPoly.constant(qn - 1)
    return quad * ExactPoly.linear(-q) ** (N - 1) * ExactPoly.linear(-1) ** ((q - 2) * N)


PREDICTED = {
    "adjacency": predicted_adjacency_poly,
    "laplacian": predicted_laplacian_poly,
    "distance": predicted_distance_poly,
}


# -- spectra -----------------------------------------------------------------

@dataclass(frozen=True)
class SpectrumDescription:
    """Integer eigenvalues with multiplicities, plus at most one quadratic
    ``x^2 - b x - c`` contributing two simple roots."""

    integer_roots: tuple[tuple[int, int], ...]
    surd_pair: tuple[int, int] | None = None

    @classmethod
    def build(cls, roots: Iterable[tuple[int, int]], surd_pair=None) -> SpectrumDescription:
        merged: dict[int, int] = {}
        for r, m in roots:
            if m:
                merged[r] = merged.get(r, 0) + m
        return cls(tuple(sorted(merged.items())), surd_pair)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.integer_roots) + (2 if self.surd_pair else 0)

    def to_poly(self) -> ExactPoly:
        out = ExactPoly((1,))
        for r, m in self.integer_roots:
            out = out * ExactPoly.linear(r) ** m
        if self.surd_pair:
            b, c = self.surd_pair
            out = out * ExactPoly((-c, -b, 1))
        return out

    def surd_roots(self, digits: int = DIGITS) -> tuple[Decimal, Decimal]:
        b, c = self.surd_pair
        with localcontext() as ctx:
            ctx.prec = digits + 10
            s = Decimal(b * b + 4 * c).sqrt()
            return ((Decimal(b) + s) / 2, (Decimal(b) - s) / 2)

    def to_dict(self) -> dict:
        return {
            "integer_roots": [{"value": r, "multiplicity": m} for r, m in self.integer_roots],
            "surd": None if self.surd_pair is None else
            {"b": self.surd_pair[0], "c": self.surd_pair[1]},
        }


def spectrum_from_factored_form(q: int, n: int, which: str) -> SpectrumDescription:
    qn, N = _counts(q, n)
    extra = (q - 2) * N
    if which == "adjacency":
        return SpectrumDescription.build([(q - 2, N - 1), (-1, extra)], (q - 2, qn - 1))
    if which == "laplacian":
        return SpectrumDescription.build([(0, 1), (qn, 1), (1, N - 1), (q, extra)])
    if which == "distance":
        return SpectrumDescription.build([(-q, N - 1), (-1, extra)], (2 * (qn - 1) - q, qn - 1))
    raise ValueError(f"unknown matrix kind {which!r}")


def numeric_roots(poly: ExactPoly, digits: int = DIGITS) -> list[tuple[mpmath.mpc, int]]:
    """Roots with multiplicity: exact square-free split, then mpmath at ``digits``."""
    out = []
    with mpmath.workdps(digits):
        for factor, mult in squarefree_decomposition(poly):
            coeffs = list(reversed(factor.coeffs))
            if factor.degree == 1:
                roots = [mpmath.mpf(-factor.coeffs[0])]
            else:
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=4 * digits)
            out.extend((r, mult) for r in roots)
    return out


def numeric_energy(poly: ExactPoly, shift: Fraction = Fraction(0),
                   digits: int = DIGITS) -> mpmath.mpf:
    """Sum of |root - shift| over the roots of poly, counted with multiplicity."""
    with mpmath.workdps(digits):
        s = mpmath.mpf(shift.numerator) / shift.denominator
        return mpmath.fsum(m * abs(r - s) for r, m in numeric_roots(poly, digits))


def spectrum_from_poly(poly: ExactPoly) -> SpectrumDescription:
    """Recover a SpectrumDescription from a monic integer polynomial.

    Candidate integer roots are read off numerically and then confirmed by
    exact division; whatever remains must be a single quadratic factor.
    Raises ValueError when the polynomial does not have this shape.
    """
    rest = poly
    found: list[tuple[int, int]] = []
    candidates = sorted({int(mpmath.nint(mpmath.re(r))) for r, _ in numeric_roots(poly)})
    for r in candidates:
        lin = ExactPoly.linear(r)
        m = 0
        while rest.degree >= 1:
            quot, rem = rest.divmod_monic(lin)
            if rem.coeffs:
                break
            rest, m = quot, m + 1
        if m:
            found.append((r, m))
    if rest.degree == 0:
        return SpectrumDescription.build(found)
    if rest.degree == 2:
        c0, c1, _ = rest.coeffs
        return SpectrumDescription.build(found, (-c1, -c0))
    raise ValueError(f"residual factor of degree {rest.degree} is not a single quadratic")


# -- derived scalars ---------------------------------------------------------

def _abs_sum(s: SpectrumDescription, shift: Fraction = Fraction(0),
             digits: int = DIGITS) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        shift_dec = Decimal(shift.numerator) / Decimal(shift.denominator)
        total = Decimal(0)
        for r, m in s.integer_roots:
            total += m * abs(Decimal(r) - shift_dec)
        if s.surd_pair:
            for root in s.surd_roots(digits):
                total += abs(root - shift_dec)
        ctx.prec = digits
        return +total


def adjacency_energy(s: SpectrumDescription, digits: int = DIGITS) -> Decimal:
    return _abs_sum(s, digits=digits)


def distance_energy(s: SpectrumDescription, digits: int = DIGITS) -> Decimal:
    return _abs_sum(s, digits=digits)


def laplacian_energy(s: SpectrumDescription, m: int, nv: int) -> Fraction:
    """Sum of |lambda - 2m/nv|; exact for an all-integer spectrum."""
    if s.surd_pair:
        raise ValueError("Laplacian spectrum is expected to be integral")
    mean = Fraction(2 * m, nv)
    return sum((mult * abs(r - mean) for r, mult in s.integer_roots), Fraction(0))


def algebraic_connectivity(s: SpectrumDescription) -> int:
    """Second-smallest Laplacian eigenvalue, counted with multiplicity."""
    if s.surd_pair:
        raise ValueError("Laplacian spectrum is expected to be integral")
    flat = [r for r, m in s.integer_roots for _ in range(min(m, 2))]
    if len(flat) < 2:
        raise ValueError("need at least two eigenvalues")
    return sorted(flat)[1]


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free Gaussian elimination; exact over Z."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def spanning_trees_kirchhoff(L, delete: int = 0) -> int:
    """Matrix-tree theorem: determinant of L with row/column ``delete`` removed."""
    rows = _as_int_rows(L)
    minor = [[v for j, v in enumerate(r) if j != delete]
             for i, r in enumerate(rows) if i != delete]
    return bareiss_det(minor)


def spanning_trees_from_spectrum(s: SpectrumDescription) -> Fraction:
    """Product of the nonzero Laplacian eigenvalues divided by the order."""
    prod = 1
    zero_seen = False
    for r, m in s.integer_roots:
        if r == 0 and not zero_seen:
            zero_seen = True
            m -= 1
        prod *= r ** m
    return Fraction(prod, s.degree)
