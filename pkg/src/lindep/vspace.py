"""The vector space F_q^n: enumeration, scaling, pairwise dependence.

A vector's index is ``sum(enc(coords[i]) * q**i)``, so index 0 is the null
vector and (for q = 2, n = 2) the order is (0,0), (1,0), (0,1), (1,1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exceptions import CapacityError
from .gf import FieldElement, FieldSpec

#: Default cap on q^n for full enumeration.
MAX_VECTORS = 1024


@dataclass(frozen=True)
class FqVector:
    coords: tuple[FieldElement, ...]
    index: int

    @property
    def n(self) -> int:
        return len(self.coords)

    def codes(self, spec: FieldSpec) -> tuple[int, ...]:
        return tuple(spec.encode(c) for c in self.coords)

    def is_null(self) -> bool:
        return self.index == 0


@dataclass(frozen=True)
class SubspacePartition:
    """Nonzero vectors grouped by the 1-dimensional subspace they span.

    ``classes[i]`` holds vector indices in increasing order; its first entry
    is the representative. Classes are ordered by representative.
    """

    classes: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def vector_from_index(index: int, spec: FieldSpec, n: int) -> FqVector:
    q = spec.q
    return FqVector(tuple(spec.element((index // q ** i) % q) for i in range(n)), index)


def vector_from_codes(codes: Sequence[int], spec: FieldSpec) -> FqVector:
    q = spec.q
    index = sum(c * q ** i for i, c in enumerate(codes))
    return FqVector(tuple(spec.element(c) for c in codes), index)


def enumerate_vectors(spec: FieldSpec, n: int, max_vectors: int = MAX_VECTORS) -> list[FqVector]:
    if n < 1:
        raise ValueError(f"dimension must be at least 1, got {n}")
    size = spec.q ** n
    if size > max_vectors:
        raise CapacityError(f"q^n = {size} exceeds the vector bound {max_vectors}")
    return [vector_from_index(i, spec, n) for i in range(size)]


def scalar_mul(lam: FieldElement, v: FqVector, spec: FieldSpec) -> FqVector:
    c = spec.encode(lam)
    return vector_from_codes([spec.mul_enc(c, x) for x in v.codes(spec)], spec)


def _rank_le_one(a: Sequence[int], b: Sequence[int], spec: FieldSpec) -> bool:
    # every 2x2 minor a_i b_j - a_j b_i vanishes
    mul, sub = spec.mul_enc, spec.sub_enc
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if sub(mul(a[i], b[j]), mul(a[j], b[i])):
                return False
    return True


def is_dependent(u: FqVector, v: FqVector, spec: FieldSpec) -> bool:
    """True iff u != v and some nontrivial combination of u, v vanishes.

    Two vectors are dependent exactly when the 2 x n matrix [u; v] has rank
    at most one, which covers the null vector without a special case.
    """
    if u.index == v.index:
        return False
    return _rank_le_one(u.codes(spec), v.codes(spec), spec)


def partition_subspaces(vectors: Sequence[FqVector], spec: FieldSpec) -> SubspacePartition:
    q = spec.q
    nonzero_scalars = range(1, q)
    assigned = set()
    classes = []
    for v in vectors:
        if v.index == 0 or v.index in assigned:
            continue
        codes = v.codes(spec)
        members = set()
        for lam in nonzero_scalars:
            members.add(sum(spec.mul_enc(lam, c) * q ** i for i, c in enumerate(codes)))
        assigned |= members
        classes.append(tuple(sorted(members)))
    classes.sort(key=lambda c: c[0])
    return SubspacePartition(tuple(classes))
