"""Arithmetic in GF(p^k).

Elements are residues of Z_p[x] modulo a monic irreducible polynomial of
degree k. Every element has a canonical integer encoding
``sum(coeffs[i] * p**i)`` in ``[0, q)``; the encoding drives vertex order
everywhere downstream, so it is kept stable.

>>> F = FieldSpec.create(2, 2)
>>> F.modulus
(1, 1, 1)
>>> w = F.element(2)
>>> mul(w, w, F).encoding(F.p)
3
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .exceptions import InvalidFieldError

#: Above this order the field tables are not precomputed.
TABLE_LIMIT = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


# -- polynomials over Z_p, ascending coefficient tuples ---------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m over Z_p."""
    r = [c % p for c in a]
    dm = len(m) - 1
    for i in range(len(r) - 1, dm - 1, -1):
        c = r[i]
        if c:
            for j in range(dm + 1):
                r[i - dm + j] = (r[i - dm + j] - c * m[j]) % p
    return _trim(r[:dm])


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * lead_inv % p
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return _trim(quot), _trim(a[:db])


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1 .. deg/2."""
    f = _trim([c % p for c in poly])
    d = len(f) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not _poly_divmod(f, list(low) + [1], p)[1]:
                return False
    return True


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible polynomial of degree k over Z_p.

    Candidates are ordered by their base-p integer encoding, i.e. compared
    from the leading coefficient down. For k = 1 this is ``x``.
    """
    if not is_prime(p):
        raise InvalidFieldError(f"p must be prime, got {p}")
    if k < 1:
        raise InvalidFieldError(f"extension degree must be positive, got {k}")
    for low in range(p ** k):
        coeffs = [(low // p ** i) % p for i in range(k)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("unreachable: irreducibles exist in every degree")


# -- field ------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """A residue class, stored as its k reduced coefficients (ascending)."""

    coeffs: tuple[int, ...]

    def encoding(self, p: int) -> int:
        return sum(c * p ** i for i, c in enumerate(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


@dataclass(frozen=True)
class FieldSpec:
    """A presentation of GF(p^k). Immutable; validated on construction."""

    p: int
    k: int
    modulus: tuple[int, ...]
    q: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise InvalidFieldError(f"p must be prime, got {self.p}")
        if self.k < 1:
            raise InvalidFieldError(f"extension degree must be positive, got {self.k}")
        object.__setattr__(self, "modulus", tuple(int(c) for c in self.modulus))
        m = self.modulus
        if len(m) != self.k + 1 or m[-1] != 1 or any(not 0 <= c < self.p for c in m):
            raise InvalidFieldError(
                f"modulus must be monic of degree {self.k} with coefficients in [0, {self.p})")
        if not is_irreducible(m, self.p):
            raise InvalidFieldError(f"modulus {list(m)} is reducible over Z_{self.p}")
        object.__setattr__(self, "q", self.p ** self.k)

    @classmethod
    def create(cls, p: int, k: int = 1, modulus: Iterable[int] | None = None) -> FieldSpec:
        if modulus is None:
            modulus = find_irreducible(p, k)
        return cls(p, k, tuple(modulus))

    # element <-> encoding
    def element(self, enc: int) -> FieldElement:
        if not 0 <= enc < self.q:
            raise ValueError(f"encoding {enc} out of range for GF({self.q})")
        return FieldElement(tuple((enc // self.p ** i) % self.p for i in range(self.k)))

    def encode(self, e: FieldElement) -> int:
        return e.encoding(self.p)

    @property
    def zero(self) -> FieldElement:
        return FieldElement((0,) * self.k)

    @property
    def one(self) -> FieldElement:
        return FieldElement((1,) + (0,) * (self.k - 1))

    def _pad(self, coeffs: Sequence[int]) -> FieldElement:
        return FieldElement(tuple(coeffs) + (0,) * (self.k - len(coeffs)))

    # encoded-integer arithmetic, table driven for small fields
    @cached_property
    def add_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.encode(add(self.element(a), self.element(b), self))
                           for b in range(self.q)) for a in range(self.q))

    @cached_property
    def mul_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.encode(mul(self.element(a), self.element(b), self))
                           for b in range(self.q)) for a in range(self.q))

    @cached_property
    def neg_table(self) -> tuple[int, ...]:
        return tuple(self.encode(neg(self.element(a), self)) for a in range(self.q))

    def add_enc(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return self.add_table[a][b]
        return self.encode(add(self.element(a), self.element(b), self))

    def mul_enc(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return self.mul_table[a][b]
        return self.encode(mul(self.element(a), self.element(b), self))

    def sub_enc(self, a: int, b: int) -> int:
        if self.q <= TABLE_LIMIT:
            return self.add_table[a][self.neg_table[b]]
        return self.encode(sub(self.element(a), self.element(b), self))

    def to_dict(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> FieldSpec:
        return cls(int(d["p"]), int(d["k"]), tuple(d["modulus"]))

    @classmethod
    def from_json(cls, text: str) -> FieldSpec:
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, k={self.k}, modulus={list(self.modulus)})"


def add(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    return FieldElement(tuple((x + y) % spec.p for x, y in zip(a.coeffs, b.coeffs)))


def neg(a: FieldElement, spec: FieldSpec) -> FieldElement:
    return FieldElement(tuple(-x % spec.p for x in a.coeffs))


def sub(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    return FieldElement(tuple((x - y) % spec.p for x, y in zip(a.coeffs, b.coeffs)))


def mul(a: FieldElement, b: FieldElement, spec: FieldSpec) -> FieldElement:
    prod = _poly_mul(_trim(list(a.coeffs)), _trim(list(b.coeffs)), spec.p)
    return spec._pad(_poly_mod(prod, spec.modulus, spec.p))


def inv(a: FieldElement, spec: FieldSpec) -> FieldElement:
    """Multiplicative inverse by the extended Euclidean algorithm in Z_p[x]."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in GF(%d)" % spec.q)
    p = spec.p
    r0, r1 = list(spec.modulus), _trim(list(a.coeffs))
    s0, s1 = [], [1]
    while r1:
        quot, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
    # r0 is a nonzero constant because the modulus is irreducible
    c = pow(r0[0], -1, p)
    return spec._pad(_poly_mod([x * c for x in s0], spec.modulus, p))


def enumerate_field(spec: FieldSpec) -> list[FieldElement]:
    """All q elements in increasing encoding order (0, 1, ...)."""
    return [spec.element(e) for e in range(spec.q)]
