"""Dense univariate polynomials with arbitrary-precision integer coefficients."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _strip(c: Sequence) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class ExactPoly:
    """Coefficients in ascending degree; the zero polynomial is ``()``.

    >>> str(ExactPoly.from_roots([1, -1]))
    'x^2 - 1'
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int]):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def x(cls) -> ExactPoly:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> ExactPoly:
        return cls((c,))

    @classmethod
    def linear(cls, root: int) -> ExactPoly:
        """``x - root``."""
        return cls((-root, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> ExactPoly:
        out = cls((1,))
        for r in roots:
            out = out * cls.linear(r)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: ExactPoly) -> ExactPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactPoly(self[i] + other[i] for i in range(n))

    def __neg__(self) -> ExactPoly:
        return ExactPoly(-c for c in self.coeffs)

    def __sub__(self, other: ExactPoly) -> ExactPoly:
        return self + (-other)

    def __mul__(self, other: ExactPoly | int) -> ExactPoly:
        if isinstance(other, int):
            return ExactPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ExactPoly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return ExactPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ExactPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = ExactPoly((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> ExactPoly:
        return ExactPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def divmod_monic(self, d: ExactPoly) -> tuple[ExactPoly, ExactPoly]:
        """Division by a monic polynomial, exact over Z."""
        if not d.is_monic():
            raise ValueError("divisor must be monic")
        r = list(self.coeffs)
        dd = d.degree
        if len(r) - 1 < dd:
            return ExactPoly(()), self
        quot = [0] * (len(r) - dd)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c:
                quot[i - dd] = c
                for j, dj in enumerate(d.coeffs):
                    r[i - dd + j] -= c * dj
        return ExactPoly(quot), ExactPoly(r[:dd])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> ExactPoly:
        return cls(int(c) for c in d["coeffs"])

    @classmethod
    def from_json(cls, text: str) -> ExactPoly:
        return cls.from_dict(json.loads(text))


# -- rational helpers for square-free decomposition --------------------------

def _qstrip(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _qdivmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    quot = [Fraction(0)] * (len(a) - db)
    lead = b[-1]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        if c:
            quot[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return _qstrip(quot), _qstrip(a[:db])


def _qmonic(a: list[Fraction]) -> list[Fraction]:
    lead = a[-1]
    return [c / lead for c in a]


def _qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _qstrip(list(a)), _qstrip(list(b))
    while b:
        a, b = b, _qdivmod(a, b)[1]
    return _qmonic(a)


def _qderiv(a: list[Fraction]) -> list[Fraction]:
    return _qstrip([i * c for i, c in enumerate(a) if i])


def _qsub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    return _qstrip([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def squarefree_decomposition(f: ExactPoly) -> list[tuple[ExactPoly, int]]:
    """Yun's algorithm: monic square-free factors with their multiplicities.

    f must be monic. Factors are returned with integer coefficients (Gauss's
    lemma guarantees this for monic integer f).
    """
    if not f.is_monic():
        raise ValueError("squarefree_decomposition expects a monic polynomial")
    if f.degree < 1:
        return []
    a = [Fraction(c) for c in f.coeffs]
    da = _qderiv(a)
    g = _qgcd(a, da)
    b = _qdivmod(a, g)[0]
    c = _qdivmod(da, g)[0]
    d = _qsub(c, _qderiv(b))
    out = []
    i = 1
    while len(b) > 1:
        h = _qgcd(b, d) if d else _qmonic(b)
        if len(h) > 1:
            out.append((ExactPoly(int(x) for x in h), i))
        b = _qdivmod(b, h)[0]
        c = _qdivmod(d, h)[0] if d else []
        d = _qsub(c, _qderiv(b))
        i += 1
    return out
