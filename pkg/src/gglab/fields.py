"""Exact scalar fields: prime fields F_p and the rationals.

All arithmetic in the package is exact.  F_p elements are canonical
integers in 0..p-1 held in int64 numpy arrays; rational elements are
``fractions.Fraction`` values held in object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
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


@dataclass(frozen=True)
class Field:
    """A prime field F_p (kind="Fp") or the rationals (kind="Q")."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "Fp":
            if not _is_prime(self.p):
                raise FieldError(f"{self.p} is not prime")
        elif self.kind == "Q":
            if self.p:
                raise FieldError("rational field takes no modulus")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @property
    def modular(self) -> bool:
        return self.kind == "Fp"

    @property
    def dtype(self):
        return np.int64 if self.modular else object

    # -- array constructors -------------------------------------------------

    def zeros(self, shape) -> np.ndarray:
        if self.modular:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def array(self, rows) -> np.ndarray:
        if self.modular:
            return np.array(rows, dtype=np.int64) % self.p
        a = np.array([[Fraction(x) for x in r] for r in rows], dtype=object)
        return a

    def vector(self, entries) -> np.ndarray:
        if self.modular:
            return np.array(entries, dtype=np.int64) % self.p
        return np.array([Fraction(x) for x in entries], dtype=object)

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p if self.modular else arr

    # -- scalars -------------------------------------------------------------

    @property
    def zero(self):
        return 0 if self.modular else Fraction(0)

    @property
    def one(self):
        return 1 if self.modular else Fraction(1)

    def inv(self, a):
        if self.modular:
            a = int(a) % self.p
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, self.p - 2, self.p)
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    # -- (de)serialization ----------------------------------------------------

    def parse_scalar(self, v):
        """Instance-file scalar: an int, or "a/b" for rationals."""
        if isinstance(v, str):
            if self.modular:
                raise FieldError(f"fraction string {v!r} in a prime-field instance")
            num, _, den = v.partition("/")
            return Fraction(int(num), int(den) if den else 1)
        if isinstance(v, bool) or not isinstance(v, int):
            raise FieldError(f"bad scalar {v!r}")
        return v % self.p if self.modular else Fraction(v)

    def scalar_json(self, v):
        if self.modular:
            return int(v) % self.p
        v = Fraction(v)
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    def vector_json(self, vec) -> list:
        return [self.scalar_json(x) for x in vec]

    def matrix_json(self, mat) -> list:
        return [self.vector_json(r) for r in mat]

    def to_json(self) -> dict:
        return {"kind": "Fp", "p": self.p} if self.modular else {"kind": "Q"}

    @staticmethod
    def from_json(d: dict) -> "Field":
        kind = d.get("kind")
        if kind == "Fp":
            return Field("Fp", int(d.get("p", 0)))
        if kind == "Q":
            return Field("Q")
        raise FieldError(f"unknown field kind {kind!r}")
