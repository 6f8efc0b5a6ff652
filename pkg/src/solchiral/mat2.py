"""Exact 2x2 integer matrices of determinant +1 or -1."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise DomainError(f"determinant of {self.rows()} is not +1 or -1")

    @classmethod
    def of(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Mat2":
        e = self.det  # e == 1/e for e in {1, -1}
        return Mat2(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = IDENTITY
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def mod2_is_identity(self) -> bool:
        return self.a % 2 == 1 and self.d % 2 == 1 and self.b % 2 == 0 and self.c % 2 == 0

    def to_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    def __str__(self):
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


IDENTITY = Mat2(1, 0, 0, 1)
# swap of coordinates, det -1
W = Mat2(0, 1, 1, 0)
S = Mat2(0, -1, 1, 0)
T = Mat2(1, 1, 0, 1)


def parse_matrix(text: str) -> Mat2:
    """Parse ``"a b c d"`` (row-major) or a JSON object with keys a, b, c, d.

    Raises ``MatrixParseError`` for malformed text and ``DomainError`` when
    the determinant is not +-1.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
            vals = [obj[k] for k in "abcd"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise MatrixParseError(f"bad JSON matrix: {text!r}") from exc
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
            raise MatrixParseError(f"matrix entries must be integers: {text!r}")
    else:
        parts = text.replace(",", " ").split()
        if len(parts) != 4:
            raise MatrixParseError(f"expected four integers, got {text!r}")
        try:
            vals = [int(p) for p in parts]
        except ValueError as exc:
            raise MatrixParseError(f"expected four integers, got {text!r}") from exc
    return Mat2(*vals)


class MatrixParseError(ValueError):
    pass
