"""Coefficient fields: the rationals or a prime field F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import DenominatorDivisibleByP

Scalar = Union[Fraction, int]


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


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic 0 means Q (Fraction scalars); a prime p means F_p (ints in [0, p))."""

    characteristic: int = 0

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or c < 0 or (c > 0 and not is_prime(c)):
            raise ValueError(f"characteristic must be 0 or a prime, got {c!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    def coerce(self, x) -> Scalar:
        """Map an int, Fraction or "a/b" string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            num, den = x.numerator, x.denominator
            if den % p == 0:
                raise DenominatorDivisibleByP(x, p)
            return num * pow(den, -1, p) % p
        if isinstance(x, int):
            return x % p
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def zero(self) -> Scalar:
        return Fraction(0) if self.characteristic == 0 else 0

    def one(self) -> Scalar:
        return Fraction(1) if self.characteristic == 0 else 1

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else a * b % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def format(self, x) -> Union[str, int]:
        """Wire format: "a/b" in lowest terms (or "a") over Q, an int in [0, p) over F_p."""
        if self.characteristic == 0:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return int(x) % self.characteristic

    def to_json(self) -> dict:
        return {"char": self.characteristic}

    @classmethod
    def from_json(cls, data) -> "FieldSpec":
        if isinstance(data, int):
            return cls(data)
        return cls(int(data.get("char", data.get("characteristic", 0))))

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec(0)
