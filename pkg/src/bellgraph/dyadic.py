"""Exact dyadic rationals: integers divided by a power of two.

Every Bell value and LHV bound in this package is an integer over 2^n, so
dyadics close under the arithmetic we need and all golden-value tests are
exact equality tests. No floats anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    num: int
    log2_den: int = 0

    def __post_init__(self):
        if self.log2_den < 0:
            raise ValueError("negative denominator exponent")
        num, l2d = self.num, self.log2_den
        if num == 0:
            l2d = 0
        else:
            while l2d > 0 and num % 2 == 0:
                num //= 2
                l2d -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2_den", l2d)

    @property
    def den(self) -> int:
        return 1 << self.log2_den

    def _pair(self, other) -> tuple[int, int, int]:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        l2d = max(self.log2_den, other.log2_den)
        a = self.num << (l2d - self.log2_den)
        b = other.num << (l2d - other.log2_den)
        return a, b, l2d

    def __eq__(self, other) -> bool:
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b, _ = pair
        return a == b

    def __lt__(self, other) -> bool:
        pair = self._pair(other)
        if pair is NotImplemented:
            return NotImplemented
        a, b, _ = pair
        return a < b

    def __hash__(self) -> int:
        return hash((self.num, self.log2_den))

    def __add__(self, other) -> "Dyadic":
        a, b, l2d = self._pair(other)
        return Dyadic(a + b, l2d)

    __radd__ = __add__

    def __sub__(self, other) -> "Dyadic":
        a, b, l2d = self._pair(other)
        return Dyadic(a - b, l2d)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.log2_den)

    def __mul__(self, other) -> "Dyadic":
        if isinstance(other, int):
            other = Dyadic(other)
        return Dyadic(self.num * other.num, self.log2_den + other.log2_den)

    __rmul__ = __mul__

    def __float__(self) -> float:
        return self.num / self.den

    def __str__(self) -> str:
        if self.log2_den == 0:
            return str(self.num)
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.log2_den})"

    def to_json(self) -> dict:
        return {"num": self.num, "log2_den": self.log2_den}

    @classmethod
    def from_json(cls, obj: dict) -> "Dyadic":
        return cls(int(obj["num"]), int(obj["log2_den"]))

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse 'p/q' or 'p' with q a power of two."""
        text = text.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            den = int(q)
            if den <= 0 or den & (den - 1):
                raise ValueError(f"denominator {q} is not a power of two")
            return cls(int(p), den.bit_length() - 1)
        return cls(int(text))
