"""Exact nonnegative real numbers of the form (rational)^(1/n).

Products with matching roots stay exact, which is what keeps level products
like V_1 * ... * V_s equal to their rational closed form with no rounding.
"""

import math
from fractions import Fraction


def _nth_root_floor(fr: Fraction, n: int) -> int:
    """floor(fr^(1/n)) for fr >= 0."""
    if fr < 0:
        raise ValueError("negative radicand")
    k = round(math.exp(math.log(float(fr) if fr < 10**300 else 10**300) / n)) if fr > 0 else 0
    k = max(k, 0)
    while Fraction(k + 1) ** n <= fr:
        k += 1
    while k > 0 and Fraction(k) ** n > fr:
        k -= 1
    return k


class Surd:
    """radicand^(1/index) with an exact rational radicand >= 0."""

    __slots__ = ("radicand", "index")

    def __init__(self, radicand, index: int = 1):
        r = Fraction(radicand)
        if r < 0:
            raise ValueError("radicand must be nonnegative")
        if index < 1:
            raise ValueError("index must be >= 1")
        self.radicand = r
        self.index = index

    @staticmethod
    def _lift(value) -> "Surd":
        if isinstance(value, Surd):
            return value
        return Surd(Fraction(value), 1)

    def __mul__(self, other):
        o = Surd._lift(other)
        n = math.lcm(self.index, o.index)
        rad = self.radicand ** (n // self.index) * o.radicand ** (n // o.index)
        return Surd(rad, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Surd._lift(other)
        if o.radicand == 0:
            raise ZeroDivisionError("division by zero")
        n = math.lcm(self.index, o.index)
        rad = self.radicand ** (n // self.index) / o.radicand ** (n // o.index)
        return Surd(rad, n)

    def __pow__(self, e: int):
        if e < 0:
            return Surd(1) / self**-e
        return Surd(self.radicand**e, self.index)

    def _cmp(self, other) -> int:
        o = Surd._lift(other)
        left = self.radicand ** o.index
        right = o.radicand**self.index
        if left == right:
            return 0
        return -1 if left < right else 1

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, (Surd, int, Fraction)):
            return self._cmp(other) == 0
        if isinstance(other, float):
            return self._cmp(Fraction(other)) == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.radicand, self.index))

    def floor(self) -> int:
        return _nth_root_floor(self.radicand, self.index)

    def is_rational(self) -> bool:
        return self.index == 1 or self.radicand in (0, 1)

    def as_fraction(self) -> Fraction:
        if self.index == 1:
            return self.radicand
        k = _nth_root_floor(self.radicand, self.index)
        if Fraction(k) ** self.index == self.radicand:
            return Fraction(k)
        raise ValueError(f"{self!r} is irrational")

    def __float__(self) -> float:
        if self.radicand == 0:
            return 0.0
        ln = math.log(self.radicand.numerator) - math.log(self.radicand.denominator)
        return math.exp(ln / self.index)

    def __repr__(self):
        if self.index == 1:
            return f"Surd({self.radicand})"
        return f"Surd({self.radicand})^(1/{self.index})"
