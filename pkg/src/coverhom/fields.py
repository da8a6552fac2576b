"""Exact coefficient fields: the rationals and prime fields F_p.

A field here is a lightweight descriptor that does arithmetic on raw
coefficient values: ``gmpy2.mpq`` for Q (always stored in lowest terms with
positive denominator, which mpq guarantees) and canonical ``int`` residues in
``0..p-1`` for F_p.  Containers such as Laurent polynomials and matrices carry
a field descriptor and refuse to combine values tagged with different fields.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .exceptions import FieldMismatchError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    # deterministic Miller-Rabin; this base set is exact far beyond 2**64
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Interface shared by the field descriptors."""

    char: int

    def coerce(self, value):
        raise NotImplementedError

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def to_pair(self, a) -> tuple[int, int]:
        """Return (numerator, denominator); denominator is 1 over F_p."""
        raise NotImplementedError

    def from_pair(self, num: int, den: int):
        raise NotImplementedError

    @property
    def name(self) -> str:
        raise NotImplementedError

    def require_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatchError(f"field mismatch: {self} vs {other}")


class RationalField(Field):
    """The rational numbers, with gmpy2.mpq payloads.

    >>> QQ.coerce("3/6")
    mpq(1,2)
    >>> QQ.to_pair(QQ.coerce(Fraction(-4, 6)))
    (-2, 3)
    """

    char = 0

    def coerce(self, value):
        if isinstance(value, float):
            raise TypeError("refusing to coerce a float into Q; pass a Fraction or string")
        return mpq(value)

    def zero(self):
        return mpq(0)

    def one(self):
        return mpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a) -> bool:
        return not a

    def to_pair(self, a):
        return int(a.numerator), int(a.denominator)

    def from_pair(self, num, den):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(num, den)

    @property
    def name(self):
        return "q"

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash(RationalField)


class PrimeField(Field):
    """The field F_p, with residues stored as ints in 0..p-1.

    >>> GF(5).coerce(-3)
    2
    >>> GF(5).coerce(Fraction(1, 2))
    3
    """

    def __init__(self, p: int):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 1 << 62:
            raise ValueError("p too large for single-word residues")
        self.p = p

    @property
    def char(self):
        return self.p

    def coerce(self, value):
        if isinstance(value, float):
            raise TypeError("refusing to coerce a float into F_p")
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, str):
            value = Fraction(value)
        num = int(value.numerator) % self.p
        den = int(value.denominator) % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def to_pair(self, a):
        return int(a), 1

    def from_pair(self, num, den):
        if den != 1:
            # tolerate rational input, it still has a meaning mod p
            return self.coerce(Fraction(num, den))
        return num % self.p

    @property
    def name(self):
        return f"fp:{self.p}"

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash((PrimeField, self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Prime field descriptor for F_p (cached so GF(5) is GF(5))."""
    return PrimeField(p)


def field_from_string(s: str) -> Field:
    """Parse a field descriptor string: "q" or "fp:<p>".

    >>> field_from_string("fp:7")
    GF(7)
    """
    s = s.strip().lower()
    if s == "q":
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise ValueError(f"bad field descriptor {s!r}") from None
        return GF(p)
    raise ValueError(f"bad field descriptor {s!r}; expected 'q' or 'fp:<p>'")
