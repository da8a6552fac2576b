"""Laurent polynomials over an exact field.

The ring R = F[t, t^-1] is a principal ideal domain when F is a field.  Its
units are the monomials c*t^k, and the useful notion of degree is the spread

    degree(p) = (largest exponent) - (smallest exponent),

which is additive under multiplication and gives R a Euclidean division:
for b != 0 there are q, r with a = q*b + r and r = 0 or degree(r) < degree(b).
Everything here (gcd, cyclotomic factors, normal forms) runs on that.

Instances are immutable; all arithmetic returns new objects.
"""
from __future__ import annotations

from .exceptions import FieldMismatchError, UnsupportedFieldError
from .fields import QQ, Field


class LaurentPoly:
    """A Laurent polynomial, stored as a finite map exponent -> coefficient.

    The constructor accepts anything the field can coerce as coefficients and
    drops zeros, so both of these work:

    >>> LaurentPoly(QQ, {0: -1, 1: 1})
    LaurentPoly('t - 1', QQ)
    >>> LaurentPoly(QQ, {-1: "1/2", 2: 0})
    LaurentPoly('1/2*t^-1', QQ)
    """

    __slots__ = ("field", "_c")

    def __init__(self, field: Field, coeffs=None):
        self.field = field
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = field.coerce(v)
                if not field.is_zero(v):
                    c[int(e)] = v
        self._c = c

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "LaurentPoly":
        return cls(field, {})

    @classmethod
    def one(cls, field: Field) -> "LaurentPoly":
        return cls(field, {0: 1})

    @classmethod
    def t_power(cls, field: Field, e: int, coeff=1) -> "LaurentPoly":
        return cls(field, {e: coeff})

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def items(self):
        """Coefficients as (exponent, value) pairs, ascending exponents."""
        return sorted(self._c.items())

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._c))

    def coefficient(self, e: int):
        return self._c.get(e, self.field.zero())

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    @property
    def degree(self) -> int:
        """Laurent degree: max exponent minus min exponent.

        >>> LaurentPoly(QQ, {-1: 1, 2: 3}).degree
        3
        """
        if not self._c:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(self._c) - min(self._c)

    @property
    def is_unit(self) -> bool:
        """Units of F[t, t^-1] are the single terms c*t^k."""
        return len(self._c) == 1

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.field == other.field and self._c == other._c

    def __hash__(self):
        return hash((self.field, frozenset(self._c.items())))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if self.field != other.field:
            raise FieldMismatchError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        c = dict(self._c)
        for e, v in other._c.items():
            s = F.add(c.get(e, F.zero()), v)
            if F.is_zero(s):
                c.pop(e, None)
            else:
                c[e] = s
        out = LaurentPoly.zero(F)
        out._c = c
        return out

    def __neg__(self):
        F = self.field
        out = LaurentPoly.zero(F)
        out._c = {e: F.neg(v) for e, v in self._c.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        c: dict = {}
        for ea, va in self._c.items():
            for eb, vb in other._c.items():
                e = ea + eb
                s = F.add(c.get(e, F.zero()), F.mul(va, vb))
                if F.is_zero(s):
                    c.pop(e, None)
                else:
                    c[e] = s
        out = LaurentPoly.zero(F)
        out._c = c
        return out

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only exist for units; use shift/scale")
        out = LaurentPoly.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "LaurentPoly":
        """Multiply by a field constant."""
        F = self.field
        c = F.coerce(c)
        if F.is_zero(c):
            return LaurentPoly.zero(F)
        out = LaurentPoly.zero(F)
        out._c = {e: F.mul(v, c) for e, v in self._c.items()}
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        out = LaurentPoly.zero(self.field)
        out._c = {e + int(k): v for e, v in self._c.items()}
        return out

    def evaluate(self, z):
        """Evaluate at a field element z (z != 0 if negative exponents occur)."""
        F = self.field
        z = F.coerce(z)
        acc = F.zero()
        zinv = None
        for e, v in self._c.items():
            if e >= 0:
                w = F.one()
                for _ in range(e):
                    w = F.mul(w, z)
            else:
                if zinv is None:
                    zinv = F.inv(z)
                w = F.one()
                for _ in range(-e):
                    w = F.mul(w, zinv)
            acc = F.add(acc, F.mul(v, w))
        return acc

    # -- normal forms --------------------------------------------------------

    def unit_part(self) -> "LaurentPoly":
        """The unit u = c*t^k with self = u * self.normalize()."""
        if not self._c:
            raise ValueError("zero polynomial has no unit part")
        return LaurentPoly(self.field, {self.min_exp: self._c[self.max_exp]})

    def normalize(self) -> "LaurentPoly":
        """Canonical associate: monic, smallest exponent 0, constant term != 0.

        >>> LaurentPoly(QQ, {1: 4, 3: 2}).normalize()
        LaurentPoly('t^2 + 2', QQ)
        """
        if not self._c:
            return self
        F = self.field
        lead_inv = F.inv(self._c[self.max_exp])
        m = self.min_exp
        out = LaurentPoly.zero(F)
        out._c = {e - m: F.mul(v, lead_inv) for e, v in self._c.items()}
        return out

    # -- serialization and display -------------------------------------------

    def to_json(self) -> list:
        """Ascending [exponent, numerator, denominator] triples."""
        F = self.field
        return [[e, *F.to_pair(v)] for e, v in self.items()]

    @classmethod
    def from_json(cls, field: Field, data) -> "LaurentPoly":
        coeffs = {}
        last = None
        for triple in data:
            if len(triple) != 3:
                raise ValueError(f"bad coefficient triple {triple!r}")
            e, num, den = triple
            e = int(e)
            if last is not None and e <= last:
                raise ValueError("exponents must be strictly ascending")
            last = e
            v = field.from_pair(int(num), int(den))
            if field.is_zero(v):
                raise ValueError("zero coefficients are not stored")
            coeffs[e] = v
        return cls(field, coeffs)

    def __str__(self):
        if not self._c:
            return "0"
        F = self.field
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            num, den = F.to_pair(v)
            neg = num < 0
            num = abs(num)
            coeff = str(num) if den == 1 else f"{num}/{den}"
            if e == 0:
                term = coeff
            else:
                tpow = "t" if e == 1 else f"t^{e}"
                term = tpow if coeff == "1" else f"{coeff}*{tpow}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r}, {self.field!r})"


# -- module-level operations -------------------------------------------------


def laurent_degree(p: LaurentPoly) -> int:
    """Degree (exponent spread) of a nonzero Laurent polynomial."""
    return p.degree


def laurent_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division: a = q*b + r with r = 0 or degree(r) < degree(b).

    Shift both operands to ordinary polynomials with nonzero constant term,
    divide there, and shift the quotient back.
    """
    a._check(b)
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    F = a.field
    if a.is_zero:
        return LaurentPoly.zero(F), LaurentPoly.zero(F)
    ma, mb = a.min_exp, b.min_exp
    da, db = a.degree, b.degree
    if da < db:
        return LaurentPoly.zero(F), a
    # dense ascending coefficient lists of the shifted ordinary polynomials
    A = [F.zero()] * (da + 1)
    for e, v in a._c.items():
        A[e - ma] = v
    B = [F.zero()] * (db + 1)
    for e, v in b._c.items():
        B[e - mb] = v
    inv_lead = F.inv(B[db])
    Q = [F.zero()] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = F.mul(A[i + db], inv_lead)
        if F.is_zero(c):
            continue
        Q[i] = c
        for j in range(db + 1):
            A[i + j] = F.sub(A[i + j], F.mul(c, B[j]))
    q = LaurentPoly(F, {i + ma - mb: c for i, c in enumerate(Q)})
    r = LaurentPoly(F, {i + ma: c for i, c in enumerate(A[:db])})
    return q, r


def divides(a: LaurentPoly, b: LaurentPoly) -> bool:
    """Whether a divides b in F[t, t^-1] (units divide everything)."""
    if a.is_zero:
        return b.is_zero
    if b.is_zero:
        return True
    return laurent_divmod(b, a)[1].is_zero


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    q, r = laurent_divmod(a, b)
    if not r.is_zero:
        raise ValueError(f"{b} does not divide {a}")
    return q


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Normalized gcd (monic, smallest exponent 0, nonzero constant term).

    >>> t = LaurentPoly.t_power(QQ, 1)
    >>> one = LaurentPoly.one(QQ)
    >>> laurent_gcd(t**2 - one, t - one)
    LaurentPoly('t - 1', QQ)
    """
    a._check(b)
    if a.is_zero and b.is_zero:
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, laurent_divmod(a, b)[1]
    return a.normalize()


def totient(k: int) -> int:
    """Euler's totient, by trial-division factorization."""
    if k < 1:
        raise ValueError("totient needs a positive integer")
    out = 1
    n = k
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            out *= d - 1
            while n % d == 0:
                n //= d
                out *= d
        d += 1
    if n > 1:
        out *= n - 1
    return out


_cyclotomic_cache: dict[int, LaurentPoly] = {}


def cyclotomic(k: int, field: Field = QQ) -> LaurentPoly:
    """The k-th cyclotomic polynomial Phi_k over Q.

    Computed by exact division: Phi_k = (t^k - 1) / prod_{d | k, d < k} Phi_d.

    >>> cyclotomic(6)
    LaurentPoly('t^2 - t + 1', QQ)
    """
    if field.char != 0:
        raise UnsupportedFieldError("cyclotomic polynomials are computed over Q")
    k = int(k)
    if k < 1:
        raise ValueError("cyclotomic index must be positive")
    if k not in _cyclotomic_cache:
        num = LaurentPoly(QQ, {k: 1, 0: -1})
        for d in range(1, k):
            if k % d == 0:
                num = exact_div(num, cyclotomic(d))
        _cyclotomic_cache[k] = num
    return _cyclotomic_cache[k]


def cyclotomic_orders(p: LaurentPoly) -> frozenset[int]:
    """All k such that Phi_k divides p, for p over Q.

    Complete because deg Phi_k = totient(k) and totient(k) >= sqrt(k/2), so
    scanning k <= 2*deg(p)^2 covers every candidate.

    >>> t = LaurentPoly.t_power(QQ, 1)
    >>> one = LaurentPoly.one(QQ)
    >>> sorted(cyclotomic_orders((t - one) * (t**2 + one)))
    [1, 4]
    """
    if p.field.char != 0:
        raise UnsupportedFieldError("cyclotomic order analysis runs over Q")
    if p.is_zero:
        raise ValueError("every cyclotomic polynomial divides 0")
    n = p.degree
    out = set()
    for k in range(1, 2 * n * n + 2):
        if totient(k) <= n and divides(cyclotomic(k), p):
            out.add(k)
    return frozenset(out)
