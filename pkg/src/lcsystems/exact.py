"""Exact arithmetic in Q(sqrt(k1), ..., sqrt(km)).

An element is stored as a sparse sum  q_1*sqrt(k_1) + ... + q_s*sqrt(k_s)
over distinct squarefree radicands k_i (k = 1 is the rational part).
Square roots of distinct squarefree integers are linearly independent
over Q, so this representation is canonical and equality is structural.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Union

from .errors import StructuralError

Number = Union[int, Fraction, "ExactScalar"]


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, f) with n == s*s*f and f squarefree, by trial division."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, f = 1, 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        s *= d ** (e // 2)
        if e % 2:
            f *= d
        d += 1
    return s, f * n


@lru_cache(maxsize=4096)
def prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def _radical_product(a: int, b: int) -> tuple[int, int]:
    # sqrt(a)*sqrt(b) = g*sqrt(a*b/g^2) for squarefree a, b with g = gcd(a, b)
    g = math.gcd(a, b)
    return g, (a // g) * (b // g)


class ExactScalar:
    """Immutable element of a multi-quadratic extension of Q."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, value: Number | dict[int, Fraction] = 0):
        if isinstance(value, ExactScalar):
            self._terms = value._terms
        elif isinstance(value, dict):
            self._terms = tuple(
                sorted((k, Fraction(q)) for k, q in value.items() if q != 0)
            )
        elif isinstance(value, (int, Fraction)) or isinstance(value, Rational):
            q = Fraction(value)
            self._terms = ((1, q),) if q != 0 else ()
        else:
            raise TypeError(f"cannot build ExactScalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: dict[int, Fraction]) -> "ExactScalar":
        obj = cls.__new__(cls)
        obj._terms = tuple(sorted((k, q) for k, q in terms.items() if q != 0))
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, n: Number) -> "ExactScalar":
        """Square root of a nonnegative rational, reduced to squarefree form."""
        q = Fraction(n) if not isinstance(n, ExactScalar) else n.rational_value()
        if q is None or q < 0:
            raise ValueError(f"sqrt needs a nonnegative rational, got {n}")
        if q == 0:
            return cls(0)
        # sqrt(p/r) = sqrt(p*r)/r
        s, f = squarefree_decomposition(q.numerator * q.denominator)
        return cls._from_terms({f: Fraction(s, q.denominator)})

    # -- structure -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def radicands(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def rational_value(self) -> Fraction | None:
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and self._terms[0][0] == 1:
            return self._terms[0][1]
        return None

    def is_rational(self) -> tuple[bool, Fraction | None]:
        q = self.rational_value()
        return (q is not None, q)

    def key(self) -> tuple:
        """Label-free total order used for canonical forms (not numeric order)."""
        return tuple((k, q.numerator, q.denominator) for k, q in self._terms)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "ExactScalar | None":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, q in o._terms:
            out[k] = out.get(k, 0) + q
        return ExactScalar._from_terms(out)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._from_terms({k: -q for k, q in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict[int, Fraction] = {}
        for k1, q1 in self._terms:
            for k2, q2 in o._terms:
                if k1 == 1:
                    g, k = 1, k2
                elif k2 == 1:
                    g, k = 1, k1
                else:
                    g, k = _radical_product(k1, k2)
                out[k] = out.get(k, 0) + q1 * q2 * g
        return ExactScalar._from_terms(out)

    __rmul__ = __mul__

    def conjugate(self, p: int) -> "ExactScalar":
        """Image under the automorphism sqrt(p) -> -sqrt(p) for a prime p."""
        return ExactScalar._from_terms(
            {k: (-q if k % p == 0 else q) for k, q in self._terms}
        )

    def primes(self) -> tuple[int, ...]:
        ps: set[int] = set()
        for k, _ in self._terms:
            if k > 1:
                ps.update(prime_factors(k))
        return tuple(sorted(ps))

    def norm_and_cofactor(self) -> tuple[Fraction, "ExactScalar"]:
        """Return (N, c) with self*c == N rational; N is the field norm up to powers."""
        y, cof = self, ExactScalar(1)
        for p in self.primes():
            c = y.conjugate(p)
            cof = cof * c
            y = y * c
        n = y.rational_value()
        assert n is not None, "conjugate product failed to reach Q"
        return n, cof

    def inverse(self) -> "ExactScalar":
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        q = self.rational_value()
        if q is not None:
            return ExactScalar(1 / q)
        n, cof = self.norm_and_cofactor()
        return cof * Fraction(1, 1) / n

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1) / Fraction(other)
            return ExactScalar._from_terms({k: q * inv for k, q in self._terms})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out, base = ExactScalar(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, ExactScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.rational_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            q = self.rational_value()
            self._hash = hash(q) if q is not None else hash(self._terms)
        return self._hash

    def __lt__(self, other):
        return sign_of(self - other) < 0

    def __le__(self, other):
        return sign_of(self - other) <= 0

    def __gt__(self, other):
        return sign_of(self - other) > 0

    def __ge__(self, other):
        return sign_of(self - other) >= 0

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        return float(sum(float(q) * math.sqrt(k) for k, q in self._terms))

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, q in self._terms:
            if k == 1:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"sqrt({k})")
            else:
                parts.append(f"{q}*sqrt({k})")
        return " + ".join(parts).replace("+ -", "- ")


def as_exact(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def _sqrt_bounds(k: int, bits: int) -> tuple[int, int]:
    """Integers lo, hi with lo/2^bits <= sqrt(k) <= hi/2^bits."""
    r = math.isqrt(k << (2 * bits))
    return r, r if r * r == (k << (2 * bits)) else r + 1


def _interval(terms, bits: int) -> tuple[Fraction, Fraction]:
    lo = hi = Fraction(0)
    scale = 1 << bits
    for k, q in terms:
        if k == 1:
            lo += q
            hi += q
            continue
        a, b = _sqrt_bounds(k, bits)
        if q > 0:
            lo += q * Fraction(a, scale)
            hi += q * Fraction(b, scale)
        else:
            lo += q * Fraction(b, scale)
            hi += q * Fraction(a, scale)
    return lo, hi


def separation_bound(x: ExactScalar) -> Fraction:
    """A positive rational lower bound on |x| for nonzero x.

    |x| = |N| / prod |sigma(x)| over the nontrivial conjugates, and every
    conjugate is bounded by sum |q_k| * ceil(sqrt(k)).
    """
    n, _ = x.norm_and_cofactor()
    big = sum(abs(q) * (math.isqrt(k - 1) + 1 if k > 1 else 1) for k, q in x._terms)
    conjugates = (1 << len(x.primes())) - 1
    return abs(n) / (Fraction(big) ** conjugates)


def sign_of(x) -> int:
    """Certified sign of an exact real: -1, 0 or +1."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if not isinstance(x, ExactScalar):
        raise TypeError(f"not an exact scalar: {x!r}")
    q = x.rational_value()
    if q is not None:
        return (q > 0) - (q < 0)
    bits = 24
    floor = None
    while True:
        lo, hi = _interval(x._terms, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if floor is None and bits >= 96:
            floor = separation_bound(x)
        if floor is not None and hi - lo < floor:
            # the interval has width below |x| yet straddles 0: impossible
            raise AssertionError(f"sign refinement failed for {x}")
        bits *= 2


def is_rational(x) -> tuple[bool, Fraction | None]:
    if isinstance(x, (int, Fraction)):
        return True, Fraction(x)
    return as_exact(x).is_rational()


# -- JSON ------------------------------------------------------------------

def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_json(x) -> str | list[dict]:
    """Rational values become "p/q" strings, radical values a list of terms."""
    e = as_exact(x)
    q = e.rational_value()
    if q is not None:
        return _fraction_str(q)
    return [{"coeff": _fraction_str(c), "radicand": k} for k, c in e._terms]


def from_json(obj) -> ExactScalar:
    if isinstance(obj, bool):
        raise StructuralError(f"boolean is not a scalar: {obj!r}")
    if isinstance(obj, int):
        return ExactScalar(obj)
    if isinstance(obj, str):
        try:
            return ExactScalar(Fraction(obj.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"bad rational literal {obj!r}") from exc
    if isinstance(obj, list):
        out = ExactScalar(0)
        for term in obj:
            if not isinstance(term, dict) or "radicand" not in term or "coeff" not in term:
                raise StructuralError(f"bad radical term {term!r}")
            k = term["radicand"]
            if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                raise StructuralError(f"radicand must be a positive integer: {k!r}")
            out = out + from_json(term["coeff"]) * ExactScalar.sqrt(k)
        return out
    raise StructuralError(f"cannot read scalar from {obj!r}")


def iter_exact(values: Iterable) -> list[ExactScalar]:
    return [as_exact(v) for v in values]
