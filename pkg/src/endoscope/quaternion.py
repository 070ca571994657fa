"""Quaternion algebras B = (alpha, beta / F) over totally real number fields.

Basis 1, i, j, k with i^2 = alpha, j^2 = beta, ij = k = -ji.  Elements carry
exact base-field coordinates; reduced trace, norm and characteristic
polynomials are exact.  Definiteness is certified from embedding signs.

Division-ness is not decided in general.  The module offers three sound
partial answers: totally definite algebras are division algebras; over base
field Q the Hilbert symbol decides exactly; elsewhere a bounded search for an
isotropic vector of the norm form can prove "split" but never "division".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .errors import PrecisionExhausted, ValidationError
from .linalgq import _interpolate
from .numfield import NFElement, NumberField, is_totally_real
from .qpoly import QPoly

TOTALLY_DEFINITE = "TotallyDefinite"
TOTALLY_INDEFINITE = "TotallyIndefinite"
MIXED = "Mixed"


@dataclass(frozen=True)
class DefinitenessReport:
    kind: str
    per_embedding_signs: tuple[tuple[int, int], ...]


class QuatAlgebra:
    def __init__(self, base: NumberField, alpha, beta):
        self.base = base
        self.alpha = base.element(alpha)
        self.beta = base.element(beta)
        if self.alpha.is_zero or self.beta.is_zero:
            raise ValidationError("alpha and beta must be nonzero")
        if not is_totally_real(base):
            raise ValidationError("quaternion base field must be totally real")

    def __repr__(self):
        return f"QuatAlgebra(alpha={self.alpha.poly!r}, beta={self.beta.poly!r} over {self.base!r})"

    def __eq__(self, other):
        return (
            isinstance(other, QuatAlgebra)
            and self.base == other.base
            and self.alpha == other.alpha
            and self.beta == other.beta
        )

    def __hash__(self):
        return hash((self.base, self.alpha, self.beta))

    def element(self, a=0, b=0, c=0, d=0) -> QuatElement:
        return QuatElement(self, self.base.element(a), self.base.element(b), self.base.element(c), self.base.element(d))

    def zero(self) -> QuatElement:
        return self.element()

    def one(self) -> QuatElement:
        return self.element(1)

    def gen_i(self) -> QuatElement:
        return self.element(0, 1)

    def gen_j(self) -> QuatElement:
        return self.element(0, 0, 1)

    def gen_k(self) -> QuatElement:
        return self.element(0, 0, 0, 1)

    def to_json(self) -> dict:
        return {
            "base_minpoly": self.base.minpoly.to_json(),
            "alpha": self.alpha.poly.to_json(),
            "beta": self.beta.poly.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> QuatAlgebra:
        for key in ("base_minpoly", "alpha", "beta"):
            if key not in data:
                raise ValidationError(f"quaternion algebra JSON is missing '{key}'")
        base = NumberField(QPoly.from_json(data["base_minpoly"]))
        return cls(base, QPoly.from_json(data["alpha"]), QPoly.from_json(data["beta"]))


class QuatElement:
    __slots__ = ("algebra", "a", "b", "c", "d")

    def __init__(self, algebra: QuatAlgebra, a: NFElement, b: NFElement, c: NFElement, d: NFElement):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuatElement is immutable")

    def __repr__(self):
        return f"QuatElement(a={self.a.poly!r}, b={self.b.poly!r}, c={self.c.poly!r}, d={self.d.poly!r})"

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero and self.c.is_zero and self.d.is_zero

    @property
    def is_central(self) -> bool:
        return self.b.is_zero and self.c.is_zero and self.d.is_zero

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.element(other)
        return (
            isinstance(other, QuatElement)
            and self.algebra == other.algebra
            and (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        )

    def __hash__(self):
        return hash((self.algebra, self.a, self.b, self.c, self.d))

    def _coerce(self, other) -> QuatElement:
        if isinstance(other, QuatElement):
            if other.algebra != self.algebra:
                raise ValidationError("elements of different quaternion algebras")
            return other
        if isinstance(other, (int, Fraction, NFElement)):
            return self.algebra.element(other)
        raise ValidationError(f"cannot coerce {other!r} into the algebra")

    def __add__(self, other):
        o = self._coerce(other)
        return QuatElement(self.algebra, self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QuatElement(self.algebra, -self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        o = self._coerce(other)
        al, be = self.algebra.alpha, self.algebra.beta
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return QuatElement(
            self.algebra,
            a1 * a2 + al * (b1 * b2) + be * (c1 * c2) - al * be * (d1 * d2),
            a1 * b2 + b1 * a2 - be * (c1 * d2) + be * (d1 * c2),
            a1 * c2 + c1 * a2 + al * (b1 * d2) - al * (d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
        )

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, n: int):
        if n < 0:
            raise ValidationError("negative quaternion power")
        result = self.algebra.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> QuatElement:
        return QuatElement(self.algebra, self.a, -self.b, -self.c, -self.d)

    def reduced_trace(self) -> NFElement:
        return self.a + self.a

    def reduced_norm(self) -> NFElement:
        al, be = self.algebra.alpha, self.algebra.beta
        return self.a * self.a - al * (self.b * self.b) - be * (self.c * self.c) + al * be * (self.d * self.d)

    def reduced_charpoly_base(self) -> tuple[NFElement, NFElement, NFElement]:
        """Coefficients (constant first) of x^2 - Trd x + Nrd over the base field."""
        one = self.algebra.base.one()
        return (self.reduced_norm(), -self.reduced_trace(), one)

    def reduced_charpoly_q(self) -> QPoly:
        """Monic degree-2e rational polynomial with roots sigma(t1), sigma(t2).

        Obtained as the norm form of the reduced quadratic: interpolation of
        N_{F/Q}(k^2 - Trd*k + Nrd) through 2e+1 integer points.
        """
        e = self.algebra.base.degree
        trd = self.reduced_trace()
        nrd = self.reduced_norm()
        points = []
        for k in range(2 * e + 1):
            val = (nrd - trd * k + Fraction(k * k)).norm_q()
            points.append((Fraction(k), val))
        return QPoly(_interpolate(points))

    def norm_to_q(self) -> Fraction:
        """Composite norm to Q: ordinary norm of the reduced norm."""
        return self.reduced_norm().norm_q()

    def to_json(self) -> dict:
        return {
            "a": self.a.poly.to_json(),
            "b": self.b.poly.to_json(),
            "c": self.c.poly.to_json(),
            "d": self.d.poly.to_json(),
        }


def reduced_trace_norm(x: QuatElement) -> tuple[NFElement, NFElement]:
    """(Trd(x), Nrd(x)) as a pair of base-field elements."""
    return x.reduced_trace(), x.reduced_norm()


# ---------------------------------------------------------------------------
# definiteness


def _embedding_sign(x: NFElement, index: int) -> int:
    """Certified sign of sigma(x) at the index-th embedding of a totally real field."""
    bits = 128
    while bits <= 4096:
        emb = x.embeddings(bits)[index]
        if emb.re - emb.radius > 0:
            return 1
        if emb.re + emb.radius < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted("embedding sign did not separate from zero")


def definiteness(algebra: QuatAlgebra) -> DefinitenessReport:
    """Classify by signs of (sigma(alpha), sigma(beta)) at every real place."""
    e = algebra.base.degree
    signs = tuple(
        (_embedding_sign(algebra.alpha, k), _embedding_sign(algebra.beta, k)) for k in range(e)
    )
    if all(sa < 0 and sb < 0 for sa, sb in signs):
        kind = TOTALLY_DEFINITE
    elif all(sa > 0 or sb > 0 for sa, sb in signs):
        kind = TOTALLY_INDEFINITE
    else:
        kind = MIXED
    return DefinitenessReport(kind, signs)


# ---------------------------------------------------------------------------
# Hilbert symbols over Q (exact local solvability of a x^2 + b y^2 = z^2)


def _split_val(x: Fraction, p: int) -> tuple[int, Fraction]:
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def hilbert_symbol(a: Fraction, b: Fraction, place: int | None) -> int:
    """(a, b)_v for v a prime or None for the real place."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValidationError("Hilbert symbol needs nonzero entries")
    if place is None:
        return -1 if a < 0 and b < 0 else 1
    p = place
    va, ua = _split_val(a, p)
    vb, ub = _split_val(b, p)
    if p == 2:
        def eps(u: Fraction) -> int:
            n = (u.numerator * pow(u.denominator, -1, 8)) % 8
            return ((n - 1) // 2) % 2

        def omega(u: Fraction) -> int:
            n = (u.numerator * pow(u.denominator, -1, 8)) % 8
            return ((n * n - 1) // 8) % 2

        exponent = eps(ua) * eps(ub) + va * omega(ub) + vb * omega(ua)
        return -1 if exponent % 2 else 1
    na = (ua.numerator * pow(ua.denominator, -1, p)) % p
    nb = (ub.numerator * pow(ub.denominator, -1, p)) % p
    sym = 1
    if (va * vb) % 2 and (p - 1) // 2 % 2:
        sym = -sym
    if vb % 2:
        sym *= _legendre(na, p)
    if va % 2:
        sym *= _legendre(nb, p)
    return sym


def _rational_places(a: Fraction, b: Fraction) -> list[int | None]:
    primes = {2}
    for x in (a, b):
        for n in (abs(x.numerator), x.denominator):
            d = 2
            while d * d <= n:
                if n % d == 0:
                    primes.add(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                primes.add(n)
    return sorted(primes) + [None]


def rational_quaternion_is_division(a: Fraction, b: Fraction) -> bool:
    """Exact decision for (a, b / Q): division iff some local symbol is -1."""
    symbols = [hilbert_symbol(a, b, v) for v in _rational_places(a, b)]
    if len([s for s in symbols if s == -1]) % 2:
        raise ValidationError("Hilbert symbol product formula violated (bad input?)")
    return any(s == -1 for s in symbols)


# ---------------------------------------------------------------------------
# split-witness search


def split_witness_search(algebra: QuatAlgebra, height_bound: int) -> QuatElement | None:
    """Bounded search for nonzero x with Nrd(x) = 0 (a zero divisor).

    Nrd(x) = 0 is homogeneous and, for a split algebra, forces an isotropic
    vector of the conic z^2 = alpha x^2 + beta y^2; so the walk runs over
    integer-coordinate triples (z, x, y) on the power basis, by increasing
    sup-norm shells and lexicographically within a shell, which makes the
    returned witness the smallest one.  None means no witness below the
    bound; that certifies nothing unless the algebra is totally definite.
    Runtime grows like (2h+1)^(3e): keep bounds small over genuine fields.
    """
    if height_bound < 1:
        raise ValidationError("height bound must be at least 1")
    base = algebra.base
    e = base.degree
    alpha, beta = algebra.alpha, algebra.beta
    for shell in range(1, height_bound + 1):
        rng = range(-shell, shell + 1)
        for vec in iter_product(rng, repeat=3 * e):
            if max(abs(v) for v in vec) != shell:
                continue
            z = base.element(vec[0:e])
            x = base.element(vec[e : 2 * e])
            y = base.element(vec[2 * e : 3 * e])
            if z.is_zero and x.is_zero and y.is_zero:
                continue
            if z * z - alpha * (x * x) - beta * (y * y) == base.zero():
                return QuatElement(algebra, z, x, y, base.zero())
    return None


def is_division(algebra: QuatAlgebra, height_bound: int = 4) -> bool | None:
    """True / False when certain, None when the bounded evidence is inconclusive."""
    report = definiteness(algebra)
    if report.kind == TOTALLY_DEFINITE:
        return True
    if algebra.base.degree == 1:
        root = Fraction(-algebra.base.minpoly[0])
        return rational_quaternion_is_division(
            algebra.alpha.poly(root), algebra.beta.poly(root)
        )
    witness = split_witness_search(algebra, height_bound)
    if witness is not None:
        return False
    return None
