"""Dense univariate polynomials with exact rational coefficients.

Coefficients are stored constant-term first as a tuple of Fraction; the zero
polynomial is the empty tuple.  All arithmetic is exact.  This module also
carries the resultant (via Sylvester/Bareiss) and the cyclotomic-order test,
both of which the higher layers lean on.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ValidationError
from .linalgq import det_int_bareiss


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, int):
        return Fraction(c)
    raise ValidationError(f"not an exact rational coefficient: {c!r}")


class QPoly:
    """Immutable dense polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("QPoly is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.coeffs[-1] == 1

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        if self.is_zero:
            return "QPoly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "QPoly(" + " + ".join(terms) + ")"

    # -- arithmetic ----------------------------------------------------------

    def __neg__(self) -> QPoly:
        return QPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> QPoly:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(tuple(self[i] + other[i] for i in range(n)))

    def __sub__(self, other) -> QPoly:
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return QPoly(tuple(self[i] - other[i] for i in range(n)))

    def __mul__(self, other) -> QPoly:
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return QPoly(tuple(c * f for c in self.coeffs))
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QPoly:
        if n < 0:
            raise ValidationError("negative polynomial power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    @staticmethod
    def _coerce(other) -> QPoly:
        if isinstance(other, QPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return QPoly((Fraction(other),))
        raise ValidationError(f"cannot coerce {other!r} to a polynomial")

    def divmod(self, other: QPoly) -> tuple[QPoly, QPoly]:
        """Exact long division; raises on a zero divisor."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.degree < other.degree:
            return QPoly(), self
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        quot = [Fraction(0)] * (dq + 1)
        dlc = other.lc
        for k in range(dq, -1, -1):
            c = rem[other.degree + k] / dlc
            quot[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[j + k] -= c * b
        return QPoly(quot), QPoly(rem[: other.degree])

    def __floordiv__(self, other: QPoly) -> QPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: QPoly) -> QPoly:
        return self.divmod(other)[1]

    def divides(self, other: QPoly) -> bool:
        if self.is_zero:
            return other.is_zero
        return other.divmod(self)[1].is_zero

    def monic(self) -> QPoly:
        if self.is_zero or self.is_monic:
            return self
        inv = 1 / self.lc
        return QPoly(tuple(c * inv for c in self.coeffs))

    def gcd(self, other: QPoly) -> QPoly:
        """Monic greatest common divisor."""
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        if a.is_zero:
            return a
        return a.monic()

    def xgcd(self, other: QPoly) -> tuple[QPoly, QPoly, QPoly]:
        """Extended gcd: returns (g, u, v) with u*self + v*other = g, g monic."""
        r0, r1 = self, other
        s0, s1 = ONE, QPoly()
        t0, t1 = QPoly(), ONE
        while not r1.is_zero:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if r0.is_zero:
            return r0, s0, t0
        inv = 1 / r0.lc
        return r0 * inv, s0 * inv, t0 * inv

    def derivative(self) -> QPoly:
        return QPoly(tuple(self.coeffs[i] * i for i in range(1, len(self.coeffs))))

    def __call__(self, x):
        """Horner evaluation; works for Fraction, complex, mpmath values."""
        if self.is_zero:
            return 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, inner: QPoly) -> QPoly:
        acc = QPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + QPoly((c,))
        return acc

    def compose_mod(self, inner: QPoly, mod: QPoly) -> QPoly:
        acc = QPoly()
        inner = inner % mod
        for c in reversed(self.coeffs):
            acc = (acc * inner + QPoly((c,))) % mod
        return acc

    def pow_mod(self, n: int, mod: QPoly) -> QPoly:
        result = ONE % mod
        base = self % mod
        while n:
            if n & 1:
                result = (result * base) % mod
            base = (base * base) % mod
            n >>= 1
        return result

    # -- structure helpers ---------------------------------------------------

    def reciprocal(self) -> QPoly:
        """x^deg * p(1/x): the coefficient sequence reversed."""
        return QPoly(tuple(reversed(self.coeffs)))

    def scale_roots(self, r: Fraction) -> QPoly:
        """Monic polynomial whose roots are r times the roots of self.

        Requires self monic: returns r^deg * p(x/r) expanded.
        """
        if not self.is_monic:
            raise ValidationError("scale_roots expects a monic polynomial")
        n = self.degree
        r = Fraction(r)
        return QPoly(tuple(self.coeffs[i] * r ** (n - i) for i in range(n + 1)))

    def squarefree_part(self) -> QPoly:
        if self.degree <= 0:
            return self.monic()
        return (self // self.gcd(self.derivative())).monic()

    def squarefree_decomposition(self) -> list[tuple[QPoly, int]]:
        """Yun's algorithm: returns [(g_i, i)] with self = lc * prod g_i^i."""
        p = self.monic()
        if p.degree <= 0:
            return []
        out: list[tuple[QPoly, int]] = []
        d = p.derivative()
        a = p.gcd(d)
        b = p // a
        c = d // a - b.derivative()
        i = 1
        while b.degree > 0:
            g = b.gcd(c)
            if g.degree > 0:
                out.append((g, i))
            b, c = b // g, (c // g) - (b // g).derivative()
            i += 1
        return out

    def clear_denominators(self) -> tuple[Fraction, list[int]]:
        """Returns (unit, ints) with self = unit * primitive integer polynomial.

        The integer polynomial is primitive with positive leading coefficient.
        """
        if self.is_zero:
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, abs(v))
        sign = 1 if ints[-1] > 0 else -1
        g *= sign
        ints = [v // g for v in ints]
        return Fraction(g, den), ints

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> QPoly:
        if not isinstance(data, (list, tuple)):
            raise ValidationError("polynomial JSON must be an array of coefficient strings")
        return cls(tuple(_as_fraction(c) for c in data))


ZERO = QPoly()
ONE = QPoly((1,))
X = QPoly((0, 1))


def from_ints(*coeffs: int) -> QPoly:
    """Convenience constructor, constant term first."""
    return QPoly(tuple(Fraction(c) for c in coeffs))


def resultant(a: QPoly, b: QPoly) -> Fraction:
    """Res(a, b), computed from the Sylvester matrix by fraction-free elimination."""
    if a.is_zero or b.is_zero:
        return Fraction(0)
    n, m = a.degree, b.degree
    if n == 0:
        return a.lc ** m
    if m == 0:
        return b.lc ** n
    da = 1
    for c in a.coeffs:
        da = da * c.denominator // gcd(da, c.denominator)
    db = 1
    for c in b.coeffs:
        db = db * c.denominator // gcd(db, c.denominator)
    ai = [int(c * da) for c in a.coeffs]
    bi = [int(c * db) for c in b.coeffs]
    size = n + m
    rows: list[list[int]] = []
    for k in range(m):
        row = [0] * size
        for i, c in enumerate(reversed(ai)):
            row[k + i] = c
        rows.append(row)
    for k in range(n):
        row = [0] * size
        for i, c in enumerate(reversed(bi)):
            row[k + i] = c
        rows.append(row)
    det = det_int_bareiss(rows)
    # Res(da*a, db*b) = da^m db^n Res(a, b)
    return Fraction(det, da**m * db**n)


def _euler_phi(k: int) -> int:
    result = k
    p = 2
    kk = k
    while p * p <= kk:
        if kk % p == 0:
            while kk % p == 0:
                kk //= p
            result -= result // p
        p += 1
    if kk > 1:
        result -= result // kk
    return result


def cyclotomic_order(q: QPoly) -> int | None:
    """Order k if the monic integral irreducible q is the k-th cyclotomic polynomial.

    Checks q | x^k - 1 for every k with phi(k) = deg q; phi(k) >= sqrt(k/2)
    bounds the search by 2*deg^2.  Returns None when q is not cyclotomic.
    The caller guarantees irreducibility.
    """
    if not q.is_monic or not q.is_integral:
        raise ValidationError("root-of-unity test needs a monic integer polynomial")
    d = q.degree
    if d < 1:
        return None
    if q.coeffs[0] not in (1, -1):
        return None
    for k in range(1, 2 * d * d + 3):
        if _euler_phi(k) != d:
            continue
        if X.pow_mod(k, q) == ONE % q:
            return k
    return None
