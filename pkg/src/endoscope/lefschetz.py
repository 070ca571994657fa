"""Fixed-point counts of iterates, three ways.

The exact path evaluates the norm form |N(1 - f^n)|^(2g/(d e)) with d, e the
degree data of the endomorphism algebra.  The eigenvalue path multiplies
certified enclosures of (1 - mu^n) over the rational eigenvalue multiset and
rounds to the unique integer in range.  The companion oracle builds the
block-doubled integer matrix of the multiplication-by-P(t) model on a product
of elliptic curves and takes |det(I - M^n)| directly.  The three must agree;
the test suites enforce it.
"""

from __future__ import annotations

from fractions import Fraction

from . import factorq
from .enclosures import ComplexEnclosure, align_enclosures, isolate_roots
from .errors import CrossCheckError, PrecisionExhausted, ValidationError
from .numfield import NumberField
from .qpoly import QPoly, cyclotomic_order
from .quaternion import QuatAlgebra, QuatElement

ITERATE_CAP = 10**6


class EndomorphismSpec:
    """(algebra, element, dimension) triple fed to the classifiers."""

    def __init__(self, algebra, element, g: int):
        if not isinstance(g, int) or g < 1:
            raise ValidationError("dimension g must be a positive integer")
        if isinstance(algebra, NumberField):
            element = algebra.element(element)
            if element.is_zero:
                raise ValidationError("endomorphism must be nonzero")
        elif isinstance(algebra, QuatAlgebra):
            if not isinstance(element, QuatElement) or element.algebra != algebra:
                raise ValidationError("element does not live in the given quaternion algebra")
            if element.is_zero:
                raise ValidationError("endomorphism must be nonzero")
        else:
            raise ValidationError("algebra must be a NumberField or a QuatAlgebra")
        self.algebra = algebra
        self.element = element
        self.g = g
        self._albert = None
        self._charpoly_q: QPoly | None = None

    @property
    def is_field_case(self) -> bool:
        return isinstance(self.algebra, NumberField)

    @property
    def d(self) -> int:
        return 1 if self.is_field_case else 2

    @property
    def e(self) -> int:
        field = self.algebra if self.is_field_case else self.algebra.base
        return field.degree

    def charpoly_q(self) -> QPoly:
        """Reduced characteristic polynomial over Q, degree d*e."""
        if self._charpoly_q is None:
            if self.is_field_case:
                self._charpoly_q = self.element.charpoly_q()
            else:
                self._charpoly_q = self.element.reduced_charpoly_q()
        return self._charpoly_q

    def exponent(self) -> int:
        """The norm-form exponent 2g / (d e); admissibility makes it integral."""
        de = self.d * self.e
        if (2 * self.g) % de:
            raise CrossCheckError("norm exponent is not integral on an admissible spec")
        return 2 * self.g // de

    def to_json(self) -> dict:
        if self.is_field_case:
            alg = {"kind": "field", **self.algebra.to_json()}
            elt = {"coords": self.element.poly.to_json()}
        else:
            alg = {"kind": "quaternion", **self.algebra.to_json()}
            elt = self.element.to_json()
        return {"algebra": alg, "element": elt, "g": self.g}

    def __repr__(self):
        return f"EndomorphismSpec(g={self.g}, element={self.element!r})"


def _admissibility(spec: EndomorphismSpec):
    from . import classify

    if spec._albert is None:
        spec._albert = classify.admissibility_check(spec)
    return spec._albert


def fixed_points_exact(spec: EndomorphismSpec, n: int) -> int:
    """|N(1 - f^n)|^(2g/(de)) as an exact integer; 0 reports an identity component."""
    if not isinstance(n, int) or n < 1:
        raise ValidationError("iterate index must be a positive integer")
    if n > ITERATE_CAP:
        raise ValidationError(f"iterate index above cap {ITERATE_CAP}")
    _admissibility(spec)
    if spec.is_field_case:
        x = spec.algebra.one() - spec.element**n
        norm = x.norm_q()
        exponent = 2 * spec.g // spec.e
    else:
        x = spec.algebra.one() - spec.element**n
        norm = x.norm_to_q()
        exponent = spec.g // spec.e
    if norm.denominator != 1:
        raise CrossCheckError("norm of an integral element is not an integer")
    return abs(int(norm)) ** exponent


class EigenvalueMultiset:
    """Roots of charpoly_q(f)^(2g/(de)), conjugation-closed, total 2g."""

    def __init__(self, factors, enclosures, total: int, source_poly: QPoly, bits: int):
        self.factors = tuple(factors)  # (irreducible QPoly, multiplicity)
        self._enclosures = dict(enclosures)  # QPoly -> tuple of enclosures
        self.total = total
        self.source_poly = source_poly
        self.bits = bits

    def enclosures_of(self, q: QPoly) -> tuple[ComplexEnclosure, ...]:
        return self._enclosures[q]

    @property
    def entries(self) -> list[tuple[ComplexEnclosure, int]]:
        out = []
        for q, mult in self.factors:
            out.extend((e, mult) for e in self._enclosures[q])
        return out

    def refine(self, bits: int) -> None:
        if bits <= self.bits:
            return
        for q, _ in self.factors:
            fresh = isolate_roots(q, bits)
            self._enclosures[q] = tuple(align_enclosures(list(self._enclosures[q]), fresh))
        self.bits = bits


def rational_eigenvalues(spec: EndomorphismSpec, precision_bits: int = 128) -> EigenvalueMultiset:
    _admissibility(spec)
    cp = spec.charpoly_q()
    scale = spec.exponent()
    factors = [(q, mult * scale) for q, mult in factorq.factor(cp)]
    enclosures = {q: tuple(isolate_roots(q, precision_bits)) for q, _ in factors}
    total = sum(mult * q.degree for q, mult in factors)
    if total != 2 * spec.g:
        raise CrossCheckError("eigenvalue multiset total differs from 2g")
    return EigenvalueMultiset(factors, enclosures, total, cp**scale, precision_bits)


def fixed_points_via_eigenvalues(ev: EigenvalueMultiset, n: int) -> int:
    """prod(1 - mu^n) over the multiset, certified to the nearest integer.

    Cyclotomic factors whose order divides n force the exact answer 0 before
    any numeric work; otherwise enclosure arithmetic is refined until the
    result disk pins a single integer.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError("iterate index must be a positive integer")
    if n > ITERATE_CAP:
        raise ValidationError(f"iterate index above cap {ITERATE_CAP}")
    for q, _ in ev.factors:
        if q.is_integral and q.is_monic:
            order = cyclotomic_order(q)
            if order is not None and n % order == 0:
                return 0
    bits = ev.bits
    while True:
        work = bits + 64
        acc = ComplexEnclosure(1, 0, 0)
        for q, mult in ev.factors:
            for e in ev.enclosures_of(q):
                term = _pow_rounded(1 - _pow_rounded(e, n, work), mult, work)
                acc = (acc * term).rounded(work)
        val = round(acc.re)
        if abs(acc.re - val) + acc.radius < Fraction(1, 2):
            return int(val)
        bits = max(2 * bits, 256)
        if bits > 1 << 16:
            raise PrecisionExhausted("eigenvalue product would not settle on an integer")
        ev.refine(bits)


def _pow_rounded(base: ComplexEnclosure, n: int, work: int) -> ComplexEnclosure:
    result = ComplexEnclosure(1, 0, 0)
    while n:
        if n & 1:
            result = (result * base).rounded(work)
        base = (base * base).rounded(work)
        n >>= 1
    return result


def companion_oracle(char_poly: QPoly, n: int) -> int:
    """|det(I - M^n)| for the block-doubled companion model of char_poly.

    char_poly must have integer coefficients and leading coefficient +-1
    (the (-1)^deg convention is accepted); the doubled model acts on the
    rank-2*deg homology lattice of a product of elliptic curves.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError("iterate index must be a positive integer")
    if not char_poly.is_integral:
        raise ValidationError("companion oracle needs integer coefficients")
    if char_poly.lc == -1:
        char_poly = -char_poly
    if not char_poly.is_monic:
        raise ValidationError("companion oracle needs a monic polynomial (up to sign)")
    deg = char_poly.degree
    if deg < 1:
        raise ValidationError("constant polynomials have no companion model")
    comp = [[0] * deg for _ in range(deg)]
    for i in range(1, deg):
        comp[i][i - 1] = 1
    for i in range(deg):
        comp[i][deg - 1] = -int(char_poly[i])
    doubled = [[0] * (2 * deg) for _ in range(2 * deg)]
    for i in range(deg):
        for j in range(deg):
            for t in (0, 1):
                doubled[2 * i + t][2 * j + t] = comp[i][j]

    power = _int_mat_pow(doubled, n)
    diff = [[(1 if i == j else 0) - power[i][j] for j in range(2 * deg)] for i in range(2 * deg)]
    from .linalgq import det_int_bareiss

    return abs(det_int_bareiss(diff))


def _int_mat_pow(m: list[list[int]], n: int) -> list[list[int]]:
    size = len(m)
    result = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    base = [row[:] for row in m]
    while n:
        if n & 1:
            result = _int_mat_mul(result, base)
        base = _int_mat_mul(base, base)
        n >>= 1
    return result


def _int_mat_mul(a, b):
    size = len(a)
    out = [[0] * size for _ in range(size)]
    for i in range(size):
        for t in range(size):
            c = a[i][t]
            if c == 0:
                continue
            row = b[t]
            oro = out[i]
            for j in range(size):
                oro[j] += c * row[j]
    return out
