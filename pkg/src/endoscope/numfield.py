"""Number fields Q(alpha) = Q[x]/(m) with exact element arithmetic, norms and
traces (absolute and relative), embedding enclosures, and the field-type
classification: totally real, CM (with its conjugation automorphism and
maximal totally real subfield), or neither.

The CM test is numeric-guess / exact-certificate: the candidate conjugation
is read off from high-precision embeddings and rationally reconstructed, then
everything that matters is verified exactly (it is an automorphism, has order
two, is not the identity, the field is totally imaginary and the fixed
subfield has index two and is totally real).  A success is therefore a proof;
repeated failure at increasing precision reports "Other".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, matrix as mp_matrix, lu_solve

from . import factorq
from .enclosures import (
    ComplexEnclosure,
    align_enclosures,
    eval_poly_enclosure,
    fraction_to_mpf,
    isolate_roots,
    mpf_to_fraction,
    rational_reconstruct,
)
from .errors import CrossCheckError, ValidationError
from .linalgq import charpoly as _charpoly_matrix
from .linalgq import det_fraction
from .qpoly import ONE, QPoly, X

TOTALLY_REAL = "TotallyReal"
CM = "CM"
OTHER = "Other"


class NumberField:
    """Q[x]/(minpoly) for a monic irreducible minpoly."""

    def __init__(self, minpoly: QPoly, check_irreducible: bool = True):
        minpoly = QPoly(minpoly.coeffs)
        if minpoly.degree < 1:
            raise ValidationError("a number field needs a minimal polynomial of degree >= 1")
        if not minpoly.is_monic:
            raise ValidationError("minimal polynomial must be monic")
        if check_irreducible and not factorq.is_irreducible(minpoly):
            raise ValidationError(f"{minpoly!r} is reducible over the rationals")
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self._embeddings: list[ComplexEnclosure] | None = None
        self._emb_bits = 0
        self._cm_report: FieldTypeReport | None = None

    def __repr__(self):
        return f"NumberField({self.minpoly!r})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def embeddings(self, precision_bits: int = 128) -> list[ComplexEnclosure]:
        """Enclosures of the roots of minpoly, one per embedding into C.

        Refining keeps the embedding order stable: new enclosures are aligned
        with the cached ones root-for-root.
        """
        if self._embeddings is None:
            self._embeddings = isolate_roots(self.minpoly, precision_bits)
            self._emb_bits = precision_bits
        elif precision_bits > self._emb_bits:
            fresh = isolate_roots(self.minpoly, precision_bits)
            self._embeddings = align_enclosures(self._embeddings, fresh)
            self._emb_bits = precision_bits
        return self._embeddings

    def element(self, coeffs) -> NFElement:
        if isinstance(coeffs, NFElement):
            if coeffs.parent != self:
                raise ValidationError("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, (int, Fraction)):
            return NFElement(self, QPoly((Fraction(coeffs),)))
        if isinstance(coeffs, QPoly):
            return NFElement(self, coeffs)
        return NFElement(self, QPoly(tuple(Fraction(c) for c in coeffs)))

    def zero(self) -> NFElement:
        return NFElement(self, QPoly())

    def one(self) -> NFElement:
        return NFElement(self, ONE)

    def gen(self) -> NFElement:
        return NFElement(self, X % self.minpoly)

    def to_json(self) -> dict:
        return {"minpoly": self.minpoly.to_json()}

    @classmethod
    def from_json(cls, data) -> NumberField:
        if not isinstance(data, dict) or "minpoly" not in data:
            raise ValidationError("field JSON must be an object with a 'minpoly' array")
        return cls(QPoly.from_json(data["minpoly"]))


def rationals_field() -> NumberField:
    """Q presented as Q[x]/(x)."""
    return NumberField(X, check_irreducible=False)


class NFElement:
    """Residue representative of degree < [F:Q]; canonical, hence hashable."""

    __slots__ = ("parent", "poly")

    def __init__(self, parent: NumberField, poly: QPoly):
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "poly", poly % parent.minpoly)

    def __setattr__(self, name, value):
        raise AttributeError("NFElement is immutable")

    @property
    def coeffs(self):
        return self.poly.coeffs

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    @property
    def is_rational(self) -> bool:
        return self.poly.degree <= 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValidationError("element is not rational")
        return self.poly[0]

    def __repr__(self):
        return f"NFElement({self.poly!r} in deg-{self.parent.degree} field)"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.poly == QPoly((Fraction(other),))
        return (
            isinstance(other, NFElement)
            and self.parent == other.parent
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.parent.minpoly, self.poly))

    def _coerce(self, other) -> NFElement:
        if isinstance(other, NFElement):
            if other.parent != self.parent:
                raise ValidationError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElement(self.parent, QPoly((Fraction(other),)))
        raise ValidationError(f"cannot coerce {other!r} into the field")

    def __add__(self, other):
        other = self._coerce(other)
        return NFElement(self.parent, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.parent, -self.poly)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return NFElement(self.parent, (self.poly * other.poly) % self.parent.minpoly)

    __rmul__ = __mul__

    def inverse(self) -> NFElement:
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        g, u, _ = self.poly.xgcd(self.parent.minpoly)
        if g.degree != 0:
            raise CrossCheckError("reducible minimal polynomial slipped through")
        return NFElement(self.parent, u * (1 / g[0]))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return NFElement(self.parent, self.poly.pow_mod(n, self.parent.minpoly))

    def apply_poly(self, h: QPoly) -> NFElement:
        """Image under alpha -> h(alpha), i.e. coords composed with h."""
        return NFElement(self.parent, self.poly.compose_mod(h, self.parent.minpoly))

    # -- linear algebra over Q -------------------------------------------------

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of multiplication by self on the power basis (column j = x*alpha^j)."""
        e = self.parent.degree
        cols = []
        acc = self.poly
        for _ in range(e):
            cols.append([acc[i] for i in range(e)])
            acc = (acc * X) % self.parent.minpoly
        return [[cols[j][i] for j in range(e)] for i in range(e)]

    def charpoly_q(self) -> QPoly:
        """Characteristic polynomial over Q, degree [F:Q]."""
        return QPoly(_charpoly_matrix(self.mult_matrix()))

    def minimal_polynomial(self) -> QPoly:
        """Monic irreducible annihilator; its degree divides the field degree."""
        cp = self.charpoly_q()
        mp_ = cp.squarefree_part()
        if not mp_.compose_mod(self.poly, self.parent.minpoly).is_zero:
            raise CrossCheckError("minimal polynomial does not annihilate its element")
        return mp_

    def norm_q(self) -> Fraction:
        if self.is_rational:
            return self.poly[0] ** self.parent.degree
        return det_fraction(self.mult_matrix())

    def trace_q(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def embeddings(self, precision_bits: int = 128) -> list[ComplexEnclosure]:
        """sigma(self) for every embedding, aligned with the field's root order."""
        return [eval_poly_enclosure(self.coeffs, r) for r in self.parent.embeddings(precision_bits)]

    def to_json(self) -> dict:
        return {"field": self.parent.to_json(), "coords": self.poly.to_json()}


# ---------------------------------------------------------------------------
# field-type predicates


def is_totally_real(field: NumberField) -> bool:
    """True iff every embedding of the field lands in the reals."""
    return all(e.is_real for e in field.embeddings())


@dataclass(frozen=True)
class FieldTypeReport:
    kind: str
    conj_automorphism: NFElement | None
    max_real_subfield_minpoly: QPoly | None


def _conjugation_candidate(field: NumberField, bits: int) -> QPoly | None:
    """Interpolate alpha -> conj(alpha) through all embeddings and reconstruct."""
    roots = field.embeddings(bits)
    e = field.degree
    with mp.workprec(bits + 30):
        a = mp_matrix(e, e)
        rhs = mp_matrix(e, 1)
        for k, r in enumerate(roots):
            z = mpc(fraction_to_mpf(r.re), fraction_to_mpf(r.im))
            acc = mpc(1)
            for j in range(e):
                a[k, j] = acc
                acc *= z
            rhs[k] = mpc(fraction_to_mpf(r.re), -fraction_to_mpf(r.im))
        try:
            sol = lu_solve(a, rhs)
        except Exception:
            return None
        bound = 1 << max(bits // 4, 32)
        coeffs = []
        tol = mp.mpf(2) ** (-(bits // 2))
        for j in range(e):
            v = sol[j]
            if abs(v.imag) > tol:
                return None
            approx = mpf_to_fraction(v.real)
            cand = rational_reconstruct(approx, bound)
            if abs(cand - approx) > Fraction(1, 1 << (bits // 2)):
                return None
            coeffs.append(cand)
    return QPoly(coeffs)


def cm_structure(field: NumberField) -> FieldTypeReport:
    """Classify the field as totally real, CM, or neither.

    CM certificates are exact; see the module docstring.
    """
    if field._cm_report is not None:
        return field._cm_report
    report = _cm_structure_uncached(field)
    field._cm_report = report
    return report


def _cm_structure_uncached(field: NumberField) -> FieldTypeReport:
    if is_totally_real(field):
        return FieldTypeReport(TOTALLY_REAL, field.gen(), field.minpoly)
    e = field.degree
    if e % 2 == 1 or any(r.is_real for r in field.embeddings()):
        return FieldTypeReport(OTHER, None, None)

    bits = 192
    while bits <= 3072:
        h = _conjugation_candidate(field, bits)
        if h is not None:
            report = _verify_cm(field, h)
            if report is not None:
                return report
        bits *= 2
    return FieldTypeReport(OTHER, None, None)


def _verify_cm(field: NumberField, h: QPoly) -> FieldTypeReport | None:
    m = field.minpoly
    h = h % m
    if h == X % m:
        return None
    if not m.compose_mod(h, m).is_zero:
        return None
    if h.compose_mod(h, m) != X % m:
        return None
    gen = field.gen()
    conj_gen = field.element(h)
    base = gen + conj_gen
    extra = gen * conj_gen
    preferred = base.minimal_polynomial()
    for c in range(2 * field.degree + 1):
        s = base + extra * c
        ms = s.minimal_polynomial()
        if ms.degree != field.degree // 2:
            continue
        if is_totally_real(NumberField(ms, check_irreducible=False)):
            reported = preferred if preferred.degree == field.degree // 2 else ms
            return FieldTypeReport(CM, conj_gen, reported)
    return None


def apply_conjugation(report: FieldTypeReport, x: NFElement) -> NFElement:
    """Image of x under the conjugation automorphism of a CM or totally real field."""
    if report.kind == TOTALLY_REAL:
        return x
    if report.kind != CM or report.conj_automorphism is None:
        raise ValidationError("field has no conjugation automorphism")
    return x.apply_poly(report.conj_automorphism.poly)


# ---------------------------------------------------------------------------
# relative norms and traces


def norm_and_trace(x: NFElement, over="Q"):
    """Norm and trace of x, over Q or over the subfield generated by an element.

    over="Q" returns a pair of Fractions.  Passing an NFElement s of the same
    field returns a pair of elements of the subfield K = Q(s), represented on
    the power basis of s.
    """
    if isinstance(over, str):
        if over != "Q":
            raise ValidationError("over must be 'Q' or a subfield generator")
        return x.norm_q(), x.trace_q()
    norm, trace, _ = relative_norm_trace(x, over)
    return norm, trace


def relative_norm_trace(x: NFElement, s: NFElement) -> tuple[NFElement, NFElement, NumberField]:
    """Norm and trace of x for the extension F / Q(s), plus the subfield Q(s).

    Exact linear algebra: {s^t * alpha^u} is a Q-basis of F, multiplication by
    x is written as a matrix over K = Q(s), and its determinant and trace are
    computed with field arithmetic in K.
    """
    field = x.parent
    if s.parent != field:
        raise ValidationError("subfield generator lives in a different field")
    ms = s.minimal_polynomial()
    l = ms.degree
    e = field.degree
    if e % l != 0:
        raise CrossCheckError("subfield degree does not divide the field degree")
    m = e // l
    sub = NumberField(ms, check_irreducible=False)

    basis: list[NFElement] = []
    for t in range(l):
        st = s**t
        for u in range(m):
            basis.append(st * field.gen() ** u)
    mat = [[basis[col].poly[row] for col in range(e)] for row in range(e)]

    from .linalgq import solve_fraction

    cols_k: list[list[NFElement]] = []
    for u in range(m):
        w = x * field.gen() ** u
        rhs = [w.poly[row] for row in range(e)]
        try:
            v = solve_fraction(mat, rhs)
        except ZeroDivisionError as exc:
            raise ValidationError("claimed generator does not induce a subfield basis") from exc
        col = []
        for uprime in range(m):
            coeffs = [v[t * m + uprime] for t in range(l)]
            col.append(sub.element(coeffs))
        cols_k.append(col)
    mk = [[cols_k[u][uprime] for u in range(m)] for uprime in range(m)]

    trace = sub.zero()
    for u in range(m):
        trace = trace + mk[u][u]
    norm = _det_nf(mk, sub)
    return norm, trace, sub


def _det_nf(matrix: list[list[NFElement]], field: NumberField) -> NFElement:
    n = len(matrix)
    m = [row[:] for row in matrix]
    det = field.one()
    for k in range(n):
        piv = None
        for i in range(k, n):
            if not m[i][k].is_zero:
                piv = i
                break
        if piv is None:
            return field.zero()
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        inv = m[k][k].inverse()
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f.is_zero:
                continue
            m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return det
