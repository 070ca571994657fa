"""Growth classification, automorphism and Salem tests, entropy and its
algebraic structure certificate.

Exact algebraic criteria decide everything; enclosure arithmetic only selects
among exact alternatives or cross-checks.  Where the two could disagree the
code raises CrossCheckError instead of picking a side: the criteria are
provably equivalent, so a disagreement is a bug, not data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from mpmath import mp, mpf

from . import algnum
from .enclosures import (
    INSIDE,
    ON_CIRCLE,
    OUTSIDE,
    ComplexEnclosure,
    fraction_to_mpf,
    unit_circle_status,
)
from .errors import (
    CrossCheckError,
    DivisibilityViolation,
    NonIntegralElement,
    NotSimpleAlbertType,
    ValidationError,
)
from .lefschetz import EndomorphismSpec, fixed_points_exact, rational_eigenvalues
from .numfield import CM, TOTALLY_REAL, apply_conjugation, cm_structure
from .qpoly import ONE, QPoly, X, cyclotomic_order
from .quaternion import MIXED, TOTALLY_DEFINITE, definiteness

TOTALLY_REAL_FIELD = "TotallyRealField"
CM_FIELD = "CMField"
TOTALLY_DEFINITE_QUATERNION = "TotallyDefiniteQuaternion"
TOTALLY_INDEFINITE_QUATERNION = "TotallyIndefiniteQuaternion"

PERIODIC = "Periodic"
EXPONENTIAL_PURE = "ExponentialPure"
EXPONENTIAL_MIXED = "ExponentialMixed"
UNIT_CIRCLE_NON_TORSION = "UnitCircleNonTorsionOnly"

_DICHOTOMY_KINDS = (TOTALLY_REAL_FIELD, CM_FIELD, TOTALLY_DEFINITE_QUATERNION)


@dataclass(frozen=True)
class AlbertType:
    kind: str
    d: int
    e: int


@dataclass(frozen=True)
class GrowthReport:
    growth_class: str
    period: int | None
    unit_circle_roots_of_unity: bool
    witness: str


@dataclass(frozen=True)
class SalemReport:
    is_salem: bool
    lead_root: ComplexEnclosure | None
    reason: str


@dataclass(frozen=True)
class EntropyReport:
    value: object  # mpmath mpf, >= 0
    gamma_minpoly: QPoly
    gamma_enclosure: ComplexEnclosure
    is_salem: bool
    structure_ok: bool | None
    structure_note: str

    @property
    def is_zero(self) -> bool:
        return self.gamma_minpoly == X - ONE


# ---------------------------------------------------------------------------
# admissibility


def admissibility_check(spec: EndomorphismSpec) -> AlbertType:
    """Albert type of the given spec, plus the divisibility and integrality gates.

    Totally real: e | g.  CM: e/2 | g (the norm exponent 2g/e must be a
    positive integer; an elliptic curve with CM by Q(i) is the g=1, e=2
    case).  Quaternion: 2e | g.  The element must have an integral
    characteristic polynomial (order membership proxy); quaternion elements
    whose reduced norm vanishes, or whose pure part squares to zero, are zero
    divisors and are rejected outright.
    """
    if spec._albert is not None:
        return spec._albert
    g = spec.g
    if spec.is_field_case:
        report = cm_structure(spec.algebra)
        e = spec.algebra.degree
        if report.kind == TOTALLY_REAL:
            if g % e:
                raise DivisibilityViolation(f"totally real multiplication needs e | g, got e={e}, g={g}")
            at = AlbertType(TOTALLY_REAL_FIELD, 1, e)
        elif report.kind == CM:
            if (2 * g) % e:
                raise DivisibilityViolation(f"complex multiplication needs (e/2) | g, got e={e}, g={g}")
            at = AlbertType(CM_FIELD, 1, e)
        else:
            raise NotSimpleAlbertType("field is neither totally real nor CM")
    else:
        algebra = spec.algebra
        e = algebra.base.degree
        defrep = definiteness(algebra)
        if defrep.kind == MIXED:
            raise NotSimpleAlbertType("quaternion algebra is neither totally definite nor totally indefinite")
        if g % (2 * e):
            raise DivisibilityViolation(f"quaternion multiplication needs 2e | g, got e={e}, g={g}")
        f = spec.element
        if f.reduced_norm().is_zero:
            raise NotSimpleAlbertType("element has reduced norm zero: a zero divisor")
        if not (f.b.is_zero and f.c.is_zero and f.d.is_zero):
            t = (
                algebra.alpha * (f.b * f.b)
                + algebra.beta * (f.c * f.c)
                - algebra.alpha * algebra.beta * (f.d * f.d)
            )
            if t.is_zero:
                raise NotSimpleAlbertType("pure part squares to zero: a nilpotent zero divisor")
        kind = (
            TOTALLY_DEFINITE_QUATERNION
            if defrep.kind == TOTALLY_DEFINITE
            else TOTALLY_INDEFINITE_QUATERNION
        )
        at = AlbertType(kind, 2, e)
    if not spec.charpoly_q().is_integral:
        raise NonIntegralElement("characteristic polynomial over Q is not integral")
    spec._albert = at
    return at


# ---------------------------------------------------------------------------
# root-of-unity test


def is_root_of_unity(minpoly: QPoly, enclosure: ComplexEnclosure | None = None) -> int | None:
    """Exact order of the algebraic number, or None.

    Kronecker shortcut: an enclosure certified off the unit circle rules the
    order out immediately; otherwise the cyclotomic orders with matching
    Euler phi are enumerated and checked by exact divisibility into x^k - 1.
    """
    if not minpoly.is_integral:
        raise ValidationError("root-of-unity test needs integer coefficients")
    if not minpoly.is_monic:
        raise ValidationError("root-of-unity test needs a monic polynomial")
    if enclosure is not None and (enclosure.abs_lb() > 1 or enclosure.abs_ub() < 1):
        return None
    return cyclotomic_order(minpoly)


# ---------------------------------------------------------------------------
# shared spectral analysis


@dataclass(frozen=True)
class _FactorSpectrum:
    poly: QPoly
    mult: int
    order: int | None  # root-of-unity order when cyclotomic
    statuses: tuple[tuple[ComplexEnclosure, int], ...]


def _spectrum(spec: EndomorphismSpec, precision_bits: int = 128) -> list[_FactorSpectrum]:
    cached = getattr(spec, "_spectrum_cache", None)
    if cached is not None:
        return cached
    ev = rational_eigenvalues(spec, precision_bits)
    out = []
    for q, mult in ev.factors:
        order = cyclotomic_order(q)
        if order is not None:
            statuses = tuple((e, ON_CIRCLE) for e in ev.enclosures_of(q))
        else:
            statuses = tuple(unit_circle_status(q, precision_bits))
        out.append(_FactorSpectrum(q, mult, order, statuses))
    spec._spectrum_cache = out
    return out


# ---------------------------------------------------------------------------
# growth classification


def _periodicity_criterion(spec: EndomorphismSpec, at: AlbertType) -> tuple[bool | None, str]:
    """The exact per-type test equivalent to 'all eigenvalues on the circle'."""
    f = spec.element
    if at.kind == TOTALLY_REAL_FIELD:
        one = spec.algebra.one()
        return f == one or f == -one, "f == +-1 in a totally real field"
    if at.kind == CM_FIELD:
        rep = cm_structure(spec.algebra)
        value = f * apply_conjugation(rep, f)
        return value == spec.algebra.one(), "f * conj(f) == 1 in a CM field"
    if at.kind == TOTALLY_DEFINITE_QUATERNION:
        return (
            spec.element.reduced_norm() == spec.algebra.base.one(),
            "Nrd(f) == 1 in a totally definite quaternion algebra",
        )
    return None, "eigenvalue multiset analysis (totally indefinite)"


def classify_growth(spec: EndomorphismSpec) -> GrowthReport:
    """Periodic / exponential / mixed growth of n -> fix(f^n), exactly decided."""
    at = admissibility_check(spec)
    spectrum = _spectrum(spec)

    all_torsion = all(fs.order is not None for fs in spectrum)
    any_torsion = any(fs.order is not None for fs in spectrum)
    has_outside = any(s == OUTSIDE for fs in spectrum for _, s in fs.statuses)
    has_on = any(s == ON_CIRCLE for fs in spectrum for _, s in fs.statuses)
    nontorsion_on = any(
        fs.order is None and any(s == ON_CIRCLE for _, s in fs.statuses) for fs in spectrum
    )

    if any_torsion and not all_torsion:
        raise NotSimpleAlbertType(
            "spectrum mixes roots of unity with other eigenvalues; "
            "the algebra cannot act on a simple abelian variety"
        )

    if all_torsion:
        growth_class = PERIODIC
    elif not has_on:
        growth_class = EXPONENTIAL_PURE
    elif has_outside and nontorsion_on:
        growth_class = EXPONENTIAL_MIXED
    else:
        growth_class = UNIT_CIRCLE_NON_TORSION

    crit, witness = _periodicity_criterion(spec, at)
    if crit is not None:
        if crit != (growth_class == PERIODIC):
            raise CrossCheckError("exact periodicity criterion disagrees with the eigenvalue spectrum")
        if growth_class in (EXPONENTIAL_MIXED, UNIT_CIRCLE_NON_TORSION):
            raise CrossCheckError("dichotomy violated for a totally real / CM / definite spec")

    period = None
    if growth_class == PERIODIC:
        period = _realized_period(spec, lcm(*(fs.order for fs in spectrum)))

    return GrowthReport(growth_class, period, not nontorsion_on, witness)


def _realized_period(spec: EndomorphismSpec, order_lcm: int) -> int:
    seq = [fixed_points_exact(spec, n) for n in range(1, 2 * order_lcm + 1)]
    for cand in sorted(d for d in range(1, order_lcm + 1) if order_lcm % d == 0):
        if all(seq[i] == seq[i + cand] for i in range(len(seq) - cand)):
            return cand
    return order_lcm


def is_automorphism(spec: EndomorphismSpec) -> bool:
    """True iff f is a unit of an order: |N(f)| = 1 with integral charpoly."""
    admissibility_check(spec)
    if spec.is_field_case:
        norm = spec.element.norm_q()
    else:
        norm = spec.element.norm_to_q()
    return norm in (1, -1)


# ---------------------------------------------------------------------------
# Salem polynomials


def is_salem_polynomial(p: QPoly, precision_bits: int = 128) -> SalemReport:
    """Salem test: reciprocal, irreducible, one real root each side of 1,
    everything else certified on the unit circle."""
    if not p.is_integral:
        raise ValidationError("Salem test needs integer coefficients")
    if not p.is_monic:
        return SalemReport(False, None, "not monic")
    if p.degree < 4 or p.degree % 2:
        return SalemReport(False, None, "degree must be even and at least 4")
    if p != p.reciprocal():
        return SalemReport(False, None, "not reciprocal")
    from . import factorq

    if not factorq.is_irreducible(p):
        return SalemReport(False, None, "not irreducible")
    statuses = unit_circle_status(p, precision_bits)
    outside = [e for e, s in statuses if s == OUTSIDE]
    inside = [e for e, s in statuses if s == INSIDE]
    if len(outside) != 1 or len(inside) != 1:
        return SalemReport(False, None, "more than one root off the unit circle on some side")
    lead, small = outside[0], inside[0]
    if not (lead.is_real and small.is_real):
        return SalemReport(False, None, "off-circle roots are not real")
    if not (lead.re - lead.radius > 0 and small.re - small.radius > 0):
        return SalemReport(False, None, "real roots are not positive")
    # reciprocity pairs the two real roots exactly: p(x)=0 iff p(1/x)=0,
    # so the root in (0,1) is literally 1/lead; nothing numeric remains.
    return SalemReport(True, lead, "reciprocal, irreducible, lead root real > 1, rest on |z| = 1")


# ---------------------------------------------------------------------------
# entropy and the structure certificate


@dataclass(frozen=True)
class _GammaPart:
    value: algnum.AlgebraicNumber  # one conjugate-pair product, real > 1
    count: int
    source: QPoly


def _gamma_parts(spec: EndomorphismSpec) -> list[_GammaPart]:
    cached = getattr(spec, "_gamma_parts_cache", None)
    if cached is not None:
        return cached
    parts: list[_GammaPart] = []
    for fs in _spectrum(spec):
        outside = [e for e, s in fs.statuses if s == OUTSIDE]
        if not outside:
            continue
        reals = [e for e in outside if e.is_real]
        uppers = [e for e in outside if e.im > 0]
        lowers = {e for e in outside if e.im < 0}
        for e in reals:
            if fs.mult % 2:
                raise CrossCheckError("real eigenvalue with odd multiplicity outside the circle")
            mu = algnum.from_root(fs.poly, e)
            parts.append(_GammaPart(algnum.power(mu, 2), fs.mult // 2, fs.poly))
        for e in uppers:
            mirror = e.conjugate()
            if mirror not in lowers:
                raise CrossCheckError("eigenvalue multiset is not conjugation-closed")
            lowers.discard(mirror)
            v = algnum.product(algnum.from_root(fs.poly, e), algnum.from_root(fs.poly, mirror))
            parts.append(_GammaPart(v, fs.mult, fs.poly))
        if lowers:
            raise CrossCheckError("unpaired non-real eigenvalue outside the circle")
    spec._gamma_parts_cache = parts
    return parts


def _gamma_of(spec: EndomorphismSpec) -> algnum.AlgebraicNumber:
    cached = getattr(spec, "_gamma_cache", None)
    if cached is not None:
        return cached
    parts = _gamma_parts(spec)
    gamma = algnum.product_many([algnum.power(p.value, p.count) for p in parts])
    spec._gamma_cache = gamma
    return gamma


def entropy(spec: EndomorphismSpec, precision_bits: int = 128) -> EntropyReport:
    """Entropy value log(gamma) with gamma's exact minimal polynomial.

    gamma is the product of the rational eigenvalues outside the unit circle
    (each conjugate pair contributes its modulus squared), so the value is
    the sum of mult * log|mu| over those eigenvalues; both readings are
    computed and must agree.
    """
    at = admissibility_check(spec)
    growth = classify_growth(spec)
    gamma = _gamma_of(spec)

    if gamma.is_rational and gamma.as_fraction() == 1:
        if growth.growth_class not in (PERIODIC, UNIT_CIRCLE_NON_TORSION):
            raise CrossCheckError("gamma = 1 for a spec classified as exponential")
        value = mpf(0)
        ok, note = _structure_result(spec, at, trivial=True)
        return EntropyReport(value, X - ONE, ComplexEnclosure(1, 0, 0), False, ok, note)

    if growth.growth_class in (PERIODIC, UNIT_CIRCLE_NON_TORSION):
        raise CrossCheckError("gamma > 1 for a spec classified as periodic")

    # tighten gamma until log() is reliable well below the 1e-9 tolerances
    bits = max(gamma.bits, precision_bits)
    while gamma.enclosure.radius * (1 << 80) > gamma.enclosure.re and bits < 1 << 14:
        bits *= 2
        gamma = gamma.refined(bits)
    if not gamma.enclosure.is_real or gamma.enclosure.re - gamma.enclosure.radius <= 1:
        raise CrossCheckError("gamma enclosure is not certified real and > 1")

    with mp.workprec(200):
        value = mp.log(fraction_to_mpf(gamma.enclosure.re))
        check = mpf(0)
        for fs in _spectrum(spec):
            for e, s in fs.statuses:
                if s == OUTSIDE:
                    mod = mp.sqrt(fraction_to_mpf(e.abs_sq_mid()))
                    check += fs.mult * mp.log(mod)
        if abs(value - check) > mpf(10) ** (-12) * (1 + abs(value)):
            raise CrossCheckError("entropy readings disagree: log(gamma) vs sum of log|mu|")

    try:
        salem = is_salem_polynomial(gamma.minpoly).is_salem
    except ValidationError:
        salem = False
    ok, note = _structure_result(spec, at, trivial=False)
    return EntropyReport(value, gamma.minpoly, gamma.enclosure, salem, ok, note)


def _structure_element(spec: EndomorphismSpec, at: AlbertType):
    """The explicit element of the maximal totally real subfield whose
    conjugates are the conjugate-pair products |mu|^2."""
    f = spec.element
    if at.kind == TOTALLY_REAL_FIELD:
        return f * f
    if at.kind == CM_FIELD:
        rep = cm_structure(spec.algebra)
        return f * apply_conjugation(rep, f)
    if at.kind == TOTALLY_DEFINITE_QUATERNION:
        return f.reduced_norm()
    raise ValidationError("structure certificate only covers totally real, CM and totally definite types")


def _structure_result(spec: EndomorphismSpec, at: AlbertType, trivial: bool) -> tuple[bool | None, str]:
    if at.kind not in _DICHOTOMY_KINDS:
        return None, "structure statement does not cover totally indefinite quaternion multiplication"
    if trivial:
        return True, "gamma = 1 lies in every subfield"
    ok = structure_certificate_for(spec, at)
    note = (
        "every |mu|^2 factor of gamma is a conjugate of an explicit element of the "
        "maximal totally real subfield, so gamma lies in its normal closure"
    )
    return ok, note if ok else "pair products failed to match the totally real subfield"


def structure_certificate_for(spec: EndomorphismSpec, at: AlbertType | None = None) -> bool:
    """Exact check that gamma lives in the normal closure of the maximal
    totally real subfield of the endomorphism algebra.

    gamma is a product of pair values mu * conj(mu); each pair value is shown
    to be a conjugate of the explicit subfield element y (f^2, f*conj(f) or
    Nrd(f)) by comparing exact minimal polynomials, and the pair resultant
    divisibility pins the construction: minpoly(y) must divide the pair
    resultant of the source factor with itself.
    """
    if at is None:
        at = admissibility_check(spec)
    if at.kind not in _DICHOTOMY_KINDS:
        raise ValidationError("structure certificate only covers the dichotomy types")
    parts = _gamma_parts(spec)
    if not parts:
        return True
    y = _structure_element(spec, at)
    minpoly_y = y.minimal_polynomial()
    for part in parts:
        if part.value.minpoly != minpoly_y:
            return False
        pair_res = algnum._product_resultant(part.source, part.source)
        if not minpoly_y.divides(pair_res):
            return False
    return True


def structure_certificate(report: EntropyReport, spec: EndomorphismSpec) -> bool:
    """Public form of the certificate, run against a finished entropy report."""
    at = admissibility_check(spec)
    if at.kind not in _DICHOTOMY_KINDS:
        raise ValidationError("structure certificate only covers the dichotomy types")
    if report.is_zero:
        return True
    gamma = _gamma_of(spec)
    if gamma.minpoly != report.gamma_minpoly:
        raise CrossCheckError("entropy report does not belong to this spec")
    return structure_certificate_for(spec, at)
