import math
from fractions import Fraction

import pytest
from mpmath import mp

from endoscope import classify
from endoscope.classify import (
    CM_FIELD,
    EXPONENTIAL_MIXED,
    EXPONENTIAL_PURE,
    PERIODIC,
    TOTALLY_INDEFINITE_QUATERNION,
    TOTALLY_REAL_FIELD,
    admissibility_check,
    classify_growth,
    entropy,
    is_automorphism,
    is_root_of_unity,
    is_salem_polynomial,
    structure_certificate,
)
from endoscope.enclosures import fraction_to_mpf, isolate_roots
from endoscope.errors import (
    DivisibilityViolation,
    NonIntegralElement,
    NotSimpleAlbertType,
    ValidationError,
)
from endoscope.lefschetz import EndomorphismSpec, fixed_points_exact
from endoscope.numfield import NumberField, rationals_field
from endoscope.qpoly import QPoly, from_ints
from endoscope.quaternion import QuatAlgebra


def field_spec(coeffs, element, g):
    field = NumberField(from_ints(*coeffs))
    return EndomorphismSpec(field, field.element(element), g)


def salem_unit_spec():
    base = NumberField(from_ints(-13, 0, 1))
    algebra = QuatAlgebra(base, [-2, -2], [2])
    f = algebra.element([Fraction(1, 4), Fraction(-1, 4)], Fraction(1, 4))
    return EndomorphismSpec(algebra, f, 4)


# ---------------------------------------------------------------------------
# admissibility


def test_admissibility_examples():
    at = admissibility_check(field_spec((-2, 0, 1), [1, 1], 2))
    assert (at.kind, at.d, at.e) == (TOTALLY_REAL_FIELD, 1, 2)
    at = admissibility_check(salem_unit_spec())
    assert (at.kind, at.d, at.e) == (TOTALLY_INDEFINITE_QUATERNION, 2, 2)
    with pytest.raises(DivisibilityViolation):
        admissibility_check(field_spec((-2, 0, 1), [1, 1], 3))


def test_admissibility_cm_dimensions():
    # an elliptic curve with CM by Q(i): e = 2, g = 1
    at = admissibility_check(field_spec((1, 0, 1), [0, 1], 1))
    assert (at.kind, at.d, at.e) == (CM_FIELD, 1, 2)
    with pytest.raises(DivisibilityViolation):
        admissibility_check(field_spec((1, 1, 1, 1, 1), [0, 1], 1))


def test_admissibility_rejections():
    with pytest.raises(NotSimpleAlbertType):
        admissibility_check(field_spec((-2, 0, 0, 1), [0, 1], 3))
    with pytest.raises(NonIntegralElement):
        admissibility_check(field_spec((1, 0, 1), [Fraction(1, 2), Fraction(1, 2)], 1))
    base = NumberField(from_ints(-13, 0, 1))
    mixed = QuatAlgebra(base, -1, [0, 1])
    with pytest.raises(NotSimpleAlbertType):
        admissibility_check(EndomorphismSpec(mixed, mixed.one(), 4))
    split = QuatAlgebra(rationals_field(), 1, 1)
    with pytest.raises(NotSimpleAlbertType):
        admissibility_check(EndomorphismSpec(split, split.one() + split.gen_i(), 2))


# ---------------------------------------------------------------------------
# roots of unity


def test_is_root_of_unity():
    assert is_root_of_unity(from_ints(1, 0, 1)) == 4
    assert is_root_of_unity(from_ints(-1, -1, 1)) is None
    assert is_root_of_unity(from_ints(1, -1, -1, -1, 1)) is None
    assert is_root_of_unity(from_ints(1, -1, 1)) == 6
    enclosure = isolate_roots(from_ints(-1, -2, 1), 64)[1]
    assert is_root_of_unity(from_ints(-1, -2, 1), enclosure) is None
    with pytest.raises(ValidationError):
        is_root_of_unity(QPoly((Fraction(1, 2), Fraction(1))))


# ---------------------------------------------------------------------------
# growth


def test_growth_minus_identity():
    rep = classify_growth(EndomorphismSpec(rationals_field(), -1, 2))
    assert rep.growth_class == PERIODIC and rep.period == 2


def test_growth_exponential_pure_cases():
    assert classify_growth(field_spec((-2, 0, 1), [1, 1], 2)).growth_class == EXPONENTIAL_PURE
    phi = field_spec((-5, 0, 1), [Fraction(1, 2), Fraction(1, 2)], 2)
    assert classify_growth(phi).growth_class == EXPONENTIAL_PURE
    one_plus_i = field_spec((1, 0, 1), [1, 1], 1)
    assert classify_growth(one_plus_i).growth_class == EXPONENTIAL_PURE


def test_growth_cm_periodic():
    zeta = classify_growth(field_spec((1, 1, 1, 1, 1), [0, 1], 2))
    assert zeta.growth_class == PERIODIC and zeta.period == 5
    gauss = classify_growth(field_spec((1, 0, 1), [0, 1], 1))
    assert gauss.growth_class == PERIODIC and gauss.period == 4


def test_growth_definite_unit():
    hamilton = QuatAlgebra(rationals_field(), -1, -1)
    spec = EndomorphismSpec(hamilton, hamilton.gen_i(), 2)
    rep = classify_growth(spec)
    assert rep.growth_class == PERIODIC and rep.period == 4
    # a unit with Nrd = 1 built from the standard basis: (1 + i + j + k)/2
    half = Fraction(1, 2)
    unit = hamilton.element(half, half, half, half)
    rep = classify_growth(EndomorphismSpec(hamilton, unit, 2))
    assert rep.growth_class == PERIODIC


def test_growth_mixed_published_construction():
    rep = classify_growth(salem_unit_spec())
    assert rep.growth_class == EXPONENTIAL_MIXED
    assert rep.unit_circle_roots_of_unity is False


def test_periodicity_matches_fix_sequence():
    spec = field_spec((1, 1, 1, 1, 1), [0, 1], 2)
    rep = classify_growth(spec)
    seq = [fixed_points_exact(spec, n) for n in range(1, 3 * rep.period + 1)]
    for i in range(len(seq) - rep.period):
        assert seq[i] == seq[i + rep.period]


# ---------------------------------------------------------------------------
# automorphisms


def test_is_automorphism():
    assert is_automorphism(field_spec((1, 0, 1), [0, 1], 1)) is True
    assert is_automorphism(EndomorphismSpec(rationals_field(), 2, 1)) is False
    assert is_automorphism(salem_unit_spec()) is True
    assert is_automorphism(field_spec((-2, 0, 1), [1, 1], 2)) is True  # unit of infinite order


def test_zero_fix_count_implies_automorphism():
    for spec in (
        field_spec((1, 0, 1), [0, 1], 1),
        EndomorphismSpec(rationals_field(), -1, 2),
        field_spec((1, 1, 1, 1, 1), [0, 1], 2),
    ):
        rep = classify_growth(spec)
        hits_zero = any(
            fixed_points_exact(spec, n) == 0 for n in range(1, 2 * rep.period + 1)
        )
        assert not hits_zero or is_automorphism(spec)


# ---------------------------------------------------------------------------
# Salem polynomials


def test_salem_examples():
    rep = is_salem_polynomial(from_ints(1, -1, -1, -1, 1))
    assert rep.is_salem
    assert abs(rep.lead_root.re - Fraction(1722084, 1000000)) < Fraction(1, 10**5)
    assert is_salem_polynomial(from_ints(1, -3, 0, -3, 1)).is_salem
    assert is_salem_polynomial(from_ints(1, -7, -1, -7, 1)).is_salem


def test_salem_rejections():
    assert not is_salem_polynomial(from_ints(-1, 0, 0, 0, 1)).is_salem  # reducible
    assert not is_salem_polynomial(from_ints(1, 0, 0, 1)).is_salem  # odd degree
    assert not is_salem_polynomial(from_ints(1, -3, 1)).is_salem  # degree 2
    assert not is_salem_polynomial(from_ints(1, 1, 1, 1, 1)).is_salem  # cyclotomic
    # reciprocal quartic with all roots on the circle (phi_12)
    assert not is_salem_polynomial(from_ints(1, 0, -1, 0, 1)).is_salem
    with pytest.raises(ValidationError):
        is_salem_polynomial(QPoly((Fraction(1, 2), 1, 1, 1, Fraction(1, 2))))


def test_lehmer_polynomial_is_salem():
    lehmer = from_ints(1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1)
    rep = is_salem_polynomial(lehmer)
    assert rep.is_salem
    assert abs(rep.lead_root.re - Fraction(11762808, 10**7)) < Fraction(1, 10**5)


def test_salem_circle_certificates_tight():
    rep = is_salem_polynomial(from_ints(1, -1, -1, -1, 1), precision_bits=128)
    assert rep.is_salem


# ---------------------------------------------------------------------------
# entropy


def test_entropy_zero_cases():
    rep = entropy(field_spec((1, 0, 1), [0, 1], 1))
    assert rep.value == 0 and rep.is_zero and rep.structure_ok is True
    rep = entropy(EndomorphismSpec(rationals_field(), -1, 3))
    assert rep.value == 0


def test_entropy_silver_ratio():
    rep = entropy(field_spec((-2, 0, 1), [1, 1], 2))
    assert rep.gamma_minpoly == from_ints(1, -6, 1)
    assert abs(float(rep.value) - 2 * math.log(1 + math.sqrt(2))) < 1e-9
    assert rep.is_salem is False
    assert rep.structure_ok is True


def test_entropy_published_construction():
    spec = salem_unit_spec()
    rep = entropy(spec)
    lam = isolate_roots(from_ints(1, -1, -1, -1, 1), 192)[-1]
    with mp.workprec(120):
        expected = 2 * mp.log(fraction_to_mpf(lam.re))
        assert abs(rep.value - expected) < mp.mpf(10) ** -9
    assert rep.is_salem is True
    assert rep.structure_ok is None
    with pytest.raises(ValidationError):
        structure_certificate(rep, spec)


def test_entropy_definite_quaternion():
    hamilton = QuatAlgebra(rationals_field(), -1, -1)
    spec = EndomorphismSpec(hamilton, hamilton.one() + hamilton.gen_i(), 2)
    rep = entropy(spec)
    assert rep.gamma_minpoly == from_ints(-4, 1)
    assert abs(float(rep.value) - math.log(4)) < 1e-12
    assert rep.structure_ok is True
    assert structure_certificate(rep, spec) is True
    assert rep.is_salem is False


def test_entropy_growth_consistency():
    for spec in (
        field_spec((1, 0, 1), [0, 1], 1),
        field_spec((-2, 0, 1), [1, 1], 2),
        field_spec((1, 1, 1, 1, 1), [0, 1], 2),
        salem_unit_spec(),
    ):
        growth = classify_growth(spec)
        rep = entropy(spec)
        assert (rep.value == 0) == (growth.growth_class == PERIODIC)


def test_structure_certificate_cm_positive_entropy():
    # 1+i in Q(i) on an elliptic curve: gamma = 2
    spec = field_spec((1, 0, 1), [1, 1], 1)
    rep = entropy(spec)
    assert rep.gamma_minpoly == from_ints(-2, 1)
    assert rep.structure_ok is True and structure_certificate(rep, spec)
    # 2 + zeta5 in Q(zeta5), g = 2
    spec = field_spec((1, 1, 1, 1, 1), [2, 1], 2)
    rep = entropy(spec)
    assert rep.structure_ok is True
    assert rep.is_salem is False


def test_structure_certificate_totally_real_quartic():
    # Q(sqrt2, sqrt3) is Galois and totally real; generator is a unit
    spec = field_spec((1, 0, -10, 0, 1), [0, 1], 4)
    rep = entropy(spec)
    assert float(rep.value) > 0
    assert rep.structure_ok is True
    assert rep.is_salem is False


def test_indefinite_pure_exponential_case():
    # i itself in the sqrt13 algebra: Nrd(i) = 2 + 2*sqrt13, all eigenvalues
    # off the circle, gamma = N(Nrd(i))^2 = 48^2 rational
    base = NumberField(from_ints(-13, 0, 1))
    algebra = QuatAlgebra(base, [-2, -2], [2])
    spec = EndomorphismSpec(algebra, algebra.gen_i(), 4)
    rep = classify_growth(spec)
    assert rep.growth_class == EXPONENTIAL_PURE
    ent = entropy(spec)
    assert ent.gamma_minpoly == from_ints(-2304, 1)
    assert abs(float(ent.value) - math.log(2304)) < 1e-12
    assert ent.structure_ok is None


def test_criterion_equivalence_randomized():
    # the exact periodicity criteria agree with the eigenvalue spectrum on
    # random units and non-units (classify_growth raises on any disagreement)
    import random

    rng = random.Random(99)
    zeta5 = NumberField(from_ints(1, 1, 1, 1, 1))
    hamilton = QuatAlgebra(rationals_field(), -1, -1)
    half = Fraction(1, 2)
    units = [
        EndomorphismSpec(zeta5, zeta5.element([0, 1]), 2),
        EndomorphismSpec(zeta5, zeta5.element([0, 0, 0, 1]), 2),
        EndomorphismSpec(zeta5, zeta5.element([-1, -1, -1, -1]), 2),
        EndomorphismSpec(hamilton, hamilton.gen_j(), 2),
        EndomorphismSpec(hamilton, hamilton.element(half, -half, half, -half), 2),
        EndomorphismSpec(hamilton, -hamilton.one(), 2),
    ]
    seen_periodic = seen_exponential = 0
    for k in range(40):
        if k < len(units):
            spec = units[k]
        elif rng.random() < 0.5:
            coords = [rng.randint(-2, 2) for _ in range(4)]
            if all(c == 0 for c in coords):
                coords[0] = 1
            spec = EndomorphismSpec(zeta5, zeta5.element(coords), 2)
        else:
            coords = [rng.randint(-2, 2) for _ in range(4)]
            if all(c == 0 for c in coords):
                coords[0] = 1
            spec = EndomorphismSpec(hamilton, hamilton.element(*coords), 2)
        try:
            rep = classify_growth(spec)
        except NotSimpleAlbertType:
            continue
        if rep.growth_class == PERIODIC:
            seen_periodic += 1
        else:
            seen_exponential += 1
    assert seen_periodic >= 6 and seen_exponential >= 20


def test_entropy_cm_sextic_two_pair_products():
    # f = 1 + zeta7 on g = 3: embedding moduli 2cos(pi k/7) give two conjugate
    # pairs outside the circle, so gamma multiplies two distinct conjugates of
    # y = f*conj(f) = 2 + zeta + 1/zeta; y has minpoly x^3 - 5x^2 + 6x - 1 and
    # gamma = 1/(smallest root), with minimal polynomial x^3 - 6x^2 + 5x - 1
    zeta7 = NumberField(from_ints(1, 1, 1, 1, 1, 1, 1))
    spec = EndomorphismSpec(zeta7, zeta7.element([1, 1]), 3)
    at = admissibility_check(spec)
    assert at.kind == CM_FIELD and at.e == 6
    growth = classify_growth(spec)
    assert growth.growth_class == EXPONENTIAL_PURE
    rep = entropy(spec)
    assert rep.gamma_minpoly == from_ints(-1, 5, -6, 1)
    assert rep.structure_ok is True
    assert rep.is_salem is False
    small = min(isolate_roots(from_ints(-1, 6, -5, 1), 192), key=lambda e: e.re)
    with mp.workprec(120):
        assert abs(rep.value + mp.log(fraction_to_mpf(small.re))) < mp.mpf(10) ** -9


def test_entropy_cm_quartic_cyclotomic12():
    # 1 + zeta12 on g = 2: one conjugate pair outside, gamma = 2 + sqrt3
    zeta12 = NumberField(from_ints(1, 0, -1, 0, 1))
    spec = EndomorphismSpec(zeta12, zeta12.element([1, 1]), 2)
    rep = entropy(spec)
    assert rep.gamma_minpoly == from_ints(1, -4, 1)
    assert abs(float(rep.value) - math.log(2 + math.sqrt(3))) < 1e-9
    assert rep.structure_ok is True


def test_entropy_report_mismatch_detected():
    spec_a = field_spec((1, 0, 1), [1, 1], 1)
    spec_b = field_spec((-2, 0, 1), [1, 1], 2)
    rep_b = entropy(spec_b)
    from endoscope.errors import CrossCheckError

    with pytest.raises(CrossCheckError):
        structure_certificate(rep_b, spec_a)
