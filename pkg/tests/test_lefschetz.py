import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from endoscope.enclosures import ComplexEnclosure, isolate_roots
from endoscope.errors import DivisibilityViolation, NonIntegralElement, ValidationError
from endoscope.factorq import factor
from endoscope.lefschetz import (
    EndomorphismSpec,
    companion_oracle,
    fixed_points_exact,
    fixed_points_via_eigenvalues,
    rational_eigenvalues,
)
from endoscope.numfield import NumberField, rationals_field
from endoscope.qpoly import QPoly, from_ints
from endoscope.quaternion import QuatAlgebra


def field_spec(coeffs, element, g):
    field = NumberField(from_ints(*coeffs))
    return EndomorphismSpec(field, field.element(element), g)


def test_minus_identity_counts():
    for g in range(1, 6):
        spec = EndomorphismSpec(rationals_field(), -1, g)
        assert fixed_points_exact(spec, 1) == 2 ** (2 * g)
        assert fixed_points_exact(spec, 2) == 0


def test_gaussian_period_four():
    spec = field_spec((1, 0, 1), [0, 1], 1)
    assert [fixed_points_exact(spec, n) for n in range(1, 5)] == [2, 4, 2, 0]
    ev = rational_eigenvalues(spec)
    assert [fixed_points_via_eigenvalues(ev, n) for n in range(1, 5)] == [2, 4, 2, 0]


def test_golden_ratio_count():
    spec = field_spec((-5, 0, 1), [Fraction(1, 2), Fraction(1, 2)], 2)
    assert fixed_points_exact(spec, 1) == 1
    ev = rational_eigenvalues(spec)
    assert fixed_points_via_eigenvalues(ev, 1) == 1


def test_silver_ratio_multiset():
    spec = field_spec((-2, 0, 1), [1, 1], 2)
    ev = rational_eigenvalues(spec)
    assert ev.total == 4
    assert ev.factors == ((from_ints(-1, -2, 1), 2),)
    assert ev.source_poly == from_ints(-1, -2, 1) ** 2
    assert fixed_points_exact(spec, 1) == 4


def test_quaternion_multiset_and_counts():
    base = NumberField(from_ints(-13, 0, 1))
    algebra = QuatAlgebra(base, [-2, -2], [2])
    f = algebra.element([Fraction(1, 4), Fraction(-1, 4)], Fraction(1, 4))
    spec = EndomorphismSpec(algebra, f, 4)
    ev = rational_eigenvalues(spec)
    assert ev.factors == ((from_ints(1, -1, -1, -1, 1), 2),)
    assert ev.total == 8
    exact = [fixed_points_exact(spec, n) for n in range(1, 6)]
    assert exact[0] == 1  # automorphism: a single honest fixed point
    assert exact == [fixed_points_via_eigenvalues(ev, n) for n in range(1, 6)]


def test_conjugation_closure():
    base = NumberField(from_ints(-13, 0, 1))
    algebra = QuatAlgebra(base, [-2, -2], [2])
    f = algebra.element([Fraction(1, 4), Fraction(-1, 4)], Fraction(1, 4))
    for spec in (
        field_spec((1, 1, 1, 1, 1), [0, 1], 2),
        EndomorphismSpec(algebra, f, 4),
    ):
        ev = rational_eigenvalues(spec)
        entries = {(e.re, e.im, e.radius, m) for e, m in ev.entries}
        mirrored = {(re, -im, rad, m) for re, im, rad, m in entries}
        assert entries == mirrored


def test_companion_oracle_examples():
    assert companion_oracle(from_ints(-2, 1), 1) == 1
    assert companion_oracle(from_ints(-1, -1, 1), 1) == 1
    assert companion_oracle(from_ints(1, 1), 1) == 4
    # (-1)^deg convention accepted
    assert companion_oracle(from_ints(2, -1), 1) == 1
    with pytest.raises(ValidationError):
        companion_oracle(QPoly((Fraction(1, 2), Fraction(1))), 1)
    with pytest.raises(ValidationError):
        companion_oracle(from_ints(1, 2), 1)


def _eigenvalue_product_doubled(p: QPoly, n: int) -> int:
    """Brute-force |det(I - M^n)| via enclosures of the doubled root multiset."""
    acc = ComplexEnclosure(1, 0, 0)
    for q, mult in factor(p):
        for e in isolate_roots(q, 128):
            acc = acc * (1 - e**n) ** (2 * mult)
    assert abs(acc.re - round(acc.re)) + acc.radius < Fraction(1, 2)
    return int(round(acc.re))


def test_companion_matches_eigenvalue_product():
    rng = random.Random(7)
    for _ in range(50):
        deg = rng.randint(1, 6)
        coeffs = [rng.randint(-4, 4) for _ in range(deg)] + [1]
        p = QPoly([Fraction(c) for c in coeffs])
        if p[0] == 0:
            continue
        n = rng.randint(1, 5)
        assert companion_oracle(p, n) == _eigenvalue_product_doubled(p, n)


def test_companion_matches_norm_path():
    # when f generates the field, the companion model on minpoly(f) computes
    # N(1 - f^n)^2, so fix = companion^(g/deg)
    spec = field_spec((-2, 0, 1), [1, 1], 4)
    minpoly = spec.element.minimal_polynomial()
    for n in range(1, 6):
        fix = fixed_points_exact(spec, n)
        assert fix == companion_oracle(minpoly, n) ** (spec.g // minpoly.degree)


def test_growth_rate_converges():
    # fix(f^n)^(1/n) -> prod |mu|>1 within 1% by n = 40
    for coeffs, element, g, expect in (
        ((-5, 0, 1), [Fraction(1, 2), Fraction(1, 2)], 2, ((1 + math.sqrt(5)) / 2) ** 2),
        ((-2, 0, 1), [1, 1], 2, (1 + math.sqrt(2)) ** 2),
    ):
        spec = field_spec(coeffs, element, g)
        fix = fixed_points_exact(spec, 40)
        rate = fix ** (1 / 40)
        assert abs(rate - expect) / expect < 0.01


def test_dual_path_on_sextic_cm():
    zeta7 = NumberField(from_ints(1, 1, 1, 1, 1, 1, 1))
    spec = EndomorphismSpec(zeta7, zeta7.element([1, 1]), 3)
    ev = rational_eigenvalues(spec)
    for n in range(1, 7):
        assert fixed_points_exact(spec, n) == fixed_points_via_eigenvalues(ev, n)


def test_multiset_refinement_keeps_structure():
    spec = field_spec((1, 1, 1, 1, 1), [2, 1], 2)
    ev = rational_eigenvalues(spec, 64)
    before = {q: [e.radius for e in ev.enclosures_of(q)] for q, _ in ev.factors}
    ev.refine(512)
    for q, _ in ev.factors:
        after = ev.enclosures_of(q)
        assert all(b <= a for a, b in zip(before[q], (e.radius for e in after)))
    entries = {(e.re, e.im, m) for e, m in ev.entries}
    assert entries == {(re, -im, m) for re, im, m in entries}


def test_iterate_validation():
    spec = EndomorphismSpec(rationals_field(), 2, 1)
    with pytest.raises(ValidationError):
        fixed_points_exact(spec, 0)
    with pytest.raises(ValidationError):
        fixed_points_exact(spec, 10**6 + 1)


def test_divisibility_and_integrality_guards():
    with pytest.raises(DivisibilityViolation):
        fixed_points_exact(field_spec((-2, 0, 1), [1, 1], 3), 1)
    with pytest.raises(NonIntegralElement):
        fixed_points_exact(field_spec((-2, 0, 1), [Fraction(1, 2)], 2), 1)
    with pytest.raises(ValidationError):
        EndomorphismSpec(rationals_field(), 0, 1)


@given(st.integers(min_value=-6, max_value=6).filter(lambda m: m != 0), st.integers(min_value=1, max_value=4))
def test_rational_multiplication_counts(m, n):
    # fix(m^n) on an elliptic curve is |1 - m^n|^2, degree of multiplication-by-m style
    spec = EndomorphismSpec(rationals_field(), m, 1)
    assert fixed_points_exact(spec, n) == (1 - m**n) ** 2
