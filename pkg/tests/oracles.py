"""Independent brute-force oracles used only by the tests.

Kept deliberately separate from the library: a Sturm chain for real-root
counts, and a naive enclosure-product reading of fixed-point counts.  These
share no code path with the implementations they check.
"""

from __future__ import annotations

from fractions import Fraction

from endoscope.qpoly import QPoly


def sturm_chain(p: QPoly) -> list[QPoly]:
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        rem = chain[-2] % chain[-1]
        if rem.is_zero:
            break
        chain.append(-rem)
    return [q for q in chain if not q.is_zero]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: QPoly) -> int:
    """Number of distinct real roots of p, via Sturm's theorem on (-B, B]."""
    p = p.squarefree_part()
    if p.degree < 1:
        return 0
    bound = 1 + max(abs(c) for c in p.coeffs) / abs(p.lc)
    chain = sturm_chain(p)
    lo = _sign_changes([q(Fraction(-bound)) for q in chain])
    hi = _sign_changes([q(Fraction(bound)) for q in chain])
    return lo - hi


def count_real_roots_between(p: QPoly, a: Fraction, b: Fraction) -> int:
    p = p.squarefree_part()
    chain = sturm_chain(p)
    lo = _sign_changes([q(Fraction(a)) for q in chain])
    hi = _sign_changes([q(Fraction(b)) for q in chain])
    return lo - hi
