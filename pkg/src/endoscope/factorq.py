"""Factorization over the rationals: squarefree split, factorization modulo a
small prime, quadratic Hensel lifting and subset recombination.

Inputs are desk scale (degree <= 64), so the classical algorithm with
exponential recombination in the worst case is a deliberate choice; the
modular factor counts stay tiny for everything this library produces.
"""

from __future__ import annotations

import random
from itertools import combinations
from math import gcd, isqrt

from .errors import DegreeCapExceeded, ValidationError
from .qpoly import QPoly

DEGREE_CAP = 64

# ---------------------------------------------------------------------------
# arithmetic for integer polynomials modulo m (constant term first)


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _zmod(a: list[int], m: int) -> list[int]:
    return _trim([c % m for c in a])


def _zmul(a: list[int], b: list[int], m: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % m
    return _trim(out)


def _zadd(a: list[int], b: list[int], m: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _zsub(a: list[int], b: list[int], m: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _zdivmod(a: list[int], b: list[int], m: int) -> tuple[list[int], list[int]]:
    """Division where lc(b) is invertible mod m."""
    if not b:
        raise ZeroDivisionError
    inv = pow(b[-1], -1, m)
    rem = [c % m for c in a]
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _trim(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - db - 1, -1, -1):
        c = (rem[db + k] * inv) % m
        quot[k] = c
        if c:
            for j, bc in enumerate(b):
                rem[j + k] = (rem[j + k] - c * bc) % m
    return _trim(quot), _trim(rem[:db])


def _zmonic(a: list[int], m: int) -> list[int]:
    if not a:
        return a
    inv = pow(a[-1], -1, m)
    return _trim([(c * inv) % m for c in a])


def _zgcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _zdivmod(a, b, p)[1]
    return _zmonic(a, p)


def _zxgcd(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int], list[int]]:
    r0, r1 = [c % p for c in a], [c % p for c in b]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while _trim(r1[:]):
        q, r = _zdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _zsub(s0, _zmul(q, s1, p), p)
        t0, t1 = t1, _zsub(t0, _zmul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    scale = lambda v: _trim([(c * inv) % p for c in v])
    return scale(r0), scale(s0), scale(t0)


def _zpow_mod(a: list[int], n: int, f: list[int], m: int) -> list[int]:
    result = [1]
    base = _zdivmod(a, f, m)[1]
    while n:
        if n & 1:
            result = _zdivmod(_zmul(result, base, m), f, m)[1]
        base = _zdivmod(_zmul(base, base, m), f, m)[1]
        n >>= 1
    return result


def _zeval(a: list[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


# ---------------------------------------------------------------------------
# factorization of a squarefree monic polynomial mod an odd prime


def _ddf(f: list[int], p: int) -> list[tuple[list[int], int]]:
    out = []
    h = [0, 1]
    d = 0
    f = f[:]
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _zpow_mod(h, p, f, p)
        g = _zgcd(_zsub(h, [0, 1], p), f, p)
        if len(g) > 1:
            out.append((g, d))
            f = _zdivmod(f, g, p)[0]
            h = _zdivmod(h, f, p)[1]
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _edf(f: list[int], d: int, p: int, rng: random.Random) -> list[list[int]]:
    n = len(f) - 1
    if n == d:
        return [f]
    m = (p**d - 1) // 2
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        g = _zgcd(a, f, p)
        if 1 < len(g) < len(f):
            pass
        else:
            b = _zsub(_zpow_mod(a, m, f, p), [1], p)
            g = _zgcd(b, f, p)
            if not 1 < len(g) < len(f):
                continue
        rest = _zdivmod(f, g, p)[0]
        return _edf(g, d, p, rng) + _edf(rest, d, p, rng)


def _factor_mod_p(f: list[int], p: int, rng: random.Random) -> list[list[int]]:
    """Monic irreducible factors of a squarefree monic f mod odd p."""
    out: list[list[int]] = []
    for block, d in _ddf(f, p):
        out.extend(_edf(block, d, p, rng))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# Hensel lifting


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift: from mod m to mod m*m.

    Invariants: f = g*h, s*g + t*h = 1 (both mod m), h monic,
    deg f = deg g + deg h, deg s < deg h, deg t < deg g.
    """
    mm = m * m
    e = _zsub(f, _zmul(g, h, mm), mm)
    q, r = _zdivmod(_zmul(s, e, mm), h, mm)
    g1 = _zadd(g, _zadd(_zmul(t, e, mm), _zmul(q, g, mm), mm), mm)
    h1 = _zadd(h, r, mm)
    b = _zsub(_zadd(_zmul(s, g1, mm), _zmul(t, h1, mm), mm), [1], mm)
    c, d = _zdivmod(_zmul(s, b, mm), h1, mm)
    s1 = _zsub(s, d, mm)
    t1 = _zsub(t, _zadd(_zmul(t, b, mm), _zmul(c, g1, mm), mm), mm)
    return g1, h1, s1, t1


def _lift_split(f: list[int], g0: list[int], h0: list[int], p: int, pk: int):
    """Lift f = g0*h0 (mod p) to mod pk (pk a power of p); h0 monic."""
    _, s, t = _zxgcd(g0, h0, p)
    g, h = g0, h0
    m = p
    while m < pk:
        g, h, s, t = _hensel_step(_zmod(f, m * m), g, h, s, t, m)
        m = m * m
    return _zmod(g, pk), _zmod(h, pk)


def _lift_factors(f: list[int], facs: list[list[int]], p: int, pk: int) -> list[list[int]]:
    """Monic factors mod pk with f = lc(f) * prod(result) (mod pk)."""
    if len(facs) == 1:
        return [_zmonic(_zmod(f, pk), pk)]
    mid = len(facs) // 2
    g0 = [f[-1] % p]
    for fac in facs[:mid]:
        g0 = _zmul(g0, fac, p)
    h0 = [1]
    for fac in facs[mid:]:
        h0 = _zmul(h0, fac, p)
    g, h = _lift_split(_zmod(f, pk), g0, h0, p, pk)
    return _lift_factors(g, facs[:mid], p, pk) + _lift_factors(h, facs[mid:], p, pk)


# ---------------------------------------------------------------------------
# recombination


def _symmetric(a: list[int], m: int) -> list[int]:
    half = m // 2
    return _trim([c - m if c > half else c for c in [x % m for x in a]])


def _int_content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = gcd(g, abs(c))
    return g or 1


def _primitive(a: list[int]) -> list[int]:
    g = _int_content(a)
    if a and a[-1] < 0:
        g = -g
    return [c // g for c in a]


def _zx_divides(h: list[int], g: list[int]) -> list[int] | None:
    """Exact quotient g/h over Z, or None."""
    q, r = QPoly(g).divmod(QPoly(h))
    if not r.is_zero or not q.is_integral:
        return None
    return [int(c) for c in q.coeffs]


def _factor_squarefree_z(g: list[int], rng: random.Random) -> list[QPoly]:
    """Irreducible monic rational factors of a primitive squarefree g in Z[x]."""
    n = len(g) - 1
    if n == 1:
        return [QPoly(g).monic()]

    deriv = _trim([g[i] * i for i in range(1, len(g))])
    candidates = []
    p = 2
    while len(candidates) < 4:
        p = _next_prime(p)
        if g[-1] % p == 0:
            continue
        if len(_zgcd(_zmod(g, p), _zmod(deriv, p), p)) != 1:
            continue
        facs = _factor_mod_p(_zmonic(_zmod(g, p), p), p, rng)
        candidates.append((len(facs), p, facs))
        if len(facs) == 1:
            return [QPoly(g).monic()]
    _, p, facs = min(candidates, key=lambda c: (c[0], c[1]))

    # lift far enough that any true factor (times lc) is recognizable
    norm2 = isqrt(sum(c * c for c in g)) + 1
    bound = 2 * (norm2 << n) * abs(g[-1]) + 1
    pk = p
    while pk < bound:
        pk *= p
    lifted = _lift_factors(_zmod(g, pk), facs, p, pk)

    found: list[QPoly] = []
    remaining = list(range(len(lifted)))
    size = 1
    while 2 * size <= len(remaining):
        hit = False
        for combo in combinations(remaining, size):
            cand = [g[-1] % pk]
            for i in combo:
                cand = _zmul(cand, lifted[i], pk)
            cand = _primitive(_symmetric(cand, pk))
            quot = _zx_divides(cand, g)
            if quot is not None:
                found.append(QPoly(cand).monic())
                g = _primitive(quot)
                remaining = [i for i in remaining if i not in combo]
                hit = True
                break
        if not hit:
            size += 1
    if len(g) > 1:
        found.append(QPoly(g).monic())
    return found


def _next_prime(p: int) -> int:
    q = p + 1 if p == 2 else p + 2
    if q == 3:
        return 3
    while True:
        if all(q % r for r in range(3, isqrt(q) + 1, 2)) and q % 2:
            return q
        q += 2


# ---------------------------------------------------------------------------
# public entry points


def factor(p: QPoly) -> list[tuple[QPoly, int]]:
    """Factor p into monic irreducibles with multiplicities.

    p equals lc(p) times the product of the returned factors raised to their
    multiplicities.  Factors are sorted by (degree, coefficients) so output
    is canonical.
    """
    if p.is_zero:
        raise ValidationError("cannot factor the zero polynomial")
    if p.degree > DEGREE_CAP:
        raise DegreeCapExceeded(f"degree {p.degree} exceeds cap {DEGREE_CAP}")
    if p.degree == 0:
        return []
    rng = random.Random(0x5A55)

    out: list[tuple[QPoly, int]] = []
    coeffs = list(p.coeffs)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        out.append((QPoly((0, 1)), shift))
    body = QPoly(coeffs)
    for part, mult in body.squarefree_decomposition():
        _, ints = part.clear_denominators()
        for irr in _factor_squarefree_z(ints, rng):
            out.append((irr, mult))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


def is_irreducible(p: QPoly) -> bool:
    if p.degree < 1:
        return False
    if p.degree == 1:
        return True
    facs = factor(p)
    return len(facs) == 1 and facs[0][1] == 1
