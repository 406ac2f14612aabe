"""Rational points on conics a1 x^2 + a2 y^2 + a3 z^2 = 0.

Ternary quadratics obey the local-global principle, so existence of a
rational point is decided by Legendre's criterion on the reduced form:
squarefree kernel, pairwise-coprime reduction, sign condition and the three
quadratic-residue conditions.  A bounded search within the Holzer box
provides the independent constructive route: a soluble reduced form always
has a point with |x_i| <= sqrt(|a_j a_k|).
"""

from __future__ import annotations

import math
from functools import lru_cache

from .arith import factorize
from .errors import DomainError


def squarefree_part(n: int) -> int:
    """Sign-carrying squarefree kernel: n = squarefree_part(n) * square."""
    if n == 0:
        raise DomainError("0 has no squarefree part")
    u = 1
    for p, e in factorize(n).factors:
        if e % 2:
            u *= p
    return -u if n < 0 else u


def legendre_reduce(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Reduce to an equivalent squarefree, pairwise coprime conic."""
    if a == 0 or b == 0 or c == 0:
        raise DomainError("conic coefficients must be nonzero")
    t = [squarefree_part(a), squarefree_part(b), squarefree_part(c)]
    while True:
        for i, j, k in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
            g = math.gcd(t[i], t[j])
            if g > 1:
                t[i] //= g
                t[j] //= g
                t[k] = squarefree_part(t[k] * g)
                break
        else:
            return tuple(t)


def _is_qr(n: int, m: int) -> bool:
    """x^2 = n (mod m) solvable, for squarefree m (CRT over prime factors)."""
    m = abs(m)
    for p, _ in factorize(m).factors:
        if p == 2:
            continue
        r = n % p
        if r and pow(r, (p - 1) // 2, p) != 1:
            return False
    return True


@lru_cache(maxsize=2_000_000)
def conic_has_rational_point(a: int, b: int, c: int) -> bool:
    """Legendre's criterion; equivalent to everywhere-local solubility."""
    ra, rb, rc = legendre_reduce(a, b, c)
    if ra > 0 and rb > 0 and rc > 0 or ra < 0 and rb < 0 and rc < 0:
        return False
    return (
        _is_qr(-rb * rc, ra)
        and _is_qr(-ra * rc, rb)
        and _is_qr(-ra * rb, rc)
    )


def holzer_search(a: int, b: int, c: int) -> tuple[int, int, int] | None:
    """Search the Holzer box of a squarefree pairwise-coprime conic.

    Any soluble such conic has a point with |x| <= sqrt|bc|, |y| <= sqrt|ac|,
    |z| <= sqrt|ab|, so an empty search proves there is no rational point.
    Returns a primitive canonical point or None.
    """
    if math.gcd(a, b) != 1 or math.gcd(a, c) != 1 or math.gcd(b, c) != 1:
        raise DomainError("expect pairwise coprime input")
    bx = math.isqrt(abs(b * c)) + 1
    by = math.isqrt(abs(a * c)) + 1
    for x in range(bx + 1):
        axx = a * x * x
        for y in range(-by, by + 1):
            if x == 0 and y <= 0:
                continue
            t = axx + b * y * y
            if t % c:
                continue
            w = -t // c
            if w < 0:
                continue
            z = math.isqrt(w)
            if z * z != w:
                continue
            g = math.gcd(math.gcd(x, abs(y)), z)
            if g == 1:
                return (x, y, z)
            # non-primitive hits reduce to smaller ones also inside the box
            return (x // g, y // g, z // g)
    return None
