"""Exact elementary number theory.

Factorization, the classical multiplicative functions, d-free structure and
power congruences modulo prime powers.  Everything here is a pure function of
its inputs and safe to call concurrently; the only shared state is a
read-mostly factorization cache.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

INT64_MAX = 2**63 - 1

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_LIMIT = 10**6


def check_width(n: int) -> int:
    if abs(n) > INT64_MAX:
        raise DomainError(f"|{n}| exceeds the 64-bit operating range")
    return n


def is_prime(n: int) -> bool:
    """Deterministic primality test for the 64-bit range."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by a plain sieve of Eratosthenes."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i, f in enumerate(flags) if f]


def _brent(n: int) -> int:
    """One nontrivial factor of composite odd n (Brent's cycle variant).

    The polynomial offset c is swept deterministically so repeated runs
    factor identically.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
    raise ArithmeticError(f"factor search failed on {n}")


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of a positive integer, primes strictly increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise DomainError(f"invalid factor list for {self.value}")
            last = p
            prod *= p**e
        if prod != self.value or self.value < 1:
            raise DomainError(f"factors do not multiply back to {self.value}")

    def to_json(self) -> dict:
        return {"value": self.value, "factors": [[p, e] for p, e in self.factors]}


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


@lru_cache(maxsize=200_000)
def factorize(n: int) -> Factorization:
    """Factor |n|; trial division to 10^6 then deterministic rho splitting."""
    if n == 0:
        raise DomainError("cannot factor 0")
    check_width(n)
    m = abs(n)
    value = m
    found: dict[int, int] = {}
    for p in (2, 3, 5):
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
    # 2,3-coprime wheel
    q, inc = 7, 4
    while q * q <= m and q <= _TRIAL_LIMIT:
        while m % q == 0:
            found[q] = found.get(q, 0) + 1
            m //= q
        q += inc
        inc = 6 - inc
    if m > 1:
        _factor_into(m, found)
    return Factorization(value, tuple(sorted(found.items())))


def omega(n: int) -> int:
    """Number of distinct prime factors of |n|."""
    return len(factorize(n).factors)


def mu(n: int) -> int:
    """Mobius function of |n|."""
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def phi(n: int) -> int:
    """Euler totient of |n|."""
    result = 1
    for p, e in factorize(n).factors:
        result *= (p - 1) * p ** (e - 1)
    return result


def vp(n: int, p: int) -> int:
    """p-adic valuation of n != 0."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n == 0:
        raise DomainError("v_p(0) is undefined here")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_dfree(a: int, d: int) -> bool:
    """True iff no prime divides |a| to the d-th power or higher."""
    if a == 0 or d < 2:
        raise DomainError("need a != 0 and d >= 2")
    return all(e < d for _, e in factorize(a).factors)


@dataclass(frozen=True)
class DfreeDecomposition:
    """a = u * v**d with u carrying the sign of a, |u| d-free, v >= 1."""

    u: int
    v: int
    d: int

    def __post_init__(self) -> None:
        if self.v < 1 or self.u == 0 or self.d < 2:
            raise DomainError("invalid d-free decomposition")
        if not is_dfree(self.u, self.d):
            raise DomainError(f"{self.u} is not {self.d}-free")

    @property
    def value(self) -> int:
        return self.u * self.v**self.d


def dfree_decompose(a: int, d: int) -> DfreeDecomposition:
    """Split a into its d-free part and a perfect d-th power cofactor."""
    if a == 0 or d < 2:
        raise DomainError("need a != 0 and d >= 2")
    u, v = 1, 1
    for p, e in factorize(a).factors:
        u *= p ** (e % d)
        v *= p ** (e // d)
    if a < 0:
        u = -u
    return DfreeDecomposition(u, v, d)


def _check_odd_prime(p: int) -> None:
    if p == 2:
        raise DomainError("p = 2 is excluded here; the lifting machinery covers it")
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def rd(p: int, d: int) -> int:
    """Number of nonzero d-th power residues mod an odd prime p."""
    _check_odd_prime(p)
    if d < 1:
        raise DomainError("need d >= 1")
    return (p - 1) // math.gcd(d, p - 1)


def dth_power_residues(p: int, d: int) -> set[int]:
    """The set {x^d mod p : x in F_p^*} for odd p."""
    _check_odd_prime(p)
    if d < 1:
        raise DomainError("need d >= 1")
    return {pow(x, d, p) for x in range(1, p)}


def gamma_exponent(p: int, d: int) -> tuple[int, int]:
    """Return (delta, gamma): delta = v_p(d), gamma the lifting cutoff exponent."""
    if d < 2:
        raise DomainError("need d >= 2")
    delta = vp(d, p)
    if p > 2 or delta == 0:
        gamma = delta + 1
    else:
        gamma = delta + 2
    return delta, gamma


def solve_power_congruence(b: int, d: int, p: int, k: int) -> list[int]:
    """All x mod p^k with x^d = b (mod p^k), for b coprime to p.

    Solves mod p by enumeration, then lifts level by level, branching where
    the derivative is not a unit.  For k >= gamma the count is either 0 or
    p^(gamma-delta-1) * gcd(d, p^delta * (p-1)).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if d < 2 or k < 1:
        raise DomainError("need d >= 2 and k >= 1")
    if b % p == 0:
        raise DomainError("b must be a p-unit")
    sols = [x for x in range(1, p) if pow(x, d, p) == b % p]
    q = p
    for _ in range(2, k + 1):
        step, q = q, q * p
        target = b % q
        sols = [
            x + t * step
            for x in sols
            for t in range(p)
            if pow(x + t * step, d, q) == target
        ]
    return sorted(sols)


def psi(d: int) -> Fraction:
    """The density exponent 3/phi(d) * (1 - 1/d), as an exact rational."""
    if d < 2:
        raise DomainError("need d >= 2")
    return Fraction(3, phi(d)) * (1 - Fraction(1, d))
