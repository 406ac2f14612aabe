"""Large-sieve quantities: exclusion counts, the density sum G(z) and the
bound envelopes.  G, g_k and the density exponent are kept as exact
rationals; floats appear only when a bound is finally evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import mu, omega, rd
from .errors import DomainError, GuardError

Z_CAP = 10**6


@dataclass(frozen=True)
class SieveParams:
    d: int
    z: float
    H: tuple[float, float, float]

    def __post_init__(self) -> None:
        if self.d < 2 or self.z < 1 or any(h < 1 for h in self.H):
            raise DomainError("need d >= 2, z >= 1 and H_i >= 1")


def unit_pair_insoluble_count(p: int, d: int, brute_force: bool = False) -> int:
    """Pairs (a_j, a_k) of units mod p whose two-term congruence has no unit
    solution: (p-1) * ((p-1) - R_d(p)), optionally recounted by brute force."""
    r = rd(p, d)
    if not brute_force:
        return (p - 1) * ((p - 1) - r)
    residues = {pow(x, d, p) for x in range(1, p)}
    count = 0
    for aj in range(1, p):
        inv = pow(aj, -1, p)
        for ak in range(1, p):
            if -ak * inv % p not in residues:
                count += 1
    return count


def tau(p: int, d: int) -> int:
    """Computable lower-bound subset of the excluded coefficient classes:
    triples with one zero coordinate whose companion pair is insoluble.

    This is the proof's explicit exclusion set 3(p-1)^2 (1 - 1/gcd(d, p-1)),
    reported as tau_lower; the full excluded set is never computed.
    """
    return 3 * unit_pair_insoluble_count(p, d)


def g_k(n: int, k: int) -> Fraction:
    """Multiplicative density weight |mu(n)| (3(1-1/k))^omega(n) / n."""
    if n < 1 or k < 2:
        raise DomainError("need n >= 1 and k >= 2")
    if mu(n) == 0:
        return Fraction(0)
    return (3 * (1 - Fraction(1, k))) ** omega(n) / n if n > 1 else Fraction(1)


def _odd_squarefree_factored(limit: int):
    """Yield (n, prime factors) for odd squarefree n <= limit, n > 1."""
    spf = list(range(limit + 1))
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == p:
            for m in range(p * p, limit + 1, p):
                if spf[m] == m:
                    spf[m] = p
    for n in range(3, limit + 1, 2):
        m, ps, square = n, [], False
        while m > 1:
            p = spf[m]
            m //= p
            if m % p == 0:
                square = True
                break
            ps.append(p)
        if not square:
            yield n, ps


def G(z: float, d: int) -> Fraction:
    """Exact rational G(z) = sum over odd squarefree n <= z of
    prod_{p|n} tau(p)/(p^3 - tau(p)); the empty product n=1 contributes 1."""
    if z < 1:
        raise DomainError("need z >= 1")
    if z > Z_CAP:
        raise GuardError(f"sieve level z capped at {Z_CAP}")
    limit = int(z)
    total = Fraction(1)
    factor: dict[int, Fraction] = {}
    for n, ps in _odd_squarefree_factored(limit):
        term = Fraction(1)
        for p in ps:
            f = factor.get(p)
            if f is None:
                t = tau(p, d)
                f = factor[p] = Fraction(t, p**3 - t)
            term *= f
        total += term
    return total


def large_sieve_bound(params: SieveParams) -> float:
    """The un-normalized bound shape prod(H_i + z^2) / G(z)."""
    num = 1.0
    for h in params.H:
        num *= h + params.z**2
    return num / float(G(params.z, params.d))


def choose_z(H: float, v: tuple[int, int, int], d: int) -> float:
    """The working sieve level sqrt(H) * (v1 v2 v3)^(-d/2), floored at 1."""
    if H < 1 or any(vi < 1 for vi in v):
        raise DomainError("need H >= 1 and v_i >= 1")
    z = math.sqrt(H) * (v[0] * v[1] * v[2]) ** (-d / 2)
    return max(1.0, z)


def theorem1_bound(H: float, d: int) -> float:
    """Density-zero envelope H^3 / (log H)^psi(d), natural log."""
    if H <= 1:
        raise DomainError("need H > 1")
    from .arith import psi

    return H**3 / math.log(H) ** float(psi(d))
