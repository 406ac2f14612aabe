"""Independent brute-force oracles used to validate the package.

These deliberately avoid the package's pattern-search machinery: the p-adic
oracle does a BFS over primitive solution classes modulo p^k, certifying
solubility only on a verified Hensel margin and reporting insolubility only
after the solution tree dies out.  Classes are enumerated up to unit scaling
(each projective orbit has a unique representative whose first p-unit
coordinate is 1), which the scan exploits for speed but which does not change
what is searched.
"""

from __future__ import annotations

import itertools
import math

from fermatlab.local import DiagonalForm


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def qp_oracle(form: DiagonalForm, p: int, kmax: int = 6):
    """Return ("soluble", witness) / ("insoluble", None) / ("unknown", None).

    soluble: some solution mod p^k (k <= kmax) meets the Hensel margin
    k >= 2*tau + 1 for the true derivative valuation tau at one coordinate.
    insoluble: no primitive solution mod p^kmax exists (the BFS frontier
    emptied).  unknown: solutions persist to level kmax but none certifies.
    """
    d, a, n = form.degree, form.coeffs, form.arity
    delta = _vp(d, p) if d % p == 0 else 0
    va = [_vp(ai, p) for ai in a]

    def level_one():
        nodes = []
        for jstar in range(n):
            lows = [0] * jstar  # coordinates before the first unit are 0 mod p
            for rest in itertools.product(range(p), repeat=n - jstar - 1):
                x = tuple(lows) + (1,) + rest
                if form.evaluate(x) % p == 0:
                    nodes.append((jstar, x))
        return nodes

    def certify(x, k):
        qk = p**k
        for j in range(n):
            xj = x[j] % qk
            if xj == 0:
                continue
            tau = delta + va[j] + (d - 1) * _vp(xj, p)
            if k >= 2 * tau + 1:
                return x, k, j + 1, tau
        return None

    nodes = level_one()
    k = 1
    while nodes:
        for jstar, x in nodes:
            cert = certify(x, k)
            if cert is not None:
                return "soluble", cert
        if k == kmax:
            return "unknown", None
        q, qn = p**k, p ** (k + 1)
        nxt = []
        for jstar, x in nodes:
            fx = sum(ai * pow(xi, d, qn) for ai, xi in zip(a, x)) % qn
            g = [d * aj * pow(xj, d - 1, p) % p for aj, xj in zip(a, x)]
            live = [j for j in range(n) if j != jstar]
            if any(g):
                r = fx // q % p
                piv = next(j for j in live if g[j])
                others = [j for j in live if j != piv]
                gpinv = pow(g[piv], -1, p)
                for ts in itertools.product(range(p), repeat=len(others)):
                    s = r + sum(ti * g[j] for ti, j in zip(ts, others))
                    child = list(x)
                    for ti, j in zip(ts, others):
                        child[j] += ti * q
                    child[piv] += -s * gpinv % p * q
                    nxt.append((jstar, tuple(child)))
            elif fx // q % p == 0:
                for ts in itertools.product(range(p), repeat=len(live)):
                    child = list(x)
                    for ti, j in zip(ts, live):
                        child[j] += ti * q
                    nxt.append((jstar, tuple(child)))
        nodes = nxt
        k += 1
    return "insoluble", None


def verify_oracle_witness(form: DiagonalForm, p: int, cert) -> bool:
    x, k, j, tau = cert
    if form.evaluate(x) % p**k != 0 or k < 2 * tau + 1:
        return False
    xj = x[j - 1] % p**k
    return xj != 0


def naive_point_search(form: DiagonalForm, bound: int) -> list[tuple[int, ...]]:
    """Triple loop over |x_i| <= bound; canonical primitive representatives."""
    d = form.degree
    pts = set()
    rng = range(-bound, bound + 1)
    for x in itertools.product(rng, repeat=form.arity):
        if all(v == 0 for v in x):
            continue
        if form.evaluate(x) != 0:
            continue
        g = 0
        for v in x:
            g = math.gcd(g, v)
        x = tuple(v // g for v in x)
        lead = next(v for v in x if v)
        if lead < 0:
            x = tuple(-v for v in x)
        pts.add(x)
    return sorted(pts)


def power_congruence_brute(b: int, d: int, p: int, k: int) -> list[int]:
    q = p**k
    return sorted(x for x in range(q) if x % p and pow(x, d, q) == b % q)
