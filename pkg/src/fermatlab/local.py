"""Solubility of diagonal forms over R and over every Q_p, with certificates.

The p-adic decision procedure is a normalized pattern search: choose a
support S of coordinates, a valuation pattern xi on S with min 0, and look
for unit tuples solving the induced congruence modulo p^m where
m = 2*min_j(v_p(d) + v_p(a_j) + d*xi_j) + 1.  Any hit lifts by Hensel's
lemma in the minimizing coordinate; if every pattern is empty the form has
no nontrivial Q_p-zero (every p-adic solution, scaled to minimal valuation
zero, reduces into some searched pattern).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import factorize, is_prime, primes_up_to, vp
from .errors import DomainError, InternalError


@dataclass(frozen=True)
class DiagonalForm:
    """a_1 x_1^d + ... + a_n x_n^d with nonzero integer coefficients."""

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.degree < 2:
            raise DomainError("degree must be >= 2")
        if not 2 <= len(self.coeffs) <= 4:
            raise DomainError("supported arities are 2, 3 and 4")
        if any(a == 0 for a in self.coeffs):
            raise DomainError("all coefficients must be nonzero")

    @property
    def arity(self) -> int:
        return len(self.coeffs)

    def evaluate(self, x: tuple[int, ...]) -> int:
        return sum(a * xi**self.degree for a, xi in zip(self.coeffs, x))

    def to_json(self) -> dict:
        return {"d": self.degree, "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Witness:
    """A solution of the form mod p^m that Hensel-lifts in coordinate j.

    Coordinate indices are 1-based.  tau is the conservative derivative
    valuation v_p(d) + v_p(a_j) + d*xi_j; the margin m >= 2*tau + 1 makes the
    lift to Z_p unconditional.
    """

    x: tuple[int, ...]
    modulus_exp: int
    coordinate: int
    tau: int

    def to_json(self) -> dict:
        return {
            "x": list(self.x),
            "m": self.modulus_exp,
            "j": self.coordinate,
            "tau": self.tau,
        }


@dataclass(frozen=True)
class PatternRecord:
    """One exhausted (support, valuation pattern, modulus) search cell."""

    support: tuple[int, ...]
    xi: tuple[int, ...]
    modulus_exp: int

    def to_json(self) -> dict:
        return {"support": list(self.support), "xi": list(self.xi), "m": self.modulus_exp}


@dataclass(frozen=True)
class LocalCertificate:
    place: str  # "real" or the decimal prime
    soluble: bool
    witness: Witness | None = None
    exhausted: tuple[PatternRecord, ...] | None = None

    def to_json(self) -> dict:
        out: dict = {"place": self.place, "soluble": self.soluble}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.exhausted is not None:
            out["exhaustion"] = [r.to_json() for r in self.exhausted]
        return out


def verify_witness(form: DiagonalForm, p: int, w: Witness) -> bool:
    """Arithmetic re-check: the witness solves the form mod p^m on margin,
    and its Hensel coordinate is a p-unit times p^xi with the claimed tau."""
    q = p**w.modulus_exp
    if form.evaluate(w.x) % q != 0:
        return False
    if w.modulus_exp < 2 * w.tau + 1:
        return False
    d = form.degree
    aj = form.coeffs[w.coordinate - 1]
    delta = vp(d, p) if d % p == 0 else 0
    xi = w.tau - delta - vp(aj, p)
    if xi < 0 or xi % d:
        return False
    xj = w.x[w.coordinate - 1]
    return xj != 0 and vp(xj, p) == xi // d


def real_soluble(form: DiagonalForm) -> bool:
    """Nonzero real solution: automatic for odd degree, else needs mixed signs."""
    if form.degree % 2 == 1:
        return True
    return any(a > 0 for a in form.coeffs) and any(a < 0 for a in form.coeffs)


def p0(d: int) -> int:
    """Smallest prime beyond which good reduction alone gives Q_p-points.

    For p not dividing d*a1*a2*a3 the plane curve is smooth of genus
    (d-1)(d-2)/2, so by the Weil bound it has an F_p-point once
    p > ((d-1)(d-2))^2, and any such point is smooth and lifts.
    """
    if d < 2:
        raise DomainError("need d >= 2")
    n = max(d, ((d - 1) * (d - 2)) ** 2) + 1
    while not is_prime(n):
        n += 1
    return n


# --- unit congruence solver -------------------------------------------------

def _valuation_capped(c: int, p: int, cap: int) -> int:
    v = 0
    while v < cap and c % p == 0:
        c //= p
        v += 1
    return v


def _unit_root_table(p: int, d: int) -> dict[int, tuple[int, ...]]:
    table: dict[int, list[int]] = {}
    for x in range(1, p):
        table.setdefault(pow(x, d, p), []).append(x)
    return {k: tuple(v) for k, v in table.items()}


@lru_cache(maxsize=500_000)
def _solve_unit_congruence(
    coeffs: tuple[int, ...], d: int, p: int, mod_exp: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Decide sum_i c_i u_i^d = 0 (mod p^M) over p-unit tuples u.

    Exhaustive: solves mod p (root-table on one coordinate), then lifts level
    by level.  Writing v for the minimal valuation among the c_i, every
    surviving unit tuple mod p^(2*v_p(d)+1) of the normalized congruence
    Hensel-lifts, so the search depth is bounded independently of M; the
    returned witness is extended to the full modulus.  Unit tuples are
    enumerated up to the diagonal scaling u -> s*u (the zero set is
    invariant), fixing one coordinate to 1.
    """
    k = len(coeffs)
    big = p**mod_exp
    reduced = [ci % big for ci in coeffs]
    vals = [_valuation_capped(ci, p, mod_exp) for ci in reduced]
    v = min(vals)
    if v >= mod_exp:
        return True, (1,) * k
    c = [ci // p**v for ci in reduced]
    mm = mod_exp - v
    delta = _valuation_capped(d, p, d.bit_length() + 1)
    depth = min(2 * delta + 1, mm)

    i0 = vals.index(v)  # fixed to u = 1 by scaling normalization
    unit_idx = [i for i in range(k) if c[i] % p != 0 and i != i0]
    free_idx = [i for i in range(k) if c[i] % p == 0 and i != i0]

    # level 1: solve the congruence mod p
    nodes: list[tuple[int, ...]] = []
    if unit_idx:
        j0 = unit_idx[-1]
        rest = unit_idx[:-1]
        table = _unit_root_table(p, d)
        inv_cj0 = pow(c[j0], -1, p)
        for ru in itertools.product(range(1, p), repeat=len(rest)):
            partial = c[i0] + sum(c[i] * pow(u, d, p) for i, u in zip(rest, ru))
            roots = table.get(-partial * inv_cj0 % p)
            if not roots:
                continue
            for rf in itertools.product(range(1, p), repeat=len(free_idx)):
                base = [0] * k
                base[i0] = 1
                for i, u in zip(rest, ru):
                    base[i] = u
                for i, u in zip(free_idx, rf):
                    base[i] = u
                for r in roots:
                    node = base.copy()
                    node[j0] = r
                    nodes.append(tuple(node))
    elif c[i0] % p == 0:
        # cannot happen: i0 has the minimal (zero) valuation
        raise InternalError("normalized congruence lost its unit coefficient")
    # else: the single unit term c[i0] is nonzero mod p -> no level-1 solutions

    if depth == 1:
        nodes.sort()
    # lift levels 2..depth; only reached when p | d, where every partial
    # derivative vanishes mod p and lifts branch over all increments
    q = p
    for level in range(2, depth + 1):
        step, q = q, q * p
        free = [i for i in range(k) if i != i0]
        nxt = []
        for u in nodes:
            if sum(ci * pow(ui, d, q) for ci, ui in zip(c, u)) % q:
                continue
            for t in itertools.product(range(p), repeat=k - 1):
                child = list(u)
                for i, ti in zip(free, t):
                    child[i] += ti * step
                nxt.append(tuple(child))
        nodes = sorted(nxt)

    if not nodes:
        return False, None
    witness = _extend_witness(tuple(c), d, p, nodes[0], depth, mm, delta)
    return True, witness


def _extend_witness(
    c: tuple[int, ...], d: int, p: int, u: tuple[int, ...], level: int, target: int, tau: int
) -> tuple[int, ...]:
    """Newton-lift a margin solution mod p^level to mod p^target."""
    j = min(i for i in range(len(c)) if c[i] % p != 0)
    u = list(u)
    while level < target:
        q = p ** (level + 1)
        f = sum(ci * pow(ui, d, q) for ci, ui in zip(c, u)) % q
        if f:
            r = (f // p**level) % p
            deriv_unit = d * c[j] * pow(u[j], d - 1, p) // p**tau % p
            t = -r * pow(deriv_unit, -1, p) % p
            u[j] = (u[j] + t * p ** (level - tau)) % q
            if sum(ci * pow(ui, d, q) for ci, ui in zip(c, u)) % q:
                raise InternalError("witness extension failed")
        level += 1
    big = p**target
    return tuple(ui % big for ui in u)


# --- pattern search ---------------------------------------------------------

def _patterns(n: int, xi_max: int):
    for size in range(2, n + 1):
        for support in itertools.combinations(range(n), size):
            for xi in itertools.product(range(xi_max + 1), repeat=size):
                if min(xi) == 0:
                    yield support, xi


def qp_soluble(form: DiagonalForm, p: int) -> LocalCertificate:
    """Exact Q_p-solubility decision with a liftable witness or an
    exhaustion record over all admissible (support, valuation) patterns."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    d = form.degree
    n = form.arity
    a = form.coeffs
    delta = vp(d, p) if d % p == 0 else 0
    va = [vp(ai, p) for ai in a]
    m_cap = 2 * (delta + max(va)) + 1
    xi_max = -(-m_cap // d)  # ceil

    exhausted: list[PatternRecord] = []
    for support, xi in _patterns(n, xi_max):
        taus = [delta + va[j] + d * x for j, x in zip(support, xi)]
        m = 2 * min(taus) + 1
        big = p**m
        cvec = tuple(a[j] * p ** (d * x) % big for j, x in zip(support, xi))
        found, units = _solve_unit_congruence(cvec, d, p, m)
        if not found:
            exhausted.append(
                PatternRecord(tuple(j + 1 for j in support), xi, m)
            )
            continue
        x = [0] * n
        for j, xij, u in zip(support, xi, units):
            x[j] = p**xij * u
        jmin = support[taus.index(min(taus))]
        w = Witness(tuple(x), m, jmin + 1, min(taus))
        if form.evaluate(w.x) % big:
            raise InternalError("pattern witness does not verify")
        return LocalCertificate(str(p), True, witness=w)
    return LocalCertificate(str(p), False, exhausted=tuple(exhausted))


def test_prime_set(form: DiagonalForm) -> list[int]:
    """Primes where solubility is not automatic: p < p0(d) or p | d*prod(a_i)."""
    cutoff = p0(form.degree)
    bad = set(primes_up_to(cutoff - 1))
    prod = form.degree
    for ai in form.coeffs:
        prod *= ai
    bad.update(p for p, _ in factorize(prod).factors)
    return sorted(bad)


def everywhere_locally_soluble(
    form: DiagonalForm,
) -> tuple[bool, list[LocalCertificate]]:
    """Check the real place and every prime in the finite test set.

    Restricted to arity 3 and 4: there the Weil bound makes solubility
    automatic at good primes >= p0(d), so the finite set is conclusive.
    """
    if form.arity not in (3, 4):
        raise DomainError("everywhere-local decision needs arity 3 or 4")
    certs = [LocalCertificate("real", real_soluble(form))]
    ok = certs[0].soluble
    for p in test_prime_set(form):
        cert = qp_soluble(form, p)
        certs.append(cert)
        ok = ok and cert.soluble
    return ok, certs


# --- witness residue classes ------------------------------------------------

@dataclass(frozen=True)
class WitnessClass:
    """Residue class c mod Q of quaternary coefficient vectors soluble in
    every Q_p with p < p0(d), assembled prime by prime via the CRT."""

    d: int
    arity: int
    modulus: int  # Q
    residues: tuple[int, ...]  # c mod Q
    prime_data: tuple[tuple[int, int, tuple[int, ...]], ...]  # (p, q_p, a_p)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "arity": self.arity,
            "Q": self.modulus,
            "c": list(self.residues),
            "prime_data": [
                {"p": p, "q_p": q, "a_p": list(ap)} for p, q, ap in self.prime_data
            ],
            "artifact_chosen": True,
        }


def witness_class(d: int, arity: int = 4) -> WitnessClass:
    """Build (Q, c) so that every coefficient vector = c mod Q is soluble in
    Q_p for all p < p0(d).

    For each small prime the class pins a_1 = 1 and a_2 = -1 modulo
    q_p = p^(2*v_p(d)+1); then x = (1,1,0,...,0) solves the form mod q_p with
    derivative valuation exactly v_p(d), which is the Hensel margin.  The
    remaining entries are free parameters of the construction (set to 1 and
    q_p - 1 here).  The explicit q_p and c are artifact choices.
    """
    if d < 2 or arity != 4:
        raise DomainError("witness classes are built for arity 4, d >= 2")
    prime_data = []
    for p in primes_up_to(p0(d) - 1):
        delta = vp(d, p) if d % p == 0 else 0
        qp = p ** (2 * delta + 1)
        ap = (1, qp - 1, 1, qp - 1)
        if not qp_soluble(DiagonalForm(d, ap), p).soluble:
            raise InternalError(f"witness class construction failed at p={p}")
        prime_data.append((p, qp, ap))
    modulus = math.prod(q for _, q, _ in prime_data)
    residues = []
    for i in range(arity):
        # CRT across the pairwise coprime q_p
        x, mod = 0, 1
        for _, q, ap in prime_data:
            t = (ap[i] - x) * pow(mod, -1, q) % q
            x += mod * t
            mod *= q
        residues.append(x % modulus)
    return WitnessClass(d, arity, modulus, tuple(residues), tuple(prime_data))
