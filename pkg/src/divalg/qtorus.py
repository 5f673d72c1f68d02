"""Quantum torus arithmetic at roots of unity.

The commutation data is a d x d integer exponent matrix k at a common order
N: the (i, j) commutation scalar is q_ij = zeta_N^{k_ij}, with k_ii = 0 and
k_ij + k_ji = 0 (mod N) so that q_ij = q_ji^{-1}.  Monomials multiply by

    t^m t^n = sigma(m, n) t^{m + n},    sigma(m, n) = prod_{i<j} q_ji^{m_j n_i},

and the commutation form f(m, n) = sigma(m, n) / sigma(n, m) has exponent
sum_{i,j} k_ji m_j n_i = m^T k n.  The radical is the sublattice of degrees
whose monomials commute with everything, computed as an integer kernel mod N
via Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm

from .lattices import hermite_normal_form, in_lattice, smith_kernel_mod
from .scalars import Cyc
from .witt import DegVec


@dataclass(frozen=True)
class QMatrix:
    """Commutation matrix q_ij = zeta_N^{exps[i][j]}."""

    d: int
    N: int
    exps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("order must be positive")
        if len(self.exps) != self.d or any(len(r) != self.d for r in self.exps):
            raise ValueError("exponent matrix shape mismatch")
        for i in range(self.d):
            if self.exps[i][i] != 0:
                raise ValueError("diagonal exponents must be zero")
            for j in range(self.d):
                if (self.exps[i][j] + self.exps[j][i]) % self.N:
                    raise ValueError("exponent matrix must be skew modulo N")

    @staticmethod
    def from_exps(n: int, exps) -> "QMatrix":
        exps = tuple(tuple(int(x) for x in row) for row in exps)
        return QMatrix(len(exps), n, exps)

    def q_entry(self, i: int, j: int) -> Cyc:
        """q_ij as a cyclotomic number (1-based indices)."""
        return Cyc.zeta(self.N, self.exps[i - 1][j - 1])

    def is_classical(self) -> bool:
        return all(x % self.N == 0 for row in self.exps for x in row)


@dataclass(frozen=True)
class QMonomial:
    """coeff * t^n; the zero element is coeff == 0 at degree 0."""

    coeff: Cyc
    n: DegVec

    def is_zero(self) -> bool:
        return self.coeff.is_zero()


def zero_monomial(d: int) -> QMonomial:
    return QMonomial(Cyc.from_rat(0), (0,) * d)


def monomial(q: QMatrix, n, coeff=1) -> QMonomial:
    c = coeff if isinstance(coeff, Cyc) else Cyc.from_rat(coeff, q.N)
    if c.is_zero():
        return zero_monomial(q.d)
    return QMonomial(c, tuple(int(x) for x in n))


def sigma_exponent(q: QMatrix, m, n) -> int:
    """Exponent of zeta_N in sigma(m, n), reduced mod N."""
    if len(m) != q.d or len(n) != q.d:
        raise ValueError("degree dimension mismatch")
    e = 0
    for i in range(q.d):
        for j in range(i + 1, q.d):
            kji = q.exps[j][i]
            if kji:
                e += kji * m[j] * n[i]
    return e % q.N


def f_exponent(q: QMatrix, m, n) -> int:
    """Exponent of zeta_N in f(m, n) = sigma(m, n)/sigma(n, m): m^T k n mod N."""
    if len(m) != q.d or len(n) != q.d:
        raise ValueError("degree dimension mismatch")
    e = 0
    for i in range(q.d):
        mi = m[i]
        if not mi:
            continue
        row = q.exps[i]
        for j in range(q.d):
            if row[j] and n[j]:
                e += mi * row[j] * n[j]
    return e % q.N


def sigma(q: QMatrix, m, n) -> Cyc:
    """The multiplication cocycle: t^m t^n = sigma(m, n) t^{m+n}."""
    return Cyc.zeta(q.N, sigma_exponent(q, m, n))


def f_form(q: QMatrix, m, n) -> Cyc:
    """The commutation form: t^m t^n = f(m, n) t^n t^m."""
    return Cyc.zeta(q.N, f_exponent(q, m, n))


def torus_mul(q: QMatrix, a: QMonomial, b: QMonomial) -> QMonomial:
    if len(a.n) != q.d or len(b.n) != q.d:
        raise ValueError("degree dimension mismatch")
    if a.is_zero() or b.is_zero():
        return zero_monomial(q.d)
    c = a.coeff * b.coeff * sigma(q, a.n, b.n)
    return QMonomial(c, tuple(x + y for x, y in zip(a.n, b.n)))


def torus_commutator(q: QMatrix, m, n) -> QMonomial:
    """[t^m, t^n] = (sigma(m,n) - sigma(n,m)) t^{m+n}; may be zero."""
    e1 = sigma_exponent(q, m, n)
    e2 = sigma_exponent(q, n, m)
    if e1 == e2:
        return zero_monomial(q.d)
    c = Cyc.zeta(q.N, e1) - Cyc.zeta(q.N, e2)
    if c.is_zero():
        return zero_monomial(q.d)
    return QMonomial(c, tuple(x + y for x, y in zip(m, n)))


def rad_q(q: QMatrix) -> list[list[int]]:
    """HNF basis of Rad_q = {n : f(n, m) = 1 for all m} = ker(k^T mod N)."""
    kt = [[q.exps[j][i] for j in range(q.d)] for i in range(q.d)]
    return smith_kernel_mod(kt, q.N)


def in_rad(q: QMatrix, n) -> bool:
    """Membership in Rad_q, directly via f(n, e_i) = 1 for all i."""
    for i in range(q.d):
        e = sum(q.exps[j][i] * n[j] for j in range(q.d))
        if e % q.N:
            return False
    return True


def block_normal_q(l) -> QMatrix:
    """Commutation matrix in block-normal form from the order vector l.

    Coordinates pair up as (1,2), (3,4), ... with q_{2i-1,2i} a primitive
    root of order l_{2i-1} = l_{2i} >= 2; trailing coordinates have l_i = 1
    and commute with everything.
    """
    l = tuple(int(x) for x in l)
    d = len(l)
    if d < 1 or any(x < 1 for x in l):
        raise ValueError("l must be a vector of positive integers")
    pairs = []
    pos = 0
    while pos < d and l[pos] > 1:
        if pos + 1 >= d or l[pos + 1] != l[pos]:
            raise ValueError("paired entries of l must come in equal pairs >= 2")
        pairs.append(pos)
        pos += 2
    if any(x != 1 for x in l[pos:]):
        raise ValueError("trailing entries of l must all be 1")
    n = lcm(*l)
    exps = [[0] * d for _ in range(d)]
    for p in pairs:
        exps[p][p + 1] = n // l[p]
        exps[p + 1][p] = -(n // l[p])
    return QMatrix(d, n, tuple(tuple(r) for r in exps))


def block_structure(q: QMatrix) -> tuple[int, ...] | None:
    """Recover the order vector l from a block-normal QMatrix, else None.

    Block-normal means: leading coordinate pairs (1,2), (3,4), ... each
    carrying a primitive root of some order >= 2, and every other pair of
    coordinates commuting.
    """
    d, n = q.d, q.N
    l = [1] * d
    pos = 0
    while pos + 1 < d:
        a = q.exps[pos][pos + 1] % n
        if a == 0:
            break
        if (q.exps[pos + 1][pos] + a) % n:
            return None
        l[pos] = l[pos + 1] = n // gcd(a, n)
        pos += 2
    for i in range(d):
        for j in range(d):
            if i < pos and j < pos and i != j and i // 2 == j // 2:
                continue  # inside a designated pair
            if q.exps[i][j] % n:
                return None
    return tuple(l)


def cocycle_identities_residual(q: QMatrix, m, n, r) -> tuple[Cyc, Cyc]:
    """(f(m,n) - sigma(m,n)/sigma(n,m),  f(m+n,r) - f(m,r) f(n,r)); both 0."""
    first = f_form(q, m, n) - sigma(q, m, n) / sigma(q, n, m)
    mn = tuple(x + y for x, y in zip(m, n))
    second = f_form(q, mn, r) - f_form(q, m, r) * f_form(q, n, r)
    return first, second


def sigma_cocycle_residual(q: QMatrix, m, n, r) -> Cyc:
    """sigma(m,n) sigma(m+n,r) - sigma(n,r) sigma(m,n+r); the associativity
    cocycle identity, must vanish."""
    mn = tuple(x + y for x, y in zip(m, n))
    nr = tuple(x + y for x, y in zip(n, r))
    return sigma(q, m, n) * sigma(q, mn, r) - sigma(q, n, r) * sigma(q, m, nr)


def rad_basis_lattice(q: QMatrix) -> list[list[int]]:
    """Rad_q basis, HNF-canonicalized (alias kept close to rad_q for reports)."""
    return hermite_normal_form(rad_q(q))


__all__ = [
    "QMatrix",
    "QMonomial",
    "zero_monomial",
    "monomial",
    "sigma",
    "f_form",
    "sigma_exponent",
    "f_exponent",
    "torus_mul",
    "torus_commutator",
    "rad_q",
    "in_rad",
    "block_normal_q",
    "block_structure",
    "cocycle_identities_residual",
    "sigma_cocycle_residual",
    "in_lattice",
]
