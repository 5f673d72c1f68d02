"""Witt algebra elements and the divergence-zero subalgebras.

Homogeneous elements are written D(u, r) = t^r sum_i u_i d_i with d_i the
i-th degree derivation; a general element is a finite sum of these, stored
per degree.  The bracket is

    [D(u, r), D(v, s)] = D((u|s) v - (v|r) u, r + s).

Membership predicates implement the divergence-zero condition (u|r) = 0 for
every nonzero degree, with (in_lhat) or without (in_l) an unrestricted
degree-zero part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

DegVec = tuple[int, ...]


def pairing(u, v):
    """The standard bilinear form (u|v) = sum u_i v_i."""
    if len(u) != len(v):
        raise ValueError("dimension mismatch in pairing")
    return sum(a * b for a, b in zip(u, v))


def _as_deg(r) -> DegVec:
    return tuple(int(x) for x in r)


@dataclass(frozen=True)
class DTerm:
    """One homogeneous derivation D(u, r); zero coefficient vectors stand for 0."""

    u: tuple
    r: DegVec

    def is_zero(self) -> bool:
        return all(not c for c in self.u)

    def as_elem(self) -> "AlgElem":
        return AlgElem.term(self.u, self.r)


class AlgElem:
    """A finite sum of D(u, r) terms, combined per degree r."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: dict[DegVec, tuple] | None = None):
        self.d = d
        clean: dict[DegVec, tuple] = {}
        for r, u in (terms or {}).items():
            if len(r) != d or len(u) != d:
                raise ValueError("term dimension mismatch")
            if any(u):
                clean[_as_deg(r)] = tuple(u)
        self.terms = clean

    @staticmethod
    def zero(d: int) -> "AlgElem":
        return AlgElem(d)

    @staticmethod
    def term(u, r) -> "AlgElem":
        u = tuple(u)
        return AlgElem(len(u), {_as_deg(r): u})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgElem") -> "AlgElem":
        if other.d != self.d:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for r, u in other.terms.items():
            if r in out:
                out[r] = tuple(a + b for a, b in zip(out[r], u))
            else:
                out[r] = u
        return AlgElem(self.d, out)

    def __neg__(self) -> "AlgElem":
        return AlgElem(self.d, {r: tuple(-c for c in u) for r, u in self.terms.items()})

    def __sub__(self, other: "AlgElem") -> "AlgElem":
        return self + (-other)

    def scale(self, c) -> "AlgElem":
        return AlgElem(self.d, {r: tuple(c * x for x in u) for r, u in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgElem):
            return NotImplemented
        return self.d == other.d and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "AlgElem(0)"
        bits = [f"D({list(u)}, {list(r)})" for r, u in sorted(self.terms.items())]
        return " + ".join(bits)


def bracket_witt(x: AlgElem, y: AlgElem) -> AlgElem:
    """Bilinear extension of [D(u,r), D(v,s)] = D((u|s)v - (v|r)u, r+s)."""
    if x.d != y.d:
        raise ValueError("dimension mismatch in bracket")
    out = AlgElem.zero(x.d)
    for r, u in x.terms.items():
        for s, v in y.terms.items():
            a = pairing(u, s)
            b = pairing(v, r)
            w = tuple(a * vi - b * ui for ui, vi in zip(u, v))
            if any(w):
                out = out + AlgElem.term(w, tuple(ri + si for ri, si in zip(r, s)))
    return out


def d_basis(r, i: int) -> DTerm:
    """The spanning element t^r (r_{i+1} d_i - r_i d_{i+1}) of the
    divergence-zero algebra; valid for 1 <= i <= d-1."""
    r = _as_deg(r)
    d = len(r)
    if not 1 <= i <= d - 1:
        raise IndexError(f"index must be in 1..{d - 1}")
    u = [0] * d
    u[i - 1] = r[i]
    u[i] = -r[i - 1]
    return DTerm(tuple(u), r)


def pair_term(r, i: int, j: int) -> DTerm:
    """t^r (r_j d_i - r_i d_j) for any pair i < j; these span the full
    divergence-zero component {u : (u|r) = 0} at each degree r != 0."""
    r = _as_deg(r)
    d = len(r)
    if not (1 <= i <= d and 1 <= j <= d and i != j):
        raise IndexError("pair indices out of range")
    u = [0] * d
    u[i - 1] = r[j - 1]
    u[j - 1] = -r[i - 1]
    return DTerm(tuple(u), r)


def in_Lhat(x: AlgElem) -> bool:
    """Divergence zero at every nonzero degree; degree 0 unrestricted."""
    zero = (0,) * x.d
    return all(r == zero or pairing(u, r) == 0 for r, u in x.terms.items())


def in_L(x: AlgElem) -> bool:
    """in_Lhat and no degree-zero part."""
    zero = (0,) * x.d
    return in_Lhat(x) and zero not in x.terms


def lemma_orthg(m, n, u) -> tuple:
    """Given n != 0 and (u|n) = 0, produce u' with (u'|m) = 0 and
    (u' - x u | m - x n) = 0 for every scalar x.

    Writes u = sum_{i != j} a_i (n_i e_j - n_j e_i) over the smallest j with
    n_j != 0 and transplants the coefficients onto m.
    """
    m = _as_deg(m)
    n = _as_deg(n)
    u = tuple(u)
    d = len(n)
    if len(m) != d or len(u) != d:
        raise ValueError("dimension mismatch")
    if not any(n):
        raise ValueError("n must be nonzero")
    if pairing(u, n) != 0:
        raise ValueError("u must be orthogonal to n")
    j = next(k for k in range(d) if n[k])
    out = [Fraction(0)] * d
    for i in range(d):
        if i == j:
            continue
        a = -Fraction(u[i], n[j])
        if not a:
            continue
        # a_i * (m_i e_j - m_j e_i)
        out[j] += a * m[i]
        out[i] -= a * m[j]
    return tuple(out)


def jacobi_residual(x: AlgElem, y: AlgElem, z: AlgElem) -> AlgElem:
    """[x,[y,z]] + [y,[z,x]] + [z,[x,y]]; zero iff the Jacobi identity holds."""
    return (
        bracket_witt(x, bracket_witt(y, z))
        + bracket_witt(y, bracket_witt(z, x))
        + bracket_witt(z, bracket_witt(x, y))
    )
