"""Graded tensor modules over the torus vector-field algebras.

The module attached to a gl_d-representation V and a rational vector alpha
is V tensored with Laurent polynomials, graded by Z^d; the fiber at degree n
carries the action

    D(u, r) . (v x t^n) = ((u | n + alpha) v + (r u^T) v) x t^{n + r},

where r u^T is the rank-one matrix with entries r_i u_j acting through the
representation.  For exterior powers the wedge-with-(alpha + n) fibers form
the distinguished graded submodule tested by the closure engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import SpanBasis, basis_of, span_contains
from .reps import RepHandle, RepVec, act_matrix
from .witt import AlgElem, DegVec

__all__ = [
    "ModuleParams",
    "GradedVec",
    "graded",
    "act",
    "act_d_basis",
    "module_axiom_residual",
    "w_fiber_basis",
    "w_membership",
    "TrivialSplit",
    "trivial_split",
]


@dataclass(frozen=True)
class ModuleParams:
    """d, the rational twist alpha, and the coefficient representation."""

    d: int
    alpha: tuple
    rep: RepHandle

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(Fraction(a) for a in self.alpha))
        if len(self.alpha) != self.d:
            raise ValueError("alpha length must equal d")
        if self.rep.d != self.d:
            raise ValueError("representation d does not match module d")

    def alpha_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.alpha)


class GradedVec:
    """A finitely supported element: degree -> coordinate vector in V."""

    __slots__ = ("params", "fibers")

    def __init__(self, params: ModuleParams, fibers: dict | None = None):
        self.params = params
        clean: dict[DegVec, tuple] = {}
        dim = params.rep.dim
        for n, coords in (fibers or {}).items():
            coords = tuple(coords)
            if len(n) != params.d or len(coords) != dim:
                raise ValueError("fiber shape mismatch")
            if any(coords):
                clean[tuple(int(x) for x in n)] = coords
        self.fibers = clean

    def is_zero(self) -> bool:
        return not self.fibers

    def support(self) -> list[DegVec]:
        return sorted(self.fibers)

    def __add__(self, other: "GradedVec") -> "GradedVec":
        out = dict(self.fibers)
        for n, c in other.fibers.items():
            if n in out:
                out[n] = tuple(a + b for a, b in zip(out[n], c))
            else:
                out[n] = c
        return GradedVec(self.params, out)

    def __neg__(self) -> "GradedVec":
        return GradedVec(self.params, {n: tuple(-x for x in c) for n, c in self.fibers.items()})

    def __sub__(self, other: "GradedVec") -> "GradedVec":
        return self + (-other)

    def scale(self, c) -> "GradedVec":
        return GradedVec(self.params, {n: tuple(c * x for x in f) for n, f in self.fibers.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedVec):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        bits = [f"{list(c)} @ t^{list(n)}" for n, c in sorted(self.fibers.items())]
        return "GradedVec(" + (" + ".join(bits) if bits else "0") + ")"


def graded(params: ModuleParams, n, coords) -> GradedVec:
    """Single-fiber element coords x t^n."""
    return GradedVec(params, {tuple(int(x) for x in n): tuple(coords)})


def _rank_one(r: DegVec, u) -> list[list]:
    """The d x d matrix r u^T."""
    return [[ri * uj for uj in u] for ri in r]


def act(params: ModuleParams, x: AlgElem, v: GradedVec) -> GradedVec:
    """Bilinear extension of the defining action over terms and fibers."""
    if x.d != params.d:
        raise ValueError("algebra element dimension mismatch")
    rep = params.rep
    out: dict[DegVec, list] = {}
    for r, u in x.terms.items():
        mat = _rank_one(r, u)
        for n, coords in v.fibers.items():
            s = sum(ua * (na + aa) for ua, na, aa in zip(u, n, params.alpha))
            w = act_matrix(rep, mat, RepVec(rep, coords)).coords
            target = tuple(ni + ri for ni, ri in zip(n, r))
            acc = out.get(target)
            if acc is None:
                acc = [0] * rep.dim
                out[target] = acc
            for b in range(rep.dim):
                acc[b] = acc[b] + s * coords[b] + w[b]
    return GradedVec(params, {n: tuple(c) for n, c in out.items()})


def act_d_basis(params: ModuleParams, r, i: int, v: GradedVec) -> GradedVec:
    """Direct form of the action of t^r (r_{i+1} d_i - r_i d_{i+1}).

    Written out independently of :func:`act` so the two paths can be
    cross-checked on the same inputs.
    """
    d = params.d
    if not 1 <= i <= d - 1:
        raise IndexError(f"index must be in 1..{d - 1}")
    r = tuple(int(x) for x in r)
    rep = params.rep
    a, b = r[i], -r[i - 1]  # u = r_{i+1} e_i - r_i e_{i+1}
    u = [0] * d
    u[i - 1] = a
    u[i] = b
    mat = [[ri * uj for uj in u] for ri in r]
    out: dict[DegVec, tuple] = {}
    for n, coords in v.fibers.items():
        s = a * (n[i - 1] + params.alpha[i - 1]) + b * (n[i] + params.alpha[i])
        w = act_matrix(rep, mat, RepVec(rep, coords)).coords
        target = tuple(ni + ri for ni, ri in zip(n, r))
        prev = out.get(target)
        img = tuple(s * c + wb for c, wb in zip(coords, w))
        out[target] = img if prev is None else tuple(p + q for p, q in zip(prev, img))
    return GradedVec(params, out)


def module_axiom_residual(params: ModuleParams, x: AlgElem, y: AlgElem, v: GradedVec) -> GradedVec:
    """act([x,y], v) - act(x, act(y, v)) + act(y, act(x, v)); must vanish."""
    from .witt import bracket_witt

    lhs = act(params, bracket_witt(x, y), v)
    rhs = act(params, x, act(params, y, v)) - act(params, y, act(params, x, v))
    return lhs - rhs


def w_fiber_basis(d: int, k: int, alpha, n) -> SpanBasis:
    """Basis of the degree-n fiber of the wedge submodule: the image of
    y -> y ^ (alpha + n) from the (k-1)-st exterior power.

    Dimension C(d-1, k-1) when alpha + n != 0, and 0 when alpha + n = 0.
    """
    if not 1 <= k <= d:
        raise ValueError(f"k must be in 1..{d}")
    alpha = tuple(Fraction(a) for a in alpha)
    w = tuple(a + ni for a, ni in zip(alpha, n))
    labels = tuple(combinations(range(1, d + 1), k))
    index = {lab: t for t, lab in enumerate(labels)}
    dim = len(labels)
    if not any(w):
        return basis_of([], dim)
    vectors = []
    for s in combinations(range(1, d + 1), k - 1):
        coords = [Fraction(0)] * dim
        for j in range(1, d + 1):
            if j in s or not w[j - 1]:
                continue
            sign = -1 if sum(1 for x in s if x > j) % 2 else 1
            coords[index[tuple(sorted(s + (j,)))]] += sign * w[j - 1]
        vectors.append(coords)
    return basis_of(vectors, dim)


def _wedge_power(rep: RepHandle) -> int | None:
    """Which exterior power a rep is, for wedge-submodule purposes."""
    if rep.kind == "exterior":
        return rep.params["k"]
    if rep.kind == "natural":
        return 1
    if rep.kind == "trivial":
        return rep.d
    return None


def w_membership(v: GradedVec) -> bool:
    """True iff every fiber lies in its wedge-submodule fiber."""
    k = _wedge_power(v.params.rep)
    if k is None:
        raise ValueError("wedge membership is defined for exterior-power reps only")
    for n, coords in v.fibers.items():
        basis = w_fiber_basis(v.params.d, k, v.params.alpha, n)
        if not span_contains(basis, coords):
            return False
    return True


@dataclass(frozen=True)
class TrivialSplit:
    """Decomposition report for the rank-one module (k = d)."""

    irreducible: bool
    split_at: DegVec | None  # the isolated degree -alpha when alpha is integral


def trivial_split(params: ModuleParams) -> TrivialSplit:
    """Irreducible for non-integral alpha; otherwise splits into the line at
    degree -alpha plus the span of all other degrees."""
    if params.rep.kind != "trivial":
        raise ValueError("trivial_split applies to the trivial representation only")
    if params.alpha_integral():
        return TrivialSplit(False, tuple(-int(a) for a in params.alpha))
    return TrivialSplit(True, None)
