"""Derivations of the quantum torus and their graded tensor modules.

Elements of the derivation algebra split into inner terms c * ad t^m at
degrees outside the radical and outer terms D(u, r) at radical degrees.
The brackets are

    [ad t^m, ad t^n]   = ad [t^m, t^n]
    [D(u,r), ad t^s]   = (u|s) sigma(r,s) ad t^{r+s}
    [D(u,r), D(v,s)]   = sigma(r,s) ((u|s) D(v, r+s) - (v|r) D(u, r+s))

The outer-outer sign here is the one under which the module action below is
a representation (the classically compatible one); see
:func:`outer_bracket_sign_oracle`, which verifies that choice and rejects
the opposite sign.

The module on C_q tensor V acts by

    (c ad t^m) . (t^n x v) = c [t^m, t^n] x v
    D(u, r) . (t^n x v)    = sigma(r, n) t^{r+n} x ((u | n + alpha) + r u^T) v

and for block-normal q the congruence classes of degrees modulo the radical
decompose the module; class 0 is annihilated by all inner terms and the
remaining classes sum to the irreducible complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .closure import (
    Box,
    ClosureResult,
    Generator,
    Label,
    SpanState,
    extract_fibers,
    linear_generator,
    saturate,
)
from .modules import GradedVec, ModuleParams
from .reps import RepHandle, RepVec, act_matrix
from .scalars import Cyc
from .qtorus import QMatrix, block_structure, in_rad, sigma, sigma_exponent
from .witt import AlgElem, DegVec, pair_term, pairing

#: Global sign of the outer-outer bracket; +1 is the convention validated by
#: the representation oracle (and the only one degenerating to the classical
#: bracket at l = (1, ..., 1)).
OUTER_SIGN = 1


class QDerElem:
    """Finite sum of inner terms (degree outside Rad_q) and outer terms
    (degree inside Rad_q)."""

    __slots__ = ("d", "inner", "outer")

    def __init__(self, d: int, inner: dict | None = None, outer: dict | None = None):
        self.d = d
        self.inner: dict[DegVec, Cyc] = {}
        for m, c in (inner or {}).items():
            c = c if isinstance(c, Cyc) else Cyc.from_rat(c)
            if not c.is_zero():
                self.inner[tuple(int(x) for x in m)] = c
        self.outer: dict[DegVec, tuple] = {}
        for r, u in (outer or {}).items():
            if any(u):
                self.outer[tuple(int(x) for x in r)] = tuple(u)

    @staticmethod
    def ad(m, coeff=1) -> "QDerElem":
        return QDerElem(len(m), inner={tuple(m): coeff})

    @staticmethod
    def douter(u, r) -> "QDerElem":
        return QDerElem(len(r), outer={tuple(r): tuple(u)})

    @staticmethod
    def zero(d: int) -> "QDerElem":
        return QDerElem(d)

    def validate(self, q: QMatrix) -> None:
        for m in self.inner:
            if in_rad(q, m):
                raise ValueError(f"inner degree {m} lies in the radical")
        for r in self.outer:
            if not in_rad(q, r):
                raise ValueError(f"outer degree {r} lies outside the radical")

    def is_zero(self) -> bool:
        return not self.inner and not self.outer

    def __add__(self, other: "QDerElem") -> "QDerElem":
        if other.d != self.d:
            raise ValueError("dimension mismatch")
        inner = dict(self.inner)
        for m, c in other.inner.items():
            inner[m] = inner.get(m, Cyc.from_rat(0)) + c
        outer = dict(self.outer)
        for r, u in other.outer.items():
            if r in outer:
                outer[r] = tuple(a + b for a, b in zip(outer[r], u))
            else:
                outer[r] = u
        return QDerElem(self.d, inner, outer)

    def __neg__(self) -> "QDerElem":
        return QDerElem(
            self.d,
            {m: -c for m, c in self.inner.items()},
            {r: tuple(-x for x in u) for r, u in self.outer.items()},
        )

    def __sub__(self, other: "QDerElem") -> "QDerElem":
        return self + (-other)

    def scale(self, c) -> "QDerElem":
        return QDerElem(
            self.d,
            {m: x * c for m, x in self.inner.items()},
            {r: tuple(c * x for x in u) for r, u in self.outer.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, QDerElem):
            return NotImplemented
        return self.d == other.d and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        bits = [f"{c!r}*ad t^{list(m)}" for m, c in sorted(self.inner.items())]
        bits += [f"D({list(u)}, {list(r)})" for r, u in sorted(self.outer.items())]
        return " + ".join(bits) if bits else "QDerElem(0)"


def bracket_qder(q: QMatrix, x: QDerElem, y: QDerElem, outer_sign: int = OUTER_SIGN) -> QDerElem:
    """Bilinear extension of the three bracket cases."""
    if x.d != y.d or x.d != q.d:
        raise ValueError("dimension mismatch")
    x.validate(q)
    y.validate(q)
    out = QDerElem.zero(q.d)

    def add_inner(m: DegVec, c) -> None:
        nonlocal out
        if isinstance(c, Cyc) and c.is_zero():
            return
        if not c:
            return
        if in_rad(q, m):
            raise ValueError(
                f"bracket produced an inner term at radical degree {m}; "
                "no such basis element exists in the derivation algebra"
            )
        out = out + QDerElem.ad(m, c)

    # inner-inner: ad of the monomial commutator
    for m, cm in x.inner.items():
        for n, cn in y.inner.items():
            e1 = sigma_exponent(q, m, n)
            e2 = sigma_exponent(q, n, m)
            if e1 == e2:
                continue
            c = (Cyc.zeta(q.N, e1) - Cyc.zeta(q.N, e2)) * (cm * cn)
            add_inner(tuple(a + b for a, b in zip(m, n)), c)

    # outer-inner and inner-outer
    for r, u in x.outer.items():
        for s, cs in y.inner.items():
            coeff = pairing(u, s)
            if coeff:
                c = cs * coeff
                e = sigma_exponent(q, r, s)
                if e:
                    c = c * Cyc.zeta(q.N, e)
                add_inner(tuple(a + b for a, b in zip(r, s)), c)
    for s, cs in x.inner.items():
        for r, u in y.outer.items():
            coeff = pairing(u, s)
            if coeff:
                c = cs * coeff
                e = sigma_exponent(q, r, s)
                if e:
                    c = c * Cyc.zeta(q.N, e)
                add_inner(tuple(a + b for a, b in zip(r, s)), -c)

    # outer-outer
    for r, u in x.outer.items():
        for s, v in y.outer.items():
            a = pairing(u, s)
            b = pairing(v, r)
            if not a and not b:
                continue
            e = sigma_exponent(q, r, s)
            target = tuple(ri + si for ri, si in zip(r, s))
            w = tuple(outer_sign * (a * vi - b * ui) for ui, vi in zip(u, v))
            if e:
                z = Cyc.zeta(q.N, e)
                w = tuple(z * x_ for x_ in w)
            if any(w):
                out = out + QDerElem.douter(w, target)
    return out


# ---------------------------------------------------------------------------
# the graded module
# ---------------------------------------------------------------------------


class QGradedVec:
    """Finitely supported element of the quantum-torus tensor module."""

    __slots__ = ("q", "alpha", "rep", "fibers")

    def __init__(self, q: QMatrix, alpha, rep: RepHandle, fibers: dict | None = None):
        self.q = q
        self.alpha = tuple(Fraction(a) for a in alpha)
        self.rep = rep
        if len(self.alpha) != q.d or rep.d != q.d:
            raise ValueError("dimension mismatch")
        clean: dict[DegVec, tuple] = {}
        for n, coords in (fibers or {}).items():
            coords = tuple(coords)
            if len(coords) != rep.dim or len(n) != q.d:
                raise ValueError("fiber shape mismatch")
            if any(coords):
                clean[tuple(int(x) for x in n)] = coords
        self.fibers = clean

    def is_zero(self) -> bool:
        return not self.fibers

    def __add__(self, other: "QGradedVec") -> "QGradedVec":
        out = dict(self.fibers)
        for n, c in other.fibers.items():
            if n in out:
                out[n] = tuple(a + b for a, b in zip(out[n], c))
            else:
                out[n] = c
        return QGradedVec(self.q, self.alpha, self.rep, out)

    def __neg__(self) -> "QGradedVec":
        return QGradedVec(self.q, self.alpha, self.rep,
                          {n: tuple(-x for x in c) for n, c in self.fibers.items()})

    def __sub__(self, other: "QGradedVec") -> "QGradedVec":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, QGradedVec):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        bits = [f"{list(c)} @ t^{list(n)}" for n, c in sorted(self.fibers.items())]
        return "QGradedVec(" + (" + ".join(bits) if bits else "0") + ")"


def qgraded(q: QMatrix, alpha, rep: RepHandle, n, coords) -> QGradedVec:
    return QGradedVec(q, alpha, rep, {tuple(int(x) for x in n): tuple(coords)})


def act_q(q: QMatrix, alpha, rep: RepHandle, x: QDerElem, v: QGradedVec) -> QGradedVec:
    """The module action, extended bilinearly over terms and fibers."""
    x.validate(q)
    alpha = tuple(Fraction(a) for a in alpha)
    out: dict[DegVec, list] = {}

    def accumulate(n: DegVec, coords) -> None:
        acc = out.get(n)
        if acc is None:
            out[n] = list(coords)
        else:
            for b, x_ in enumerate(coords):
                acc[b] = acc[b] + x_

    for m, cm in x.inner.items():
        for n, coords in v.fibers.items():
            e1 = sigma_exponent(q, m, n)
            e2 = sigma_exponent(q, n, m)
            if e1 == e2:
                continue
            c = (Cyc.zeta(q.N, e1) - Cyc.zeta(q.N, e2)) * cm
            target = tuple(a + b for a, b in zip(m, n))
            accumulate(target, tuple(c * x_ for x_ in coords))

    for r, u in x.outer.items():
        mat = [[ri * uj for uj in u] for ri in r]
        for n, coords in v.fibers.items():
            s = sum(ua * (na + aa) for ua, na, aa in zip(u, n, alpha))
            w = act_matrix(rep, mat, RepVec(rep, coords)).coords
            img = tuple(s * c + wb for c, wb in zip(coords, w))
            e = sigma_exponent(q, r, n)
            if e:
                z = Cyc.zeta(q.N, e)
                img = tuple(z * x_ for x_ in img)
            accumulate(tuple(a + b for a, b in zip(r, n)), img)

    return QGradedVec(q, v.alpha, rep, {n: tuple(c) for n, c in out.items()})


def module_axiom_residual_q(q: QMatrix, alpha, rep: RepHandle, x: QDerElem,
                            y: QDerElem, v: QGradedVec,
                            outer_sign: int = OUTER_SIGN) -> QGradedVec:
    """act([x,y], v) - act(x, act(y, v)) + act(y, act(x, v)); must vanish."""
    lhs = act_q(q, alpha, rep, bracket_qder(q, x, y, outer_sign), v)
    rhs = act_q(q, alpha, rep, x, act_q(q, alpha, rep, y, v)) - \
        act_q(q, alpha, rep, y, act_q(q, alpha, rep, x, v))
    return lhs - rhs


def outer_bracket_sign_oracle(q: QMatrix, alpha, rep: RepHandle, samples) -> int:
    """Select the outer-outer bracket sign by requiring the representation
    property on the supplied (x, y, v) samples; returns +1 or -1.

    Raises if neither or both signs pass (which would signal a broken setup).
    """
    verdict = {}
    for sign in (1, -1):
        ok = True
        for x, y, v in samples:
            if not module_axiom_residual_q(q, alpha, rep, x, y, v, sign).is_zero():
                ok = False
                break
        verdict[sign] = ok
    if verdict[1] == verdict[-1]:
        raise ValueError(f"sign oracle is inconclusive: {verdict}")
    return 1 if verdict[1] else -1


def in_Lq(q: QMatrix, x: QDerElem) -> bool:
    """Inner terms free; outer terms divergence-zero with no degree-0 part."""
    x.validate(q)
    zero = (0,) * q.d
    for r, u in x.outer.items():
        if r == zero:
            return False
        if pairing(u, r) != 0:
            return False
    return True


def in_Lqhat(q: QMatrix, x: QDerElem) -> bool:
    """Like in_Lq but the degree-0 outer part is unrestricted."""
    x.validate(q)
    zero = (0,) * q.d
    for r, u in x.outer.items():
        if r != zero and pairing(u, r) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# congruence classes and the block-normal isomorphisms
# ---------------------------------------------------------------------------


def _require_block(q: QMatrix) -> tuple[int, ...]:
    l = block_structure(q)
    if l is None:
        raise ValueError("this operation requires a block-normal commutation matrix")
    return l


def class_of(l: tuple[int, ...], n) -> DegVec:
    """The congruence class of a degree modulo the radical lattice diag(l)."""
    return tuple(x % li for x, li in zip(n, l))


def congruence_classes(l: tuple[int, ...]) -> list[DegVec]:
    """All classes i with 0 <= i_j < l_j, sorted."""
    out = [()]
    for li in l:
        out = [c + (x,) for c in out for x in range(li)]
    return sorted(out)


def decompose_classes(q: QMatrix, v: QGradedVec) -> dict[DegVec, QGradedVec]:
    """Split fibers by degree class modulo the radical; parts re-sum to v."""
    l = _require_block(q)
    parts: dict[DegVec, dict] = {}
    for n, coords in v.fibers.items():
        parts.setdefault(class_of(l, n), {})[n] = coords
    return {i: QGradedVec(q, v.alpha, v.rep, fib) for i, fib in sorted(parts.items())}


def g_q_component(q: QMatrix, v: QGradedVec) -> QGradedVec:
    """The part of v supported on nonzero congruence classes."""
    l = _require_block(q)
    zero = (0,) * q.d
    fib = {n: c for n, c in v.fibers.items() if class_of(l, n) != zero}
    return QGradedVec(q, v.alpha, v.rep, fib)


def iso_algebra(q: QMatrix, x: QDerElem) -> AlgElem:
    """The radical-degree part of the skew derivation algebra mapped onto the
    classical algebra: D(u, n) -> D(L u, L^{-1} n) componentwise."""
    if x.inner:
        raise ValueError("iso_algebra is defined on outer terms only")
    l = _require_block(q)
    x.validate(q)
    out = AlgElem.zero(q.d)
    for n, u in x.outer.items():
        if any(ni % li for ni, li in zip(n, l)):
            raise ValueError(f"degree {n} is not in the radical lattice")
        nu = tuple(li * ui for li, ui in zip(l, u))
        nn = tuple(ni // li for ni, li in zip(n, l))
        out = out + AlgElem.term(nu, nn)
    return out


def iso_params(q: QMatrix, alpha, rep: RepHandle, i) -> ModuleParams:
    """Parameters of the classical target module for class i: twisted rep and
    alpha_i = ((alpha_j + i_j) / l_j)_j."""
    l = _require_block(q)
    alpha = tuple(Fraction(a) for a in alpha)
    alpha_i = tuple((a + ii) / li for a, ii, li in zip(alpha, i, l))
    return ModuleParams(q.d, alpha_i, RepHandle.twisted(rep, l))


def iso_module(q: QMatrix, alpha, rep: RepHandle, i, v: QGradedVec) -> GradedVec:
    """Class-i fibers mapped onto the classical module: degree n + i with
    n in the radical goes to degree L^{-1} n, identical coordinates."""
    l = _require_block(q)
    i = tuple(int(x) for x in i)
    params = iso_params(q, alpha, rep, i)
    fibers = {}
    for n, coords in v.fibers.items():
        if class_of(l, n) != class_of(l, i):
            raise ValueError(f"fiber at {n} is not in congruence class {i}")
        base = tuple((ni - ii) // li for ni, ii, li in zip(n, i, l))
        fibers[base] = coords
    return GradedVec(params, fibers)


def equivariance_residual(q: QMatrix, alpha, rep: RepHandle, i, x: QDerElem,
                          v: QGradedVec) -> GradedVec:
    """iso(x . v) - iso(x) . iso(v); zero iff the isomorphisms intertwine."""
    from .modules import act

    lhs = iso_module(q, alpha, rep, i, act_q(q, alpha, rep, x, v))
    rhs = act(iso_params(q, alpha, rep, i), iso_algebra(q, x),
              iso_module(q, alpha, rep, i, v))
    return lhs - rhs


def ad_annihilation_check(q: QMatrix, alpha, rep: RepHandle, radius: int = 2) -> bool:
    """All inner derivations kill every class-0 fiber: sigma(m, n) = sigma(n, m)
    whenever n is in the radical, checked exactly over a degree box."""
    _require_block(q)
    box = Box.radius(q.d, radius)
    rad_degrees = [n for n in box.degrees() if in_rad(q, n)]
    for m in box.degrees():
        if in_rad(q, m):
            continue
        for n in rad_degrees:
            if sigma_exponent(q, m, n) != sigma_exponent(q, n, m):
                return False
        # spot check through the module action itself
        w = qgraded(q, alpha, rep, rad_degrees[0], (1,) * rep.dim)
        if not act_q(q, alpha, rep, QDerElem.ad(m), w).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# q-side closure
# ---------------------------------------------------------------------------

Q_ALGEBRAS = ("Lq", "Lqhat")


def qder_generators(q: QMatrix, alpha, rep: RepHandle, gen_radius: int,
                    algebra: str) -> list[Generator]:
    """Inner generators ad t^m off the radical plus divergence-zero outer
    generators at radical degrees (with the degree derivations for Lqhat)."""
    if algebra not in Q_ALGEBRAS:
        raise ValueError(f"algebra must be one of {Q_ALGEBRAS}")
    d = q.d
    alpha = tuple(Fraction(a) for a in alpha)
    gens: list[Generator] = []
    zero = (0,) * d
    if algebra == "Lqhat":
        for i in range(d):
            u = tuple(1 if t == i else 0 for t in range(d))
            gens.append(linear_generator(rep, alpha, u, zero, name=f"del_{i + 1}"))

    def inner_gen(m: DegVec) -> Generator:
        def block_apply(n, w):
            e1 = sigma_exponent(q, m, n)
            e2 = sigma_exponent(q, n, m)
            if e1 == e2:
                return None
            c = Cyc.zeta(q.N, e1) - Cyc.zeta(q.N, e2)
            return [c * x for x in w]
        return Generator(m, block_apply, name=f"ad t^{m}")

    for m in sorted(Box.radius(d, gen_radius).degrees()):
        if m == zero:
            continue
        if in_rad(q, m):
            for i in range(1, d + 1):
                for j in range(i + 1, d + 1):
                    term = pair_term(m, i, j)
                    if term.is_zero():
                        continue
                    gens.append(linear_generator(
                        rep, alpha, term.u, m,
                        sigma_factor=lambda n, r=m: sigma(q, r, n),
                        name=f"d({m},{i},{j})"))
        else:
            gens.append(inner_gen(m))
    return gens


def classify_q(result: ClosureResult, q: QMatrix, rep: RepHandle) -> Label:
    """Label the saturated q-closure: Full, the irreducible off-radical
    complement (GqFull), confinement to class 0 (Class0), or Other."""
    if not result.saturated:
        raise ValueError("cannot classify an unsaturated closure")
    dim = rep.dim
    dims_rad = {n: b.rank for n, b in result.fiber_bases.items() if in_rad(q, n)}
    dims_off = {n: b.rank for n, b in result.fiber_bases.items() if not in_rad(q, n)}
    if all(r == dim for r in dims_rad.values()) and all(r == dim for r in dims_off.values()):
        return Label("Full")
    if all(r == 0 for r in dims_rad.values()) and all(r == dim for r in dims_off.values()):
        return Label("GqFull")
    l = block_structure(q)
    if l is not None:
        zero = (0,) * q.d
        if all(b.rank == 0 for n, b in result.fiber_bases.items()
               if class_of(l, n) != zero) and any(r for r in dims_rad.values()):
            return Label("Class0")
    return Label("Other")


def closure_q(q: QMatrix, alpha, rep: RepHandle, seeds: list[QGradedVec],
              gen_radius: int, working: Box, target: Box, max_iters: int,
              algebra: str) -> ClosureResult:
    """Saturate seeds under the chosen q-algebra inside the working box."""
    if not seeds:
        raise ValueError("need at least one seed")
    if working.d != q.d or target.d != q.d:
        raise ValueError("box dimension mismatch")
    if not working.contains_box(target):
        raise ValueError("target box must lie inside the working box")
    state = SpanState(working, rep.dim)
    rows = []
    for s in seeds:
        if s.is_zero():
            raise ValueError("zero seed")
        row = {}
        for n, coords in s.fibers.items():
            if not working.contains(n):
                raise ValueError(f"seed degree {n} outside the working box")
            for b, x in enumerate(coords):
                if x:
                    row[state.key(n, b)] = x
        rows.append(row)
    gens = qder_generators(q, alpha, rep, gen_radius, algebra)
    iterations, saturated = saturate(state, rows, gens, max_iters)
    bases = extract_fibers(state, target)
    result = ClosureResult(
        target_box=target,
        fiber_bases=bases,
        fiber_dims={n: b.rank for n, b in bases.items()},
        label=None,
        iterations=iterations,
        saturated=saturated,
    )
    if saturated:
        result.label = classify_q(result, q, rep)
    return result
