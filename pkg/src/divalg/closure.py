"""Box-truncated submodule-closure engine.

Saturates a list of seed vectors under a family of homogeneous generators,
tracking the exact linear span of everything reached.  A generator maps the
fiber at degree n to a fiber at degree n + shift and is applied only when
both endpoints lie inside the working box, so the computed space is always a
subspace of the true submodule's restriction to the box.

Internally the span lives in one flat coordinate space (degree block by
degree block) as a sparse integer echelon basis: every inserted vector is
reduced against existing pivot rows and, when it survives, rescaled to a
primitive integer (or monic cyclotomic) row.  Rescaling is harmless because
only the span is tracked.  Seeds supported on several degrees are allowed;
rows stay graded automatically whenever the seeds are graded.

The per-degree report at the end is canonical (RREF fiber bases), so results
do not depend on generator scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .linalg import SpanBasis, basis_of, same_span
from .modules import GradedVec, ModuleParams, _wedge_power, w_fiber_basis
from .reps import RepVec, act_matrix
from .scalars import Cyc
from .witt import DegVec, pair_term


@dataclass(frozen=True)
class Box:
    """A product of integer intervals [lo_i, hi_i] in Z^d."""

    lo: DegVec
    hi: DegVec

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise ValueError("box corner dimension mismatch")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("empty box")

    @staticmethod
    def radius(d: int, r: int) -> "Box":
        return Box((-r,) * d, (r,) * d)

    @staticmethod
    def around(center, r: int) -> "Box":
        return Box(tuple(c - r for c in center), tuple(c + r for c in center))

    @property
    def d(self) -> int:
        return len(self.lo)

    def contains(self, n) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, n, self.hi))

    def contains_box(self, other: "Box") -> bool:
        return self.contains(other.lo) and self.contains(other.hi)

    def degrees(self):
        return product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))


@dataclass(frozen=True)
class Label:
    """Classification of a saturated closure against the known submodules."""

    kind: str  # Full | W | WPrime | Other
    vprime_dim: int | None = None

    def __str__(self):
        if self.kind == "WPrime":
            return f"WPrime({self.vprime_dim})"
        return self.kind


@dataclass
class ClosureResult:
    target_box: Box
    fiber_bases: dict[DegVec, SpanBasis]
    fiber_dims: dict[DegVec, int]
    label: Label | None
    iterations: int
    saturated: bool


# ---------------------------------------------------------------------------
# sparse echelon state over flattened (degree, coordinate) keys
# ---------------------------------------------------------------------------


def _exact_div(a, b):
    """a / b staying in exact scalars (never a float)."""
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def _normalize_row(v: dict) -> dict | None:
    """Canonical primitive representative of the ray through ``v``."""
    v = {k: x for k, x in v.items() if x}
    if not v:
        return None
    vals = list(v.values())
    if any(isinstance(x, Cyc) for x in vals):
        lead = v[min(v)]
        inv = _exact_div(1, lead)
        w = {}
        rationalizable = True
        for k, x in v.items():
            y = inv * x if isinstance(x, Cyc) or isinstance(inv, Cyc) else x * inv
            if isinstance(y, Cyc) and y.is_rational():
                y = y.rat()
            if isinstance(y, Cyc):
                rationalizable = False
            w[k] = y
        v = {k: x for k, x in w.items() if x}
        if not rationalizable:
            return v
        vals = list(v.values())
    if any(isinstance(x, Fraction) for x in vals):
        mult = lcm(*(x.denominator for x in vals if isinstance(x, Fraction)))
        v = {k: int(x * mult) for k, x in v.items()}
        vals = list(v.values())
    g = gcd(*vals)
    if v[min(v)] < 0:
        g = -g
    if g != 1:
        v = {k: x // g for k, x in v.items()}
    return v


class SpanState:
    """Echelon basis over flat keys deg_index * dim + coordinate."""

    def __init__(self, box: Box, dim: int):
        self.box = box
        self.dim = dim
        self.deg_list = sorted(box.degrees())
        self.deg_index = {n: i for i, n in enumerate(self.deg_list)}
        self.rows: dict[int, dict] = {}

    def key(self, n: DegVec, b: int) -> int:
        return self.deg_index[n] * self.dim + b

    def row_fibers(self, row: dict) -> dict[DegVec, list]:
        """Unflatten a row into degree -> dense coordinate list."""
        out: dict[DegVec, list] = {}
        for k, x in row.items():
            n = self.deg_list[k // self.dim]
            coords = out.get(n)
            if coords is None:
                coords = [0] * self.dim
                out[n] = coords
            coords[k % self.dim] = x
        return out

    def insert(self, v: dict) -> dict | None:
        """Reduce ``v`` against the basis; store and return it if independent."""
        v = {k: x for k, x in v.items() if x}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                v = _normalize_row(v)
                self.rows[p] = v
                return v
            a, b = v[p], row[p]
            if isinstance(a, int) and isinstance(b, int):
                g = gcd(a, b)
                ca, cb = b // g, a // g
                merged = {}
                for k in v.keys() | row.keys():
                    x = ca * v.get(k, 0) - cb * row.get(k, 0)
                    if x:
                        merged[k] = x
                v = merged
            else:
                t = _exact_div(a, b)
                merged = {}
                for k in v.keys() | row.keys():
                    x = v.get(k, 0) - t * row.get(k, 0)
                    if x:
                        merged[k] = x
                v = merged
        return None

    def rank(self) -> int:
        return len(self.rows)


class Generator:
    """A homogeneous operator: fiber at n maps into the fiber at n + shift.

    ``block_apply(n, coords)`` returns the image coordinates (any nonzero
    scalar multiple is acceptable, spans being all that is tracked), or None
    when the image vanishes identically.
    """

    __slots__ = ("shift", "block_apply", "name")

    def __init__(self, shift: DegVec, block_apply, name: str = ""):
        self.shift = shift
        self.block_apply = block_apply
        self.name = name


def linear_generator(rep, alpha, u, r, sigma_factor=None, name: str = "") -> Generator:
    """Generator acting like D(u, r): scalar (u | n + alpha) plus the rank-one
    matrix r u^T through the representation, optionally times a degree-dependent
    nonzero cocycle factor (ignored for span purposes)."""
    d = len(r)
    u = tuple(u)
    mat = [[ri * uj for uj in u] for ri in r]
    cols = [act_matrix(rep, mat, RepVec(rep, tuple(1 if t == b else 0 for t in range(rep.dim)))).coords
            for b in range(rep.dim)]
    # mat_rows[i][j] = coefficient of basis i in the image of basis j
    mat_rows = [tuple(cols[j][i] for j in range(rep.dim)) for i in range(rep.dim)]
    all_int = all(isinstance(x, int) for row in mat_rows for x in row)
    ualpha = sum(Fraction(ua) * aa for ua, aa in zip(u, alpha))
    p_num, q_den = ualpha.numerator, ualpha.denominator

    if all_int:
        def block_apply(n, w):
            sq = sum(ua * na for ua, na in zip(u, n)) * q_den + p_num
            out = []
            for i in range(len(w)):
                acc = sq * w[i]
                row = mat_rows[i]
                for j in range(len(w)):
                    m = row[j]
                    if m:
                        acc = acc + q_den * m * w[j]
                out.append(acc)
            return out if any(out) else None
    else:
        def block_apply(n, w):
            s = sum(ua * na for ua, na in zip(u, n)) + ualpha
            out = []
            for i in range(len(w)):
                acc = s * w[i]
                row = mat_rows[i]
                for j in range(len(w)):
                    m = row[j]
                    if m:
                        acc = acc + m * w[j]
                out.append(acc)
            return out if any(out) else None

    if sigma_factor is None:
        return Generator(tuple(r), block_apply, name)

    base_apply = block_apply

    def twisted_apply(n, w):
        out = base_apply(n, w)
        if out is None:
            return None
        c = sigma_factor(n)
        if c == 1:
            return out
        return [c * x for x in out]

    return Generator(tuple(r), twisted_apply, name)


def saturate(state: SpanState, seeds: list[dict], generators: list[Generator],
             max_rounds: int) -> tuple[int, bool]:
    """Worklist saturation; returns (rounds executed, reached fixed point).

    Every vector newly added to the basis is queued, and each queued vector
    is hit with every applicable generator exactly once; linearity makes
    this equivalent to sweeping whole fibers.
    """
    dim = state.dim
    shift_tables = []
    for gen in generators:
        table = []
        for n in state.deg_list:
            m = tuple(a + s for a, s in zip(n, gen.shift))
            table.append(state.deg_index.get(m, -1))
        shift_tables.append(table)

    frontier = []
    for v in seeds:
        added = state.insert(v)
        if added is not None:
            frontier.append(added)

    rounds = 0
    while frontier and rounds < max_rounds:
        rounds += 1
        next_frontier = []
        for row in frontier:
            fibers = state.row_fibers(row)
            src_idx = [state.deg_index[n] for n in fibers]
            for gen, table in zip(generators, shift_tables):
                if any(table[i] < 0 for i in src_idx):
                    continue
                image: dict[int, object] = {}
                for n, coords in fibers.items():
                    out = gen.block_apply(n, coords)
                    if out is None:
                        continue
                    base = table[state.deg_index[n]] * dim
                    for b, x in enumerate(out):
                        if x:
                            image[base + b] = x
                if image:
                    added = state.insert(image)
                    if added is not None:
                        next_frontier.append(added)
        frontier = next_frontier
    return rounds, not frontier


# ---------------------------------------------------------------------------
# fiber extraction and classification
# ---------------------------------------------------------------------------


def _constrained_fiber(state: SpanState, n: DegVec) -> list[tuple]:
    """Vectors of the span supported only at degree n, found by running
    elimination with the degree-n coordinates ordered last."""
    lo = state.deg_index[n] * state.dim
    hi = lo + state.dim

    def order(k: int):
        inside = lo <= k < hi
        return (1 if inside else 0, k)

    rows = [dict(r) for r in state.rows.values()]
    echelon: dict[tuple, dict] = {}
    out = []
    for v in rows:
        while v:
            p = min(v, key=order)
            row = echelon.get(order(p))
            if row is None:
                break
            t = _exact_div(v[p], row[p])
            v = {k: x for k, x in ((k, v.get(k, 0) - t * row.get(k, 0))
                                   for k in v.keys() | row.keys()) if x}
        if not v:
            continue
        p = min(v, key=order)
        echelon[order(p)] = v
        if lo <= p < hi:
            coords = [0] * state.dim
            for k, x in v.items():
                assert lo <= k < hi, "echelon row leaks outside its block"
                coords[k - lo] = x
            out.append(tuple(coords))
    return out


def extract_fibers(state: SpanState, target: Box) -> dict[DegVec, SpanBasis]:
    """Canonical per-degree bases of the computed span, over the target box."""
    graded: dict[DegVec, list] = {}
    mixed = []
    for row in state.rows.values():
        fibers = state.row_fibers(row)
        if len(fibers) == 1:
            (n, coords), = fibers.items()
            graded.setdefault(n, []).append(tuple(coords))
        else:
            mixed.append(row)
    out: dict[DegVec, SpanBasis] = {}
    mixed_degrees = set()
    for row in mixed:
        mixed_degrees.update(state.row_fibers(row))
    for n in target.degrees():
        if n in mixed_degrees:
            vectors = _constrained_fiber(state, n)
        else:
            vectors = graded.get(n, [])
        out[n] = basis_of(vectors, state.dim)
    return out


def classify(result: ClosureResult, params: ModuleParams) -> Label:
    """Compare saturated fiber bases against the known submodule shapes."""
    if not result.saturated:
        raise ValueError("cannot classify an unsaturated closure")
    dim = params.rep.dim
    if all(b.rank == dim for b in result.fiber_bases.values()):
        return Label("Full")
    k = _wedge_power(params.rep)
    if k is None:
        return Label("Other")
    w_bases = {n: w_fiber_basis(params.d, k, params.alpha, n)
               for n in result.fiber_bases}
    if all(same_span(result.fiber_bases[n], w_bases[n]) for n in w_bases):
        return Label("W")
    if params.alpha_integral():
        neg_alpha = tuple(-int(a) for a in params.alpha)
        if result.target_box.contains(neg_alpha):
            others_ok = all(
                same_span(result.fiber_bases[n], w_bases[n])
                for n in w_bases if n != neg_alpha
            )
            extra = result.fiber_bases[neg_alpha].rank
            if others_ok and extra > 0:
                return Label("WPrime", extra)
    return Label("Other")


# ---------------------------------------------------------------------------
# classical closure driver
# ---------------------------------------------------------------------------

ALGEBRAS = ("W", "Lhat", "L")


def classical_generators(params: ModuleParams, gen_radius: int, algebra: str) -> list[Generator]:
    """Homogeneous generating family of the chosen algebra up to the radius.

    L: the divergence-zero pair elements t^r (r_j d_i - r_i d_j) for every
    pair i < j and every nonzero degree in the radius box (these span the
    whole degree-r component).  Lhat additionally has the degree derivations.
    W: D(e_j, r) for every j and every degree (u is free by linearity).
    """
    if algebra not in ALGEBRAS:
        raise ValueError(f"algebra must be one of {ALGEBRAS}")
    d = params.d
    gens: list[Generator] = []
    zero = (0,) * d
    if algebra == "Lhat":
        for i in range(d):
            u = tuple(1 if t == i else 0 for t in range(d))
            gens.append(linear_generator(params.rep, params.alpha, u, zero,
                                         name=f"del_{i + 1}"))
    for r in sorted(Box.radius(d, gen_radius).degrees()):
        if algebra == "W":
            for j in range(d):
                u = tuple(1 if t == j else 0 for t in range(d))
                gens.append(linear_generator(params.rep, params.alpha, u, r,
                                             name=f"D(e{j + 1},{r})"))
            continue
        if r == zero:
            continue
        for i in range(1, d + 1):
            for j in range(i + 1, d + 1):
                term = pair_term(r, i, j)
                if term.is_zero():
                    continue
                gens.append(linear_generator(params.rep, params.alpha, term.u, r,
                                             name=f"d({r},{i},{j})"))
    return gens


def seeds_to_rows(state: SpanState, seeds: list[GradedVec]) -> list[dict]:
    rows = []
    for s in seeds:
        if s.is_zero():
            raise ValueError("zero seed")
        row = {}
        for n, coords in s.fibers.items():
            if not state.box.contains(n):
                raise ValueError(f"seed degree {n} outside the working box")
            for b, x in enumerate(coords):
                if x:
                    row[state.key(n, b)] = x
        rows.append(row)
    return rows


def closure(params: ModuleParams, seeds: list[GradedVec], gen_radius: int,
            working: Box, target: Box, max_iters: int, algebra: str) -> ClosureResult:
    """Saturate the seeds under the chosen algebra inside the working box and
    report canonical fiber bases over the target box."""
    if not seeds:
        raise ValueError("need at least one seed")
    if working.d != params.d or target.d != params.d:
        raise ValueError("box dimension mismatch")
    if not working.contains_box(target):
        raise ValueError("target box must lie inside the working box")
    state = SpanState(working, params.rep.dim)
    rows = seeds_to_rows(state, seeds)
    gens = classical_generators(params, gen_radius, algebra)
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
        result.label = classify(result, params)
    return result
