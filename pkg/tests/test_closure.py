"""The saturation engine: spec'd closure runs, classification, determinism,
and the non-graded seed path."""

from fractions import Fraction

import pytest

from divalg.closure import Box, classify, closure
from divalg.linalg import same_span
from divalg.modules import GradedVec, ModuleParams, graded, w_fiber_basis
from divalg.reps import RepHandle

F = Fraction


def boxes(d, work=3, tgt=1):
    return Box.radius(d, work), Box.radius(d, tgt)


def test_box_basics():
    b = Box.radius(2, 1)
    assert b.contains((1, -1)) and not b.contains((2, 0))
    assert len(list(b.degrees())) == 9
    assert Box.radius(2, 3).contains_box(b)
    with pytest.raises(ValueError):
        Box((1, 0), (0, 0))


def test_closure_w_seed_natural():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.natural(2))
    work, tgt = boxes(2)
    res = closure(p, [graded(p, (0, 0), (F(1, 2), 0))], 2, work, tgt, 50, "L")
    assert res.saturated
    assert res.label.kind == "W"
    assert set(res.fiber_dims.values()) == {1}
    # every target fiber is exactly the wedge fiber
    for n, b in res.fiber_bases.items():
        assert same_span(b, w_fiber_basis(2, 1, p.alpha, n))


def test_closure_full_from_outside_w():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.natural(2))
    work, tgt = boxes(2)
    res = closure(p, [graded(p, (0, 0), (0, 1))], 2, work, tgt, 50, "L")
    assert res.label.kind == "Full"
    assert set(res.fiber_dims.values()) == {2}


def test_closure_symmetric_square_full():
    p = ModuleParams(2, (F(1, 2), F(1, 3)), RepHandle.symmetric(2, 2))
    work, tgt = boxes(2)
    for b in range(3):
        seed_coords = tuple(1 if t == b else 0 for t in range(3))
        res = closure(p, [graded(p, (0, 0), seed_coords)], 2, work, tgt, 50, "L")
        assert res.label.kind == "Full"
        assert set(res.fiber_dims.values()) == {3}


def test_closure_wprime_integral_alpha():
    p = ModuleParams(2, (0, 0), RepHandle.natural(2))
    work, tgt = boxes(2)
    res = closure(p, [graded(p, (0, 0), (1, 0))], 2, work, tgt, 50, "L")
    assert res.label.kind == "WPrime" and res.label.vprime_dim == 1
    assert res.fiber_bases[(0, 0)].rows == ((1, 0),)


def test_closure_wprime_offcenter_alpha():
    alpha = (1, -2)
    p = ModuleParams(2, alpha, RepHandle.natural(2))
    center = (-1, 2)
    work = Box.around(center, 3)
    tgt = Box.around(center, 1)
    res = closure(p, [graded(p, center, (1, 1))], 2, work, tgt, 50, "L")
    assert res.label.kind == "WPrime" and res.label.vprime_dim == 1
    assert res.fiber_bases[center].rows == ((1, 1),)


def test_closure_monotone_and_deterministic():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.natural(2))
    work, tgt = boxes(2)
    seed = graded(p, (0, 0), (0, 1))
    r1 = closure(p, [seed], 2, work, tgt, 50, "L")
    r2 = closure(p, [seed], 2, work, tgt, 50, "L")
    assert r1.fiber_bases == r2.fiber_bases
    assert r1.iterations == r2.iterations
    # truncated run is a subspace of the saturated one
    r3 = closure(p, [seed], 2, work, tgt, 1, "L")
    assert not r3.saturated
    for n in r3.fiber_dims:
        assert r3.fiber_dims[n] <= r1.fiber_dims[n]
    with pytest.raises(ValueError):
        classify(r3, p)


def test_closure_algebra_variants():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.natural(2))
    work, tgt = boxes(2)
    seed = graded(p, (0, 0), (F(1, 2), 0))
    for algebra in ("L", "Lhat", "W"):
        res = closure(p, [seed], 2, work, tgt, 50, algebra)
        assert res.saturated
        assert res.label.kind == "W", algebra  # W is invariant under all three


def test_closure_input_validation():
    p = ModuleParams(2, (0, 0), RepHandle.natural(2))
    work, tgt = boxes(2)
    with pytest.raises(ValueError):
        closure(p, [], 2, work, tgt, 50, "L")
    with pytest.raises(ValueError):
        closure(p, [GradedVec(p, {})], 2, work, tgt, 50, "L")
    with pytest.raises(ValueError):
        closure(p, [graded(p, (5, 5), (1, 0))], 2, work, tgt, 50, "L")
    with pytest.raises(ValueError):
        closure(p, [graded(p, (0, 0), (1, 0))], 2, tgt, work, 50, "L")  # target > working
    with pytest.raises(ValueError):
        closure(p, [graded(p, (0, 0), (1, 0))], 2, work, tgt, 50, "nope")


def test_closure_nongraded_seed_exact():
    # seed = e2 x t^0 + e1 x t^(1,0): the engine must not treat the two
    # degree components as independently available
    p = ModuleParams(2, (F(1, 2), F(1, 7)), RepHandle.natural(2))
    work, tgt = boxes(2, work=2, tgt=1)
    seed = GradedVec(p, {(0, 0): (0, 1), (1, 0): (1, 0)})
    res0 = closure(p, [seed], 1, work, tgt, 0, "L")  # no saturation rounds
    # the only span element is the seed itself: no single-degree vector exists
    assert all(rank == 0 for rank in res0.fiber_dims.values())
    # with saturation the seed generates the full module anyway
    res = closure(p, [seed], 2, work, tgt, 60, "L")
    assert res.label.kind == "Full"


def test_closure_cyclic_tensor_component_smoke():
    # dim-8 cyclic component of Lambda^2 C^3 (x) C^3; small boxes keep it fast
    t = RepHandle.tensor([RepHandle.exterior(3, 2), RepHandle.natural(3)])
    seed_coords = [0] * t.dim
    seed_coords[t._index[((1, 2), (1,))]] = 1
    c = RepHandle.cyclic(t, seed_coords)
    assert c.dim == 8
    p = ModuleParams(3, (F(1, 3), F(1, 5), 0), c)
    work = Box.radius(3, 2)
    tgt = Box.radius(3, 1)
    res = closure(p, [graded(p, (0, 0, 0), (1,) + (0,) * 7)], 1, work, tgt, 60, "L")
    assert res.saturated
    assert res.label.kind == "Full"  # highest weight w1+w2 is not fundamental
