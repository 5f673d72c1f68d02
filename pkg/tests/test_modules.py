"""Graded module action, the wedge submodule fibers, and the rank-one split."""

from fractions import Fraction
from random import Random

import pytest

from divalg.linalg import span_contains
from divalg.modules import (
    GradedVec,
    ModuleParams,
    act,
    act_d_basis,
    graded,
    module_axiom_residual,
    trivial_split,
    w_fiber_basis,
    w_membership,
)
from divalg.reps import RepHandle
from divalg.verify import (
    act_crosscheck_suite,
    module_suite_classical,
    w_invariance_suite,
)
from divalg.witt import AlgElem


F = Fraction


def natural_params(alpha=(0, 0)):
    return ModuleParams(2, alpha, RepHandle.natural(2))


def test_act_rank_one_example():
    p = natural_params()
    v = graded(p, (0, 0), (1, 0))
    out = act(p, AlgElem.term((1, -1), (1, 1)), v)
    assert out == graded(p, (1, 1), (1, 1))  # (e1 + e2) at degree (1,1)


def test_act_cartan_weight():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.natural(2))
    v = graded(p, (3, 5), (0, 1))
    out = act(p, AlgElem.term((1, 0), (0, 0)), v)
    assert out == graded(p, (3, 5), (0, F(7, 2)))


def test_act_zero():
    p = natural_params()
    z = GradedVec(p, {})
    assert act(p, AlgElem.term((1, 0), (1, 0)), z).is_zero()


def test_act_d_basis_trivial_example():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.trivial(2))
    v = graded(p, (0, 0), (1,))
    out = act_d_basis(p, (1, 2), 1, v)
    assert out == graded(p, (1, 2), (1,))


def test_act_d_basis_zero_degree():
    p = natural_params()
    v = graded(p, (0, 0), (1, 0))
    assert act_d_basis(p, (0, 0), 1, v).is_zero()


def test_act_matches_act_d_basis():
    p = ModuleParams(3, (F(1, 3), F(1, 5), 0), RepHandle.exterior(3, 2))
    assert act_crosscheck_suite(p, 100, Random(3))["violations"] == 0


@pytest.mark.parametrize("rep,d", [
    (RepHandle.natural(2), 2),
    (RepHandle.exterior(3, 2), 3),
    (RepHandle.symmetric(2, 2), 2),
    (RepHandle.trivial(2), 2),
])
def test_module_axiom_residual_random(rep, d):
    alpha = (F(1, 2),) + (0,) * (d - 1)
    p = ModuleParams(d, alpha, rep)
    rng = Random(d)
    for algebra in ("W", "Lhat", "L"):
        assert module_suite_classical(p, algebra, 30, rng)["violations"] == 0


def test_module_axiom_x_equals_y():
    p = natural_params()
    x = AlgElem.term((1, 2), (1, 0))
    v = graded(p, (0, 0), (1, 1))
    assert module_axiom_residual(p, x, x, v).is_zero()


# -- wedge submodule fibers ----------------------------------------------------

def test_w_fiber_k1():
    b = w_fiber_basis(2, 1, (F(1, 2), 0), (0, 0))
    assert b.rank == 1
    assert span_contains(b, (F(1, 2), 0))


def test_w_fiber_vanishes_at_minus_alpha():
    assert w_fiber_basis(2, 1, (1, -2), (-1, 2)).rank == 0


def test_w_fiber_k2_d3():
    # alpha + n = e1: image is span{e1^e2, e1^e3}, dim C(2,1) = 2
    b = w_fiber_basis(3, 2, (1, 0, 0), (0, 0, 0))
    assert b.rank == 2
    assert span_contains(b, (1, 0, 0))   # e1^e2
    assert span_contains(b, (0, 1, 0))   # e1^e3
    assert not span_contains(b, (0, 0, 1))


@pytest.mark.parametrize("d,k", [(2, 1), (3, 1), (3, 2), (3, 3), (4, 2)])
def test_w_fiber_dimension_formula(d, k):
    from math import comb

    alpha = tuple(F(1, p) for p in range(2, d + 2))
    for n in ((0,) * d, (1,) + (0,) * (d - 1), (-2,) * d):
        assert w_fiber_basis(d, k, alpha, n).rank == comb(d - 1, k - 1)


def test_w_membership_examples():
    p = ModuleParams(2, (F(1, 2), 0), RepHandle.natural(2))
    assert w_membership(graded(p, (0, 0), (F(1, 2), 0)))
    assert not w_membership(graded(p, (0, 0), (0, 1)))
    assert w_membership(GradedVec(p, {}))
    sym = ModuleParams(2, (0, 0), RepHandle.symmetric(2, 2))
    with pytest.raises(ValueError):
        w_membership(graded(sym, (0, 0), (1, 0, 0)))


@pytest.mark.parametrize("d,k,alpha", [
    (2, 1, (F(1, 2), 0)),
    (3, 1, (F(1, 3), F(1, 5), 0)),
    (3, 2, (F(1, 3), F(1, 5), 0)),
    (2, 1, (1, -2)),
])
def test_w_invariance_exact(d, k, alpha):
    rep = RepHandle.natural(d) if k == 1 else RepHandle.exterior(d, k)
    p = ModuleParams(d, alpha, rep)
    out = w_invariance_suite(p, k, gen_radius=2, box_radius=1)
    assert out["violations"] == 0


# -- rank-one split --------------------------------------------------------------

def test_trivial_split_examples():
    t = RepHandle.trivial(2)
    assert trivial_split(ModuleParams(2, (F(1, 2), 0), t)).irreducible
    s = trivial_split(ModuleParams(2, (1, -2), t))
    assert not s.irreducible and s.split_at == (-1, 2)
    s0 = trivial_split(ModuleParams(2, (0, 0), t))
    assert not s0.irreducible and s0.split_at == (0, 0)
    with pytest.raises(ValueError):
        trivial_split(ModuleParams(2, (0, 0), RepHandle.natural(2)))
