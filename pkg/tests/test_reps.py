"""Matrix-unit actions on natural, exterior, symmetric, tensor, cyclic, and
twisted representations."""

from fractions import Fraction
from random import Random

import pytest

from divalg.reps import (
    RepHandle,
    RepVec,
    act_E,
    act_matrix,
    basis_vector,
    cyclic_closure,
    highest_weight_vector,
    rep_from_config,
    weight,
)


def vec(rep, coords):
    return RepVec(rep, tuple(coords))


def identity(d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


# -- matrix-unit examples ------------------------------------------------------

def test_natural_matrix_unit():
    r = RepHandle.natural(2)
    assert act_E(r, 1, 2, basis_vector(r, 1)).coords == (1, 0)
    assert act_E(r, 1, 2, basis_vector(r, 0)).coords == (0, 0)


def test_exterior_leibniz_sign():
    r = RepHandle.exterior(3, 2)
    e12 = basis_vector(r, r._index[(1, 2)])
    # E_31 (e1^e2) = e3^e2 = -e2^e3
    assert act_E(r, 3, 1, e12).coords == (0, 0, -1)
    # E_12 (e1^e2) = e1^e1 = 0
    assert act_E(r, 1, 2, e12).is_zero()


def test_identity_scalar_on_exterior():
    r = RepHandle.exterior(3, 2)
    e12 = basis_vector(r, 0)
    assert act_matrix(r, identity(3), e12).coords == (2, 0, 0)


def test_act_matrix_zero_and_sum():
    r = RepHandle.natural(2)
    e1 = basis_vector(r, 0)
    assert act_matrix(r, [[0, 0], [0, 0]], e1).is_zero()
    b = [[0, 1], [1, 0]]  # E_12 + E_21
    assert act_matrix(r, b, e1).coords == (0, 1)


def test_symmetric_multiplicity():
    r = RepHandle.symmetric(2, 2)
    e22 = basis_vector(r, r._index[(2, 2)])
    # E_12 (e2 e2) = 2 e1 e2
    assert act_E(r, 1, 2, e22).coords == (0, 2, 0)


def test_index_bounds():
    r = RepHandle.natural(2)
    with pytest.raises(IndexError):
        act_E(r, 0, 1, basis_vector(r, 0))
    with pytest.raises(IndexError):
        act_E(r, 1, 3, basis_vector(r, 0))


# -- weights -------------------------------------------------------------------

def test_weights():
    r = RepHandle.exterior(3, 2)
    assert weight(r, r._index[(1, 3)]) == (1, 0, 1)
    n = RepHandle.natural(4)
    assert weight(n, 0) == (1, 0, 0, 0)
    t = RepHandle.trivial(3)
    assert weight(t, 0) == (0, 0, 0)
    s = RepHandle.symmetric(2, 3)
    assert weight(s, s._index[(1, 1, 2)]) == (2, 1)


def test_weight_additivity():
    # E_ij maps the weight-mu space into weight mu + e_i - e_j
    rng = Random(3)
    for rep in (RepHandle.exterior(3, 2), RepHandle.symmetric(3, 2)):
        for _ in range(20):
            b = rng.randrange(rep.dim)
            i = rng.randint(1, 3)
            j = rng.randint(1, 3)
            img = act_E(rep, i, j, basis_vector(rep, b))
            mu = weight(rep, b)
            expect = tuple(
                m + (1 if t == i - 1 else 0) - (1 if t == j - 1 else 0)
                for t, m in enumerate(mu)
            )
            for t, c in enumerate(img.coords):
                if c:
                    assert weight(rep, t) == expect


# -- highest weight vectors ----------------------------------------------------

def test_highest_weight_vectors():
    assert highest_weight_vector(RepHandle.natural(3)).coords == (1, 0, 0)
    r = RepHandle.exterior(3, 2)
    hwv = highest_weight_vector(r)
    assert hwv.coords[r._index[(1, 2)]] == 1
    s = RepHandle.symmetric(2, 2)
    assert highest_weight_vector(s).coords[s._index[(1, 1)]] == 1
    for rep in (r, s):
        v = highest_weight_vector(rep)
        for i in range(1, rep.d):
            assert act_E(rep, i, i + 1, v).is_zero()
    with pytest.raises(ValueError):
        highest_weight_vector(RepHandle.tensor([RepHandle.natural(2)] * 2))


# -- representation property ----------------------------------------------------

@pytest.mark.parametrize("rep", [
    RepHandle.natural(3),
    RepHandle.exterior(3, 2),
    RepHandle.symmetric(2, 2),
    RepHandle.trivial(2),
    RepHandle.tensor([RepHandle.natural(2), RepHandle.natural(2)]),
    RepHandle.twisted(RepHandle.exterior(3, 2), (2, 3, 1)),
])
def test_commutator_relation(rep):
    # E_ij E_kl - E_kl E_ij = delta_jk E_il - delta_li E_kj
    rng = Random(5)
    d = rep.d
    for _ in range(30):
        v = vec(rep, [rng.randint(-2, 2) for _ in range(rep.dim)])
        i, j, k, l = (rng.randint(1, d) for _ in range(4))
        lhs = act_E(rep, i, j, act_E(rep, k, l, v)) - act_E(rep, k, l, act_E(rep, i, j, v))
        rhs_coords = [0] * rep.dim
        if j == k:
            rhs_coords = [a + b for a, b in zip(rhs_coords, act_E(rep, i, l, v).coords)]
        if l == i:
            rhs_coords = [a - b for a, b in zip(rhs_coords, act_E(rep, k, j, v).coords)]
        assert lhs.coords == tuple(rhs_coords)


def test_twist_is_conjugation():
    base = RepHandle.exterior(3, 2)
    l = (2, 2, 1)
    tw = RepHandle.twisted(base, l)
    rng = Random(9)
    lmat = [[l[i] if i == j else 0 for j in range(3)] for i in range(3)]
    linv = [[Fraction(1, l[i]) if i == j else 0 for j in range(3)] for i in range(3)]
    for _ in range(20):
        v = [rng.randint(-2, 2) for _ in range(base.dim)]
        b = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        conj = [[sum(lmat[i][k] * b[k][t] * linv[t][j] for k in range(3) for t in range(3))
                 for j in range(3)] for i in range(3)]
        assert act_matrix(tw, b, vec(tw, v)).coords == act_matrix(base, conj, vec(base, v)).coords


def test_top_exterior_power_is_trivial_as_sl():
    # exterior(d) is one-dimensional; traceless matrices act by zero on it
    # (the identity still acts by d, unlike the honest trivial module)
    r = RepHandle.exterior(3, 3)
    assert r.dim == 1
    v = basis_vector(r, 0)
    for i in range(1, 4):
        for j in range(1, 4):
            if i != j:
                assert act_E(r, i, j, v).is_zero()
    h = [[1, 0, 0], [0, -1, 0], [0, 0, 0]]  # E_11 - E_22
    assert act_matrix(r, h, v).is_zero()
    assert act_matrix(r, identity(3), v).coords == (3,)


# -- cyclic closures -------------------------------------------------------------

@pytest.mark.parametrize("rep,seed,expect", [
    (RepHandle.exterior(3, 2), (1, 1, 0), 3),
    (RepHandle.exterior(4, 2), (0, 1, 0, 0, 0, 0), 6),
    (RepHandle.symmetric(2, 2), (0, 1, 0), 3),
    (RepHandle.trivial(2), (1,), 1),
])
def test_cyclic_closure_irreducible(rep, seed, expect):
    assert cyclic_closure(rep, seed).rank == expect


def test_cyclic_closure_zero_seed():
    with pytest.raises(ValueError):
        cyclic_closure(RepHandle.natural(2), (0, 0))


def test_cyclic_rep_tensor_component():
    # Lambda^2 C^3 (x) C^3 = V(w1 + w2) + V(w3); the cyclic hull of the
    # highest weight line is the 8-dimensional component
    t = RepHandle.tensor([RepHandle.exterior(3, 2), RepHandle.natural(3)])
    seed = [0] * t.dim
    seed[t._index[((1, 2), (1,))]] = 1
    c = RepHandle.cyclic(t, seed)
    assert c.dim == 8
    # still a representation: spot-check the commutator relation
    rng = Random(2)
    for _ in range(10):
        v = vec(c, [rng.randint(-2, 2) for _ in range(c.dim)])
        lhs = act_E(c, 1, 2, act_E(c, 2, 1, v)) - act_E(c, 2, 1, act_E(c, 1, 2, v))
        rhs = act_E(c, 1, 1, v) - act_E(c, 2, 2, v)
        assert lhs.coords == rhs.coords


# -- config parsing ---------------------------------------------------------------

def test_rep_from_config():
    assert rep_from_config(3, {"kind": "exterior", "k": 2}).dim == 3
    assert rep_from_config(2, {"kind": "symmetric", "m": 2}).dim == 3
    assert rep_from_config(2, {"kind": "natural"}).dim == 2
    assert rep_from_config(2, {"kind": "trivial"}).dim == 1
    tw = rep_from_config(2, {"kind": "twisted", "l": [2, 2], "inner": {"kind": "natural"}})
    assert tw.kind == "twisted"
    with pytest.raises(ValueError):
        rep_from_config(2, {"kind": "exterior", "k": 1, "bogus": 1})
    with pytest.raises(ValueError):
        rep_from_config(2, {"kind": "nope"})
