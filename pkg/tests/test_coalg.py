import numpy as np
import pytest

from catalog import group_algebra, klein
from coalg import (Algebra, Coalgebra, check_algebra, check_coalgebra, check_comultiplicative,
                   check_multiplicative, dual_algebra, dual_coalgebra, ground_coalgebra,
                   tensor_coalgebra)
from errors import DimensionMismatch, FieldMismatch
from multilinear import LinearMap, contract, identity
from scalars import FieldSpec, QQ


def divided_powers(n=3):
    """Δ(x_k) = Σ x_i⊗x_{k-i}, ε(x_k) = δ_{k0}."""
    delta = QQ.zeros((n * n, n))
    for k in range(n):
        for i in range(k + 1):
            delta[i * n + (k - i), k] = 1
    eps = [1] + [0] * (n - 1)
    return Coalgebra.from_arrays(QQ, delta, eps, [f"x{k}" for k in range(n)])

# ---------------------------------------------------------
# Coalgebra axioms
# ---------------------------------------------------------
def test_group_coalgebras_pass(kS3, kZ4, kV4):
    for H in (kS3, kZ4, kV4):
        rep = check_coalgebra(H.coalg)
        assert rep.passed, rep.summary()

def test_divided_powers_pass():
    assert check_coalgebra(divided_powers(4)).passed

def test_ground_coalgebra(k):
    assert k.dim == 1 and k.labels == ("1",)
    assert check_coalgebra(k).passed

def test_perturbed_comultiplication_fails_with_witness():
    C = divided_powers(3)
    delta = C.delta.matrix.copy()
    delta[0, 2] = 1  # x0⊗x0 into Δ(x2)
    bad = Coalgebra(LinearMap(QQ, delta), C.epsilon, C.labels)
    rep = check_coalgebra(bad)
    assert not rep.passed
    w = rep.first_failure().witness
    assert set(w) == {"index", "lhs", "rhs"}
    assert w["lhs"] != w["rhs"]

def test_counit_failure_is_reported():
    C = divided_powers(2)
    bad = Coalgebra(C.delta, LinearMap(QQ, [[1, 1]]), C.labels)
    rep = check_coalgebra(bad)
    assert not rep.verdict("counit-left")
    assert rep.verdict("coassociativity")

def test_shapes_are_validated():
    with pytest.raises(DimensionMismatch):
        Coalgebra.from_arrays(QQ, QQ.zeros((3, 2)), [1, 0])
    with pytest.raises(FieldMismatch):
        Coalgebra(LinearMap(QQ, [[1]]), LinearMap(FieldSpec.prime(3), [[1]]))

# ---------------------------------------------------------
# Duals and tensor products
# ---------------------------------------------------------
def test_dual_algebra_is_associative():
    for C in (divided_powers(3), group_algebra(klein(), QQ).coalg):
        A = dual_algebra(C)
        assert check_algebra(A).passed
        assert A.labels[0].endswith("*")

def test_counit_is_the_unit_of_the_dual_algebra(kS3):
    for C in (divided_powers(3), kS3.coalg):
        A = dual_algebra(C)
        f = C.field
        eps = A.one
        rng = np.random.default_rng(2)
        for _ in range(5):
            v = f.reduce(rng.integers(-3, 4, size=C.dim).tolist())
            # ε∗f = f = f∗ε
            assert np.all(f.reduce(contract(f, "rab,a,b->r", A.product, eps, v)) == v)
            assert np.all(f.reduce(contract(f, "rab,a,b->r", A.product, v, eps)) == v)

def test_double_dual_is_the_same_structure(kS3):
    back = dual_coalgebra(dual_algebra(kS3.coalg))
    assert back.delta.equals(kS3.coalg.delta)
    assert back.epsilon.equals(kS3.coalg.epsilon)

def test_tensor_coalgebra(kZ2):
    C = divided_powers(2)
    T = tensor_coalgebra(C, kZ2.coalg)
    assert T.dim == 4
    assert check_coalgebra(T).passed
    assert T.labels[1] == "x0⊗" + kZ2.labels[1]

def test_tensor_with_ground_field_is_unchanged(k):
    C = divided_powers(3)
    T = tensor_coalgebra(C, k)
    assert T.delta.equals(C.delta)
    assert T.epsilon.equals(C.epsilon)

def test_tensor_rejects_mixed_fields(k):
    with pytest.raises(FieldMismatch):
        tensor_coalgebra(k, ground_coalgebra(FieldSpec.prime(2)))

# ---------------------------------------------------------
# Morphisms
# ---------------------------------------------------------
def test_identity_is_comultiplicative(kS3):
    rep = check_comultiplicative(identity(QQ, 6), kS3.coalg, kS3.coalg, counit=True)
    assert rep.passed

def test_doubling_is_not_comultiplicative(kZ2):
    f = LinearMap(QQ, 2 * QQ.eye(2))
    rep = check_comultiplicative(f, kZ2.coalg, kZ2.coalg, counit=True)
    assert not rep.verdict("comultiplicativity")
    assert not rep.verdict("counit-preserved")

def test_counit_is_comultiplicative_into_ground(kZ4, k):
    eps = kZ4.coalg.epsilon
    assert check_comultiplicative(eps, kZ4.coalg, k, counit=True).passed

def test_unit_is_multiplicative(kZ4):
    A = kZ4.alg
    ground = Algebra.from_arrays(QQ, [[1]], [1])
    assert check_multiplicative(A.unit, ground, A, unital=True).passed
    with pytest.raises(DimensionMismatch):
        check_multiplicative(A.unit, A, ground)

def test_transpose_of_comultiplicative_is_multiplicative(s3, kS3):
    # g -> g^-1 permutes group-likes
    perm = np.zeros((6, 6), dtype=object)
    for g in range(6):
        perm[s3.inverse[g], g] = 1
    f = LinearMap(QQ, perm)
    assert check_comultiplicative(f, kS3.coalg, kS3.coalg, counit=True).passed
    Ds = dual_algebra(kS3.coalg)
    assert check_multiplicative(f.T, Ds, Ds, unital=True).passed
