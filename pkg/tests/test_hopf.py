import numpy as np
import pytest

from catalog import cyclic, group_algebra, group_bialgebra, klein, monoid_bialgebra, symmetric3
from coalg import check_algebra, dual_algebra
from errors import NoAntipode, NotABialgebra
from hopf import (Bialgebra, HopfAlgebra, check_antipode_properties, check_bialgebra, check_hopf,
                  compute_antipode, convolution, convolution_algebra, dual_hopf,
                  evaluation_pairing, separates_points, verify_hopf)
from multilinear import LinearMap, identity
from scalars import FieldSpec, QQ

GROUPS = {"Z2": lambda: cyclic(2), "Z3": lambda: cyclic(3), "Z4": lambda: cyclic(4),
          "Klein": klein, "S3": symmetric3}

# ---------------------------------------------------------
# Group algebras
# ---------------------------------------------------------
@pytest.mark.parametrize("field", [QQ, FieldSpec.prime(5)], ids=["Q", "F5"])
@pytest.mark.parametrize("name", sorted(GROUPS))
def test_group_algebra_is_hopf(name, field):
    G = GROUPS[name]()
    H = group_algebra(G, field)
    assert check_bialgebra(H.bialg).passed
    assert check_antipode_properties(H).passed
    expected = field.zeros((G.order, G.order))
    for g in range(G.order):
        expected[G.inverse[g], g] = 1
    assert np.all(H.S == expected)

def test_z4_antipode_is_cube(kZ4):
    # g -> g^3
    assert [int(np.argmax(col)) for col in kZ4.S.T.tolist()] == [0, 3, 2, 1]

def test_check_hopf_merges_both_reports(kS3):
    rep = check_hopf(kS3)
    assert rep.passed
    assert any(r.axiom.startswith("bialgebra/") for r in rep.results)
    assert any(r.axiom.startswith("antipode/") for r in rep.results)

# ---------------------------------------------------------
# Negative instances
# ---------------------------------------------------------
def test_monoid_has_no_antipode():
    B = monoid_bialgebra()
    assert check_bialgebra(B).passed
    with pytest.raises(NoAntipode):
        compute_antipode(B)

def test_broken_bialgebra_is_refused(kZ2):
    bad_unit = LinearMap(QQ, [[1], [1]])
    alg = type(kZ2.alg)(kZ2.alg.mul, bad_unit, kZ2.labels)
    with pytest.raises(NotABialgebra) as exc:
        compute_antipode(Bialgebra(alg, kZ2.coalg))
    assert exc.value.witness is not None

def test_wrong_antipode_fails(kZ2):
    H = type(kZ2)(kZ2.bialg, identity(QQ, 2))
    assert check_antipode_properties(H).passed  # Z2: g^-1 = g
    H = type(kZ2)(kZ2.bialg, LinearMap(QQ, [[0, 1], [1, 0]]))
    rep = check_antipode_properties(H)
    assert not rep.verdict("convolution-left")

def test_verify_hopf_names_the_failing_part(kZ2):
    assert verify_hopf(kZ2) is kZ2
    with pytest.raises(NoAntipode) as exc:
        verify_hopf(HopfAlgebra(kZ2.bialg, LinearMap(QQ, QQ.zeros((2, 2)))))
    assert exc.value.witness.axiom == "convolution-left"
    alg = type(kZ2.alg)(kZ2.alg.mul, LinearMap(QQ, [[1], [1]]), kZ2.labels)
    with pytest.raises(NotABialgebra):
        verify_hopf(HopfAlgebra(Bialgebra(alg, kZ2.coalg), kZ2.antipode))

# ---------------------------------------------------------
# Convolution and duals
# ---------------------------------------------------------
def test_convolution_of_identity_and_antipode(kS3):
    ident = identity(QQ, 6)
    got = convolution(kS3.antipode, ident, kS3.coalg, kS3.alg).matrix
    assert np.all(got == np.multiply.outer(kS3.alg.one, kS3.coalg.counit))

def test_convolution_algebra_of_ground_field(kZ2, k):
    # Hom(k, A) is A
    A = convolution_algebra(k, kZ2.alg)
    assert A.mul.equals(kZ2.alg.mul)
    assert A.unit.equals(kZ2.alg.unit)

def test_convolution_algebra_is_associative(kZ2):
    A = convolution_algebra(kZ2.coalg, dual_algebra(kZ2.coalg))
    assert A.dim == 4
    assert check_algebra(A).passed

def test_dual_hopf(kS3, kZ4):
    for H in (kS3, kZ4):
        Hs = dual_hopf(H)
        assert check_hopf(Hs).passed
        assert separates_points(H)
        assert np.all(evaluation_pairing(H) == QQ.eye(H.dim))

def test_double_dual_hopf_is_the_original(kS3, kZ4):
    for H in (kS3, kZ4, dual_hopf(kS3)):
        back = dual_hopf(dual_hopf(H))
        assert back.alg.mul.equals(H.alg.mul) and back.alg.unit.equals(H.alg.unit)
        assert back.coalg.delta.equals(H.coalg.delta) and back.coalg.epsilon.equals(H.coalg.epsilon)
        assert back.antipode.equals(H.antipode)

def test_dual_of_group_algebra_is_function_algebra(kZ4):
    Hs = dual_hopf(kZ4)
    # e*_g are orthogonal idempotents
    for g in range(4):
        for h in range(4):
            want = [1 if (g == h == r) else 0 for r in range(4)]
            assert Hs.alg.product[:, g, h].tolist() == want
    assert Hs.alg.one.tolist() == [1, 1, 1, 1]

def test_group_bialgebra_over_f2():
    B = group_bialgebra(cyclic(2), FieldSpec.prime(2))
    assert check_bialgebra(B).passed
    assert check_hopf(compute_antipode(B)).passed
