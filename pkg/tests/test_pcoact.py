import numpy as np
import pytest

from catalog import (adjoint_coaction, dual_basis_coalgebra, dual_basis_comodule, group_algebra, named_group,
                     subgroup_partial_coaction_on_k, subgroups, subsets_containing_identity,
                     trivial_coaction)
from coalg import dual_algebra, tensor_coalgebra
from errors import (ConditionsViolated, DimensionMismatch, NotComodule, NotComultiplicative,
                    NotPartialCoaction)
from globalization import dual_basis_coaction_on_tensor
from hopf import dual_hopf
from multilinear import LinearMap, kron_arrays
from pact import ActionMap, DualActionMap, check_partial_module_algebra, check_partial_module_coalgebra
from pcoact import (CoactionMap, action_to_coaction, check_comodule_coalgebra,
                    check_counit_coaction, check_four_way_equivalence, check_nabla_identities,
                    check_partial_comodule_coalgebra, check_translations, coaction_projection_condition,
                    coaction_to_action, coaction_to_dual_action, dual_coaction_on_dual,
                    idempotent_coaction_on_ground_field, induce_partial_coaction,
                    is_global_coaction, nabla)
from scalars import QQ


def coaction_instances(G, H, k):
    """Every PCC catalog instance over H with dim H <= 6."""
    out = [(k, subgroup_partial_coaction_on_k(G, N)) for N in subgroups(G)]
    out.append((H.coalg, trivial_coaction(H.coalg, H)))
    out.append((H.coalg, adjoint_coaction(H)))
    out.append((dual_basis_coalgebra(H), dual_basis_comodule(H)))
    return out

# ---------------------------------------------------------
# Coaction maps and ∇
# ---------------------------------------------------------
def test_coaction_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        CoactionMap(2, 2, LinearMap(QQ, QQ.zeros((3, 2))))

def test_nabla_of_subgroup_coaction(z4, kZ4, k):
    co = subgroup_partial_coaction_on_k(z4, ["e", "g^2"])
    N = nabla(co, k).matrix
    assert N[:, 0].tolist() == [QQ.parse("1/2"), 0, QQ.parse("1/2"), 0]

def test_nabla_of_global_coaction_is_unit(kZ4):
    co = trivial_coaction(kZ4.coalg, kZ4)
    N = nabla(co, kZ4.coalg).matrix
    assert np.all(N == np.multiply.outer(kZ4.alg.one, kZ4.coalg.counit))

def test_nabla_identities_on_passing_instances(s3, kS3, k):
    for C, co in coaction_instances(s3, kS3, k):
        assert check_partial_comodule_coalgebra(C, kS3, co, symmetric=True).passed
        assert check_nabla_identities(C, kS3, co).passed

# ---------------------------------------------------------
# Global versus partial
# ---------------------------------------------------------
def test_is_global_coaction(z4, kZ4, k):
    ok, witness = is_global_coaction(k, kZ4, subgroup_partial_coaction_on_k(z4, range(4)))
    assert not ok and witness is not None
    ok, witness = is_global_coaction(k, kZ4, subgroup_partial_coaction_on_k(z4, ["e"]))
    assert ok and witness is None
    with pytest.raises(NotPartialCoaction):
        is_global_coaction(k, kZ4, subgroup_partial_coaction_on_k(z4, ["e", "g"]))

def test_global_coactions_agree_with_comodule_axioms(kS3):
    for co in (trivial_coaction(kS3.coalg, kS3), adjoint_coaction(kS3)):
        ok, _ = is_global_coaction(kS3.coalg, kS3, co)
        assert ok
        assert check_comodule_coalgebra(kS3.coalg, kS3, co).passed
        assert check_counit_coaction(kS3.coalg, kS3, co).passed

def test_idempotent_coaction_on_ground_field(kZ4, k):
    half = QQ.parse("1/2")
    co = idempotent_coaction_on_ground_field(kZ4, [half, 0, half, 0])
    assert check_partial_comodule_coalgebra(k, kZ4, co).passed
    with pytest.raises(ConditionsViolated) as exc:
        idempotent_coaction_on_ground_field(kZ4, [1, 1, 0, 0])
    assert exc.value.witness["condition"] == "counit"
    with pytest.raises(ConditionsViolated) as exc:
        idempotent_coaction_on_ground_field(kZ4, [half, half, 0, 0])
    assert exc.value.witness["condition"] == "idempotent"

# ---------------------------------------------------------
# Passage to the dual Hopf algebra
# ---------------------------------------------------------
@pytest.mark.parametrize("group", ["Z2", "Z4", "S3"])
def test_four_way_equivalence(group, k):
    G = named_group(group)
    H = group_algebra(G)
    for C, co in coaction_instances(G, H, k):
        rep = check_four_way_equivalence(C, H, co)
        assert rep.passed, rep.summary()

def test_round_trips_are_exact(s3, kS3, k):
    for C, co in coaction_instances(s3, kS3, k):
        act = coaction_to_action(C, kS3, co)
        back = action_to_coaction(C, act, kS3)
        assert np.all(back.matrix == co.matrix)
        again = coaction_to_action(C, kS3, back)
        assert np.all(again.matrix == act.matrix)

def test_partial_coaction_gives_partial_action(z4, kZ4, k):
    Hs = dual_hopf(kZ4)
    for N in subsets_containing_identity(z4):
        co = subgroup_partial_coaction_on_k(z4, N)
        pcc = check_partial_comodule_coalgebra(k, kZ4, co).passed
        act = coaction_to_action(k, kZ4, co, verify=False)
        dact = coaction_to_dual_action(k, kZ4, co, verify=False)
        assert check_partial_module_coalgebra(k, Hs, act).passed == pcc
        assert check_partial_module_algebra(dual_algebra(k), Hs, dact).passed == pcc

def test_dual_coaction_layout(kZ4):
    co = adjoint_coaction(kZ4)
    C = kZ4.coalg
    dact = coaction_to_dual_action(C, kZ4, co)
    rho = dual_coaction_on_dual(C, kZ4, dact)
    assert rho.matrix.shape == (16, 4)
    assert np.all(rho.matrix.reshape(4, 4, 4) == co.tensor.transpose(2, 0, 1))

def test_four_way_detects_broken_coaction(z4, kZ4, k):
    co = subgroup_partial_coaction_on_k(z4, ["e", "g"])
    rep = check_four_way_equivalence(k, kZ4, co)
    assert not rep.passed
    # the three axiom suites fail together, the translations still agree
    assert not rep.verdict("coaction on C/PCC-3")
    assert rep.verdict("coaction~action") and rep.verdict("round-trip")

def _tampered(m):
    m = m.copy()
    m[0, 0] = QQ.add(m[0, 0], 1)
    return m

def test_translations_catch_a_wrong_passage(kZ2):
    C, co = kZ2.coalg, adjoint_coaction(kZ2)
    act = coaction_to_action(C, kZ2, co)
    dact = coaction_to_dual_action(C, kZ2, co)
    rho = dual_coaction_on_dual(C, kZ2, dact)
    assert check_translations(C, kZ2, co, act, dact, rho).passed

    bad_act = ActionMap(act.coalgebra_dim, act.hopf_dim, LinearMap(QQ, _tampered(act.matrix)))
    rep = check_translations(C, kZ2, co, bad_act, dact, rho)
    assert not rep.verdict("coaction~action")
    assert rep.verdict("action~action*") and rep.verdict("coaction~coaction*")

    bad_dact = DualActionMap(dact.hopf_dim, dact.dual_dim, LinearMap(QQ, _tampered(dact.matrix)))
    rep = check_translations(C, kZ2, co, act, bad_dact, rho)
    assert not rep.verdict("action~action*") and not rep.verdict("action*~coaction*")
    assert rep.verdict("coaction~coaction*")

    rep = check_translations(C, kZ2, co, act, dact, LinearMap(QQ, _tampered(rho.matrix)))
    assert not rep.verdict("coaction~coaction*") and not rep.verdict("action*~coaction*")
    assert rep.verdict("coaction~action")

# ---------------------------------------------------------
# Induced partial coactions
# ---------------------------------------------------------
def _standard_pcc_data(C, H, co):
    Hs = dual_hopf(H)
    D = tensor_coalgebra(C, Hs.coalg)
    co_global = dual_basis_coaction_on_tensor(C, H)
    incl = LinearMap(QQ, kron_arrays(QQ.eye(C.dim), Hs.alg.unit.matrix))
    proj = LinearMap(QQ, coaction_to_action(C, H, co, verify=False).matrix)
    return D, co_global, incl, proj

def test_induced_coaction_recovers_partial_coaction(z4, kZ4, k):
    for N in subgroups(z4):
        co = subgroup_partial_coaction_on_k(z4, N)
        D, co_global, incl, proj = _standard_pcc_data(k, kZ4, co)
        got = induce_partial_coaction(D, kZ4, co_global, incl, proj, k)
        assert np.all(got.matrix == co.matrix)

def test_coaction_projection_condition_fails_for_non_subgroup(z4, kZ4, k):
    co = subgroup_partial_coaction_on_k(z4, ["e", "g"])
    D, co_global, incl, proj = _standard_pcc_data(k, kZ4, co)
    lhs, rhs = coaction_projection_condition(D, co_global, incl, proj)
    assert not np.all(lhs == rhs)
    # h² ≠ h, so proj is refused before the condition is read
    with pytest.raises(NotComultiplicative):
        induce_partial_coaction(D, kZ4, co_global, incl, proj, k)

def test_induce_coaction_refuses_non_comodule(z4, kZ4, k):
    co = subgroup_partial_coaction_on_k(z4, ["e"])
    D, co_global, incl, proj = _standard_pcc_data(k, kZ4, co)
    broken = CoactionMap(4, D.dim, LinearMap(QQ, QQ.zeros((16, 4))))
    with pytest.raises(NotComodule):
        induce_partial_coaction(D, kZ4, broken, incl, proj, k)
