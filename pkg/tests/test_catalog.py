import pytest

from catalog import (adjoint_coaction, character_partial_action_on_k, cyclic, dual_basis_coalgebra,
                     dual_basis_comodule, group_algebra, group_from_table, klein, named_group,
                     named_subset, regular_module_coalgebra, subgroup_partial_action_on_k,
                     subgroup_partial_coaction_on_k, subgroups, subsets_containing_identity,
                     symmetric3, tensor_comodule_coalgebra, tensor_module_coalgebra,
                     tensor_module_instance, trivial_coaction)
from coalg import check_coalgebra, tensor_coalgebra
from errors import CharacteristicDividesOrder, ConditionsViolated, InvalidGroupTable
from pact import check_counit_compat, check_module_coalgebra, check_partial_module_coalgebra
from pcoact import (check_comodule_coalgebra, check_counit_coaction, check_nabla_identities,
                    check_partial_comodule_coalgebra)
from scalars import FieldSpec, QQ

# ---------------------------------------------------------
# Group tables
# ---------------------------------------------------------
def test_symmetric3_table(s3):
    assert s3.order == 6
    assert s3.labels[s3.identity] == "e"
    assert set(s3.labels) == {"e", "(12)", "(13)", "(23)", "(123)", "(132)"}
    assert len(subgroups(s3)) == 6

def test_subset_enumeration_sizes(s3, z4):
    assert len(subsets_containing_identity(s3)) == 32
    assert len(subsets_containing_identity(z4)) == 8
    assert sorted(len(n) for n in subgroups(z4)) == [1, 2, 4]

def test_invalid_tables_are_refused():
    with pytest.raises(InvalidGroupTable):
        group_from_table([[0, 1], [1, 1]])   # no inverse for 1
    with pytest.raises(InvalidGroupTable):
        group_from_table([[0, 1], [1]])
    with pytest.raises(InvalidGroupTable):
        group_from_table([["e", "g"], ["g", "e"]])
    with pytest.raises(InvalidGroupTable):
        cyclic(13)

def test_named_groups_and_subsets(s3):
    assert named_group("s3").order == 6
    assert named_group("Klein").order == 4
    assert named_group("Z5").order == 5
    with pytest.raises(InvalidGroupTable):
        named_group("D4")
    assert named_subset(s3, "A3") == s3.subset(["e", "(123)", "(132)"])
    assert named_subset(s3, "G") == tuple(range(6))
    assert named_subset(s3, "e,(12)") == s3.subset(["e", "(12)"])
    with pytest.raises(InvalidGroupTable):
        named_subset(cyclic(3), "A3")

def test_klein_every_nonidentity_has_order_two():
    V = klein()
    assert all(V.inverse[g] == g for g in range(4))

# ---------------------------------------------------------
# Partial actions on the ground field
# ---------------------------------------------------------
def test_subgroup_criterion_for_actions(s3, kS3, k):
    passing = []
    for N in subsets_containing_identity(s3):
        act = subgroup_partial_action_on_k(s3, N)
        if check_partial_module_coalgebra(k, kS3, act).passed:
            passing.append(N)
    assert passing == subgroups(s3)

@pytest.mark.parametrize("order", [2, 4])
def test_subgroup_criterion_cyclic(order, k):
    G = cyclic(order)
    H = group_algebra(G)
    passing = [N for N in subsets_containing_identity(G)
               if check_partial_module_coalgebra(k, H, subgroup_partial_action_on_k(G, N)).passed]
    assert passing == subgroups(G)

def test_non_subgroup_fails_third_axiom(s3, kS3, k):
    act = subgroup_partial_action_on_k(s3, ["e", "(12)", "(13)"])
    rep = check_partial_module_coalgebra(k, kS3, act)
    assert rep.verdict("PMC-1") and rep.verdict("PMC-2")
    assert not rep.verdict("PMC-3")

def test_missing_identity_fails_unit_axiom(s3, kS3, k):
    act = subgroup_partial_action_on_k(s3, ["(123)"])
    assert not check_partial_module_coalgebra(k, kS3, act).verdict("PMC-1")

def test_character_action(s3, kS3, k):
    alpha = [1 if g in named_subset(s3, "A3") else 0 for g in range(6)]
    act = character_partial_action_on_k(kS3, alpha)
    assert check_partial_module_coalgebra(k, kS3, act).passed
    with pytest.raises(ConditionsViolated) as exc:
        character_partial_action_on_k(kS3, [0, 1, 1, 1, 1, 1])
    assert exc.value.witness["condition"] == "unit"
    bad = [1 if g in s3.subset(["e", "(12)", "(13)"]) else 0 for g in range(6)]
    with pytest.raises(ConditionsViolated):
        character_partial_action_on_k(kS3, bad)

# ---------------------------------------------------------
# Partial coactions on the ground field
# ---------------------------------------------------------
def test_subgroup_criterion_for_coactions(z4, kZ4, k):
    passing = []
    for N in subsets_containing_identity(z4):
        co = subgroup_partial_coaction_on_k(z4, N)
        if check_partial_comodule_coalgebra(k, kZ4, co).passed:
            passing.append(N)
            assert check_nabla_identities(k, kZ4, co).passed
    assert [tuple(z4.labels[g] for g in N) for N in passing] == [("e",), ("e", "g^2"), ("e", "g", "g^2", "g^3")]

def test_even_subsets_rejected_in_characteristic_two(z4):
    F2 = FieldSpec.prime(2)
    for N in subsets_containing_identity(z4):
        if len(N) % 2 == 0:
            with pytest.raises(CharacteristicDividesOrder):
                subgroup_partial_coaction_on_k(z4, N, F2)
        else:
            subgroup_partial_coaction_on_k(z4, N, F2)

def test_subgroup_criterion_for_coactions_s3(s3, kS3, k):
    passing = [N for N in subsets_containing_identity(s3)
               if check_partial_comodule_coalgebra(k, kS3, subgroup_partial_coaction_on_k(s3, N)).passed]
    assert passing == subgroups(s3)

# ---------------------------------------------------------
# Global instances
# ---------------------------------------------------------
def test_regular_module_coalgebra(kS3):
    act = regular_module_coalgebra(kS3)
    assert check_module_coalgebra(kS3.coalg, kS3, act).passed
    assert check_counit_compat(kS3.coalg, kS3, act).passed

def test_tensor_module_coalgebra(kZ2):
    D, act = tensor_module_instance(kZ2.coalg, kZ2)
    assert D.dim == 4
    assert check_module_coalgebra(D, kZ2, act).passed

def test_tensor_module_coalgebra_keeps_partial_failures(s3, kS3, k):
    partial = subgroup_partial_action_on_k(s3, ["e", "(12)", "(13)"])
    lifted = tensor_module_coalgebra(k, (k, partial))
    D = tensor_coalgebra(k, k)
    want = check_module_coalgebra(k, kS3, partial)
    got = check_module_coalgebra(D, kS3, lifted)
    assert not got.passed
    assert got.first_failure().axiom == want.first_failure().axiom
    assert got.first_failure().witness == want.first_failure().witness

@pytest.mark.parametrize("maker", [adjoint_coaction, lambda H: trivial_coaction(H.coalg, H)],
                         ids=["adjoint", "trivial"])
def test_global_coactions(maker, kS3, kZ4):
    for H in (kS3, kZ4):
        co = maker(H)
        assert check_comodule_coalgebra(H.coalg, H, co).passed
        assert check_counit_coaction(H.coalg, H, co).passed

def test_dual_basis_comodule(kS3):
    C = dual_basis_coalgebra(kS3)
    assert check_coalgebra(C).passed
    co = dual_basis_comodule(kS3)
    assert check_comodule_coalgebra(C, kS3, co).passed

def test_tensor_comodule_coalgebra(kZ2):
    co = tensor_comodule_coalgebra((kZ2.coalg, adjoint_coaction(kZ2)), kZ2.coalg)
    D = tensor_coalgebra(kZ2.coalg, kZ2.coalg)
    assert check_comodule_coalgebra(D, kZ2, co).passed
