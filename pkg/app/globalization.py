"""
Globalizations of partial module coalgebras and partial comodule coalgebras.

A globalization is a triple (D, θ, π): D carries a global (co)action, θ embeds
C as a coalgebra, π: D → D is a comultiplicative projection onto θ(C), the
partial structure on C is the one induced through π, and θ(C) generates D.
Verifiers re-check every structural hypothesis so file-supplied triples get
the same scrutiny as constructed ones.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from catalog import regular_module_coalgebra, tensor_module_coalgebra
from coalg import (Coalgebra, check_algebra, check_coalgebra,
                   check_comultiplicative, check_multiplicative, dual_algebra,
                   tensor_coalgebra)
from errors import (DimensionMismatch, InvariantViolation, NotInjective, NotPartialComoduleCoalgebra,
                    NotPartialModuleCoalgebra, NotStandardForm)
from hopf import HopfAlgebra, convolution_algebra, dual_hopf, separates_points
from multilinear import (LinearMap, Subspace, contract, flip, kron_arrays,
                         left_inverse_on_image, rank, same_column_space, span_closure)
from pact import (ActionMap, check_counit_compat, check_module_algebra,
                  check_module_coalgebra, check_partial_module_coalgebra,
                  dual_action_on_dual, induce_partial_action)
from pcoact import (CoactionMap, check_comodule_coalgebra, check_counit_coaction,
                    check_partial_comodule_coalgebra, coaction_to_action)
from report import CheckReport, compare
from scalars import FieldSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GlobalizationPMC:
    D: Coalgebra
    act_global: ActionMap
    theta: LinearMap
    pi: LinearMap
    report: CheckReport


@dataclass(frozen=True, eq=False)
class GlobalizationPCC:
    D: Coalgebra
    co_global: CoactionMap
    theta: LinearMap
    pi: LinearMap
    report: CheckReport


@dataclass(frozen=True, eq=False)
class DualGlobalization:
    phi: Optional[LinearMap]
    B: Optional[Subspace]
    report: CheckReport
    psi: Optional[LinearMap] = None
    Phi: Optional[LinearMap] = None


# ---------------- shared structural checks ----------------

def _check_triple(rep: CheckReport, C: Coalgebra, D: Coalgebra, theta: LinearMap, pi: LinearMap) -> None:
    f = C.field
    rep.merge(check_coalgebra(D), "D")
    rep.require("theta-injective", rank(f, theta.matrix) == C.dim,
                rank=rank(f, theta.matrix), dim=C.dim)
    rep.merge(check_comultiplicative(theta, C, D, counit=True), "theta")
    rep.compare("pi-idempotent", f, pi.matrix.dot(pi.matrix), pi.matrix)
    rep.require("pi-image", same_column_space(f, pi.matrix, theta.matrix))
    rep.merge(check_comultiplicative(pi, D, D), "pi")

def _counit_of_pi(D: Coalgebra, pi: LinearMap) -> np.ndarray:
    return D.counit.dot(pi.matrix)


# ---------------- module coalgebras ----------------

def verify_globalization_pmc(C: Coalgebra, H: HopfAlgebra, act: ActionMap, D: Coalgebra,
                             act_global: ActionMap, theta: LinearMap, pi: LinearMap) -> CheckReport:
    f = C.field
    rep = CheckReport("globalization (module coalgebra)")
    _check_triple(rep, C, D, theta, pi)
    rep.merge(check_module_coalgebra(D, H, act_global), "global")
    rep.merge(check_counit_compat(D, H, act_global), "global")
    P, T, AG = pi.matrix, theta.matrix, act_global.tensor
    rep.compare("GMC-1", f,
                contract(f, "rs,sth,td->dhr", P, AG, P),
                contract(f, "abd,a,sbh,rs->dhr", D.comul, _counit_of_pi(D, pi), AG, P))
    rep.compare("GMC-2", f,
                contract(f, "rs,sch->chr", T, act.tensor),
                contract(f, "rs,sth,tc->chr", P, AG, T))
    span = span_closure(f, list(T.T), lambda v: [AG[:, :, g].dot(v) for g in range(H.dim)], D.dim)
    rep.require("GMC-3", span.dim == D.dim, span=span.dim, dim=D.dim)
    return rep

def standard_globalization_pmc(C: Coalgebra, H: HopfAlgebra, act: ActionMap) -> GlobalizationPMC:
    """D = C⊗H, (c⊗h)⇀k = c⊗hk, θ(c) = c⊗1, π(c⊗h) = (c⇀h)⊗1."""
    pmc = check_partial_module_coalgebra(C, H, act)
    if not pmc.passed:
        bad = pmc.first_failure()
        raise NotPartialModuleCoalgebra(f"input is not a partial module coalgebra: {bad.axiom}", witness=bad)
    f = C.field
    D = tensor_coalgebra(C, H.coalg)
    act_global = tensor_module_coalgebra(C, (H.coalg, regular_module_coalgebra(H)))
    one = H.alg.unit.matrix
    theta = LinearMap(f, kron_arrays(f.eye(C.dim), one))
    pi = LinearMap(f, kron_arrays(act.matrix, one))
    rep = verify_globalization_pmc(C, H, act, D, act_global, theta, pi)
    if not rep.passed:
        raise InvariantViolation("standard globalization failed its own verification", witness=rep.first_failure())
    log.info("standard globalization: C of dim %d into D of dim %d", C.dim, D.dim)
    return GlobalizationPMC(D, act_global, theta, pi, rep)


# ---------------- the dual side ----------------

def _module_step(BD: np.ndarray, h_dim: int):
    return lambda v: [BD[:, g, :].dot(v) for g in range(h_dim)]

def dual_globalization(C: Coalgebra, H: HopfAlgebra, act: ActionMap, G: GlobalizationPMC) -> DualGlobalization:
    """φ(α) = α∘θ⁻¹∘π and B = H⇁φ(C*) inside D*, with every hypothesis read on the dual side."""
    f, D = C.field, G.D
    Cs, Ds = dual_algebra(C), dual_algebra(D)
    BD = dual_action_on_dual(D, H, G.act_global).tensor
    Bc = dual_action_on_dual(C, H, act).tensor
    tT, pT = G.theta.matrix.T, G.pi.matrix.T
    rep = CheckReport("globalization (module algebra)")

    rep.merge(check_algebra(Ds), "D*")
    rep.require("theta*-surjective", rank(f, tT) == C.dim)
    rep.merge(check_multiplicative(LinearMap(f, tT), Ds, Cs, unital=True), "theta*")
    rep.compare("pi*-idempotent", f, pT.dot(pT), pT)
    # ker π* = ker θ*
    rep.require("pi*-image", same_column_space(f, pT.T, tT.T))
    rep.merge(check_multiplicative(LinearMap(f, pT), Ds, Ds), "pi*")
    rep.merge(check_module_algebra(Ds, H, dual_action_on_dual(D, H, G.act_global)), "global")
    stacked = np.vstack([tT.dot(BD[:, g, :]) for g in range(H.dim)])
    rep.require("generated", rank(f, stacked) == D.dim)

    try:
        inv = left_inverse_on_image(G.theta)
    except NotInjective:
        rep.require("phi-defined", False, reason="theta is not injective")
        return DualGlobalization(None, None, rep)
    phi = LinearMap(f, inv.matrix.dot(G.pi.matrix).T)
    Phi_m = phi.matrix
    rep.require("phi-injective", rank(f, Phi_m) == C.dim)
    rep.merge(check_multiplicative(phi, Cs, Ds), "phi")

    B = span_closure(f, list(Phi_m.T), _module_step(BD, H.dim), D.dim)
    MD = Ds.product
    one_step = np.vstack([BD[:, g, :].dot(Phi_m).T for g in range(H.dim)])
    rep.require("GMA-3", rank(f, one_step) == B.dim, span=rank(f, one_step), closure=B.dim)
    products = [contract(f, "rij,i,j->r", MD, b1, b2) for b1 in B.basis for b2 in B.basis]
    rep.require("B-subalgebra", all(B.contains(p) for p in products))
    ideal = [contract(f, "rij,i,j->r", MD, Phi_m[:, a], b) for a in range(C.dim) for b in B.basis]
    rep.require("GMA-1", all(_in_column_space(f, Phi_m, v) for v in ideal))
    e_phi = Phi_m.dot(C.counit)
    rep.compare("GMA-2", f,
                contract(f, "rs,sha->har", Phi_m, Bc),
                contract(f, "rij,i,jht,ta->har", MD, e_phi, BD, Phi_m))
    psi = Phi = None
    if _is_standard(C, H, D):
        psi, Phi = _psi_and_Phi(C, H, act)
    log.info("dual globalization: B of dim %d inside D* of dim %d", B.dim, D.dim)
    return DualGlobalization(phi, B, rep, psi, Phi)

def _in_column_space(f: FieldSpec, M: np.ndarray, v) -> bool:
    v = np.asarray(v, dtype=object).reshape(-1, 1)
    return rank(f, np.hstack([M, v])) == rank(f, M)

def _is_standard(C: Coalgebra, H: HopfAlgebra, D: Coalgebra) -> bool:
    if D.dim != C.dim * H.dim:
        return False
    ref = tensor_coalgebra(C, H.coalg)
    return bool(np.all(ref.delta.matrix == D.delta.matrix) and np.all(ref.epsilon.matrix == D.epsilon.matrix))

def _psi_and_Phi(C: Coalgebra, H: HopfAlgebra, act: ActionMap):
    """Ψ: (C⊗H)* → Hom(H, C*) and Φ(α)(h) = h⇁α; Hom coordinates (g, c) at g*dim(C)+c."""
    f = C.field
    psi = flip(C.dim, H.dim, f)
    Phi = act.tensor.transpose(2, 1, 0).reshape(H.dim * C.dim, C.dim)
    return psi, LinearMap(f, Phi)

def adjoint_psi_check(C: Coalgebra, H: HopfAlgebra, G: GlobalizationPMC, act: Optional[ActionMap] = None) -> CheckReport:
    """Ψ∘φ = Φ, Ψ an algebra isomorphism onto Hom(H, C*) and an H-module map."""
    if not _is_standard(C, H, G.D):
        raise NotStandardForm("D is not literally C⊗H")
    f = C.field
    if act is None:
        act = induced_action(C, H, G)
    psi, Phi = _psi_and_Phi(C, H, act)
    phi = LinearMap(f, left_inverse_on_image(G.theta).matrix.dot(G.pi.matrix).T)
    rep = CheckReport("adjoint isomorphism")
    rep.compare("psi-phi=Phi", f, psi.matrix.dot(phi.matrix), Phi.matrix)
    Ds = dual_algebra(G.D)
    target = convolution_algebra(H.coalg, dual_algebra(C))
    rep.merge(check_multiplicative(psi, Ds, target, unital=True), "psi")
    rep.require("psi-bijective", rank(f, psi.matrix) == psi.domain_dim == psi.codomain_dim)
    BD = dual_action_on_dual(G.D, H, G.act_global).tensor
    M = H.alg.product
    eye_c = f.eye(C.dim)
    for g in range(H.dim):
        # (e_g ⇁ F)(k) = F(k e_g)
        hom_act = contract(f, "tk,cd->kctd", M[:, :, g], eye_c).reshape(H.dim * C.dim, H.dim * C.dim)
        res = compare("psi-module-map", f, psi.matrix.dot(BD[:, g, :]), hom_act.dot(psi.matrix))
        if not res.passed:
            res.witness = dict(res.witness, h=H.labels[g])
            rep.add(res)
            break
    else:
        rep.require("psi-module-map", True)
    return rep

def induced_action(C: Coalgebra, H: HopfAlgebra, G: GlobalizationPMC) -> ActionMap:
    """c⇀h = θ⁻¹π(θ(c)⇀h), the partial action G induces back on C."""
    proj = left_inverse_on_image(G.theta) @ G.pi
    return induce_partial_action(G.D, H, G.act_global, G.theta, proj, C)

def check_duality_agreement(C: Coalgebra, H: HopfAlgebra, act: ActionMap,
                            G: GlobalizationPMC) -> Tuple[CheckReport, DualGlobalization]:
    """Run the module-coalgebra verifier and the dual suite independently; their verdicts must agree."""
    primal = verify_globalization_pmc(C, H, act, G.D, G.act_global, G.theta, G.pi)
    dual = dual_globalization(C, H, act, G)
    if primal.passed != dual.report.passed:
        bad = primal.first_failure() or dual.report.first_failure()
        raise InvariantViolation(
            f"globalization verdict {primal.passed} but dual verdict {dual.report.passed}", witness=bad)
    return primal, dual


# ---------------- comodule coalgebras ----------------

def verify_globalization_pcc(C: Coalgebra, H: HopfAlgebra, co: CoactionMap, D: Coalgebra,
                             co_global: CoactionMap, theta: LinearMap, pi: LinearMap) -> CheckReport:
    f = C.field
    rep = CheckReport("globalization (comodule coalgebra)")
    _check_triple(rep, C, D, theta, pi)
    rep.merge(check_comodule_coalgebra(D, H, co_global), "global")
    rep.merge(check_counit_coaction(D, H, co_global), "global")
    P, T, LG = pi.matrix, theta.matrix, co_global.tensor
    rep.compare("GCC-1", f,
                contract(f, "td,gst,rs->dgr", P, LG, P),
                contract(f, "abd,a,gsb,rs->dgr", D.comul, _counit_of_pi(D, pi), LG, P))
    rep.compare("GCC-2", f,
                contract(f, "tc,gst,rs->cgr", T, LG, P),
                contract(f, "guc,ru->cgr", co.tensor, T))
    DD = D.comul
    def legs(v):
        out = [LG[g].dot(v) for g in range(H.dim)]
        out += [DD[i].dot(v) for i in range(D.dim)]
        out += [DD[:, i, :].dot(v) for i in range(D.dim)]
        return out
    span = span_closure(f, list(T.T), legs, D.dim)
    rep.require("GCC-3", span.dim == D.dim, span=span.dim, dim=D.dim)
    return rep

def dual_basis_coaction_on_tensor(C: Coalgebra, H: HopfAlgebra) -> CoactionMap:
    """λ(c⊗f) = Σ hᵢ ⊗ c ⊗ f∗hᵢ* on C⊗H*."""
    f = C.field
    c, h = C.dim, H.dim
    Ms = dual_hopf(H).alg.product  # Ms[s, x, g]: e*_x ∗ e*_g
    LG = contract(f, "rc,sxg->grscx", f.eye(c), Ms).reshape(h, c * h, c * h)
    return CoactionMap.from_tensor(f, LG)

def standard_globalization_pcc(C: Coalgebra, H: HopfAlgebra, co: CoactionMap) -> GlobalizationPCC:
    """D = C⊗H*, dual-basis coaction, θ(c) = c⊗ε_H, π(c⊗f) = (c⇀f)⊗ε_H."""
    pcc = check_partial_comodule_coalgebra(C, H, co)
    if not pcc.passed:
        bad = pcc.first_failure()
        raise NotPartialComoduleCoalgebra(f"input is not a partial comodule coalgebra: {bad.axiom}", witness=bad)
    if not separates_points(H):
        raise InvariantViolation("finite-dimensional dual failed to separate points")
    f = C.field
    Hs = dual_hopf(H)
    act = coaction_to_action(C, H, co)
    D = tensor_coalgebra(C, Hs.coalg)
    co_global = dual_basis_coaction_on_tensor(C, H)
    one = Hs.alg.unit.matrix
    theta = LinearMap(f, kron_arrays(f.eye(C.dim), one))
    pi = LinearMap(f, kron_arrays(act.matrix, one))
    rep = verify_globalization_pcc(C, H, co, D, co_global, theta, pi)
    rep.merge(rationality_consistency_check(C, H, co_global), "rational")
    if not rep.passed:
        raise InvariantViolation("standard globalization failed its own verification", witness=rep.first_failure())
    log.info("standard comodule globalization: C of dim %d into D of dim %d", C.dim, D.dim)
    return GlobalizationPCC(D, co_global, theta, pi, rep)

def rationality_consistency_check(C: Coalgebra, H: HopfAlgebra, Dcoaction: CoactionMap) -> CheckReport:
    """λ(c⊗f) = Σ hᵢ⊗cᵢ⊗fᵢ  ⟺  c⊗(f∗g) = Σ g(hᵢ) cᵢ⊗fᵢ, on basis (c, f, g)."""
    f = C.field
    c, h = C.dim, H.dim
    if Dcoaction.hopf_dim != h or Dcoaction.coalgebra_dim != c * h:
        raise DimensionMismatch(f"coaction is on ({Dcoaction.hopf_dim}, {Dcoaction.coalgebra_dim}), not on C⊗H* ({h}, {c * h})")
    Ms = dual_hopf(H).alg.product
    LG = Dcoaction.tensor.reshape(h, c, h, c, h)  # [g, r, s, c, x]
    rep = CheckReport("rationality")
    rep.compare("rational-action", f,
                LG.transpose(3, 4, 0, 1, 2),
                contract(f, "rc,sxg->cxgrs", f.eye(c), Ms))
    return rep

def cross_check_pcc_to_pmc(C: Coalgebra, H: HopfAlgebra, co: CoactionMap, G: GlobalizationPCC) -> CheckReport:
    """The comodule globalization, read through H*, is a module-coalgebra globalization."""
    Hs = dual_hopf(H)
    act = coaction_to_action(C, H, co, verify=False)
    act_global = coaction_to_action(G.D, H, G.co_global, verify=False)
    rep = verify_globalization_pmc(C, Hs, act, G.D, act_global, G.theta, G.pi)
    rep.title = "globalization through H*"
    return rep


# ---------------- negative instances and fuzzing ----------------

def _direct_sum_with_point(D: Coalgebra) -> Coalgebra:
    f = D.field
    n = D.dim + 1
    DD = f.zeros((n, n, n))
    DD[: n - 1, : n - 1, : n - 1] = D.comul
    DD[n - 1, n - 1, n - 1] = 1
    eps = np.concatenate([D.counit, np.array([1], dtype=object)])
    return Coalgebra.from_arrays(f, DD.reshape(n * n, n), eps, D.labels + ("t",))

def _pad_map(m: np.ndarray, rows: int, cols: int, fld: FieldSpec) -> np.ndarray:
    out = fld.zeros((m.shape[0] + rows, m.shape[1] + cols))
    out[: m.shape[0], : m.shape[1]] = m
    return out

def spurious_summand_pmc(G: GlobalizationPMC, H: HopfAlgebra) -> GlobalizationPMC:
    """Adjoin a group-like t with t⇀h = ε(h)t, outside θ(C)⇀H."""
    f = G.D.field
    D = _direct_sum_with_point(G.D)
    n, h = G.D.dim, H.dim
    AG = f.zeros((n + 1, n + 1, h))
    AG[:n, :n, :] = G.act_global.tensor
    AG[n, n, :] = H.coalg.counit
    theta = LinearMap(f, _pad_map(G.theta.matrix, 1, 0, f))
    pi = LinearMap(f, _pad_map(G.pi.matrix, 1, 1, f))
    return GlobalizationPMC(D, ActionMap.from_tensor(f, AG), theta, pi, CheckReport("unverified"))

def spurious_summand_pcc(G: GlobalizationPCC, H: HopfAlgebra) -> GlobalizationPCC:
    """Adjoin a group-like t with λ(t) = 1⊗t."""
    f = G.D.field
    D = _direct_sum_with_point(G.D)
    n, h = G.D.dim, H.dim
    LG = f.zeros((h, n + 1, n + 1))
    LG[:, :n, :n] = G.co_global.tensor
    LG[:, n, n] = H.alg.one
    theta = LinearMap(f, _pad_map(G.theta.matrix, 1, 0, f))
    pi = LinearMap(f, _pad_map(G.pi.matrix, 1, 1, f))
    return GlobalizationPCC(D, CoactionMap.from_tensor(f, LG), theta, pi, CheckReport("unverified"))

MUTABLE_PARTS = ("delta", "epsilon", "act_global", "theta", "pi")

def mutate_triple(G: GlobalizationPMC, rng: np.random.Generator, part: Optional[str] = None) -> GlobalizationPMC:
    """Add 1 to one randomly chosen entry of one matrix of the triple."""
    f = G.D.field
    part = part or MUTABLE_PARTS[int(rng.integers(len(MUTABLE_PARTS)))]
    source = {
        "delta": G.D.delta.matrix,
        "epsilon": G.D.epsilon.matrix,
        "act_global": G.act_global.matrix,
        "theta": G.theta.matrix,
        "pi": G.pi.matrix,
    }[part]
    m = source.copy()
    i, j = int(rng.integers(m.shape[0])), int(rng.integers(m.shape[1]))
    m[i, j] = f.add(m[i, j], 1)
    if part == "delta":
        return replace(G, D=Coalgebra(LinearMap(f, m), G.D.epsilon, G.D.labels))
    if part == "epsilon":
        return replace(G, D=Coalgebra(G.D.delta, LinearMap(f, m), G.D.labels))
    if part == "act_global":
        return replace(G, act_global=ActionMap(G.act_global.coalgebra_dim, G.act_global.hopf_dim, LinearMap(f, m)))
    return replace(G, **{part: LinearMap(f, m)})
