"""
Comodule coalgebras, global and partial, and their passage to actions of
the dual Hopf algebra.

Tensor views:
    CoactionMap.tensor[g, r, c]  coefficient of e_g ⊗ e_r in λ(e_c)
    NablaMap.matrix[g, c]        coefficient of e_g in ∇(e_c)
H is finite-dimensional throughout, so its finite dual is dual_hopf(H).
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from coalg import Coalgebra, check_comultiplicative, dual_algebra
from errors import (CoactionProjectionConditionFailed, ConditionsViolated,
                    DimensionMismatch, InvariantViolation, NotAProjection,
                    NotComodule, NotComultiplicative, NotPartialCoaction)
from hopf import HopfAlgebra, dual_hopf, separates_points
from multilinear import LinearMap, contract
from pact import (ActionMap, DualActionMap, check_compatibility_pairing, check_partial_module_algebra,
                  check_partial_module_coalgebra, induced_coalgebra)
from report import CheckReport, compare
from scalars import FieldSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CoactionMap:
    hopf_dim: int
    coalgebra_dim: int
    map: LinearMap

    def __post_init__(self):
        want = (self.hopf_dim * self.coalgebra_dim, self.coalgebra_dim)
        if self.map.matrix.shape != want:
            raise DimensionMismatch(f"coaction matrix must be {want}, got {self.map.matrix.shape}")

    @classmethod
    def from_tensor(cls, fld: FieldSpec, L) -> "CoactionMap":
        L = np.asarray(L, dtype=object)
        h, c, _ = L.shape
        return cls(h, c, LinearMap(fld, L.reshape(h * c, c)))

    @property
    def field(self) -> FieldSpec:
        return self.map.field

    @property
    def matrix(self) -> np.ndarray:
        return self.map.matrix

    @property
    def tensor(self) -> np.ndarray:
        h, c = self.hopf_dim, self.coalgebra_dim
        return self.map.matrix.reshape(h, c, c)


@dataclass(frozen=True, eq=False)
class NablaMap:
    map: LinearMap

    @property
    def matrix(self) -> np.ndarray:
        return self.map.matrix


def _fit(C_dim: int, H: HopfAlgebra, co: CoactionMap) -> None:
    if co.coalgebra_dim != C_dim or co.hopf_dim != H.dim:
        raise DimensionMismatch(
            f"coaction is on ({co.hopf_dim}, {co.coalgebra_dim}), structures are ({H.dim}, {C_dim})")

def _require_dual(H: HopfAlgebra) -> HopfAlgebra:
    # finite dual = full dual; separation of points is what licenses the passage
    if not separates_points(H):
        raise InvariantViolation("the dual of a finite-dimensional Hopf algebra must separate points")
    return dual_hopf(H)


# ---------------- comodule coalgebras ----------------

def _counit_law(rep, axiom, f, L, H: HopfAlgebra) -> None:
    rep.compare(axiom, f, contract(f, "g,grd->dr", H.coalg.counit, L), f.eye(L.shape[1]))

def _comultiplicative_law(rep, axiom, f, L, DD, M) -> None:
    rep.compare(axiom, f,
                contract(f, "grd,ijr->dgij", L, DD),
                contract(f, "abd,xia,yjb,gxy->dgij", DD, L, L, M))

def check_comodule_coalgebra(D: Coalgebra, H: HopfAlgebra, co: CoactionMap) -> CheckReport:
    _fit(D.dim, H, co)
    f, L = D.field, co.tensor
    rep = CheckReport("comodule coalgebra")
    _counit_law(rep, "CC-1", f, L, H)
    _comultiplicative_law(rep, "CC-2", f, L, D.comul, H.alg.product)
    rep.compare("CC-3", f,
                contract(f, "gsd,krs->dgkr", L, L),
                contract(f, "trd,gkt->dgkr", L, H.coalg.comul))
    return rep

def check_counit_coaction(D: Coalgebra, H: HopfAlgebra, co: CoactionMap) -> CheckReport:
    """(I⊗ε_D)λ(d) = ε_D(d)1_H."""
    _fit(D.dim, H, co)
    f = D.field
    rep = CheckReport("counit coaction")
    rep.compare("counit-coaction", f,
                contract(f, "grd,r->dg", co.tensor, D.counit),
                np.multiply.outer(D.counit, H.alg.one))
    return rep

def nabla(co: CoactionMap, C: Coalgebra) -> NablaMap:
    """∇ = (I⊗ε_C)λ′."""
    if co.coalgebra_dim != C.dim:
        raise DimensionMismatch("coaction and coalgebra dimensions differ")
    f = C.field
    return NablaMap(LinearMap(f, contract(f, "grc,r->gc", co.tensor, C.counit)))

def check_partial_comodule_coalgebra(C: Coalgebra, H: HopfAlgebra, co: CoactionMap,
                                     symmetric: bool = False) -> CheckReport:
    _fit(C.dim, H, co)
    f, L, DC, DH, M = C.field, co.tensor, C.comul, H.coalg.comul, H.alg.product
    N = nabla(co, C).matrix
    rep = CheckReport("partial comodule coalgebra")
    _counit_law(rep, "PCC-1", f, L, H)
    _comultiplicative_law(rep, "PCC-2", f, L, DC, M)
    lhs = contract(f, "gsc,krs->cgkr", L, L)
    rep.compare("PCC-3", f, lhs, contract(f, "abc,xa,trb,ykt,gxy->cgkr", DC, N, L, DH, M))
    if symmetric:
        rep.compare("PCC-4", f, lhs, contract(f, "abc,tra,xkt,yb,gxy->cgkr", DC, L, DH, N, M))
    return rep

def check_nabla_identities(C: Coalgebra, H: HopfAlgebra, co: CoactionMap) -> CheckReport:
    _fit(C.dim, H, co)
    f, L, DC, M = C.field, co.tensor, C.comul, H.alg.product
    N = nabla(co, C).matrix
    lam = L.transpose(2, 0, 1)
    rep = CheckReport("nabla identities")
    rep.compare("nabla-left", f, lam, contract(f, "abc,xa,yrb,gxy->cgr", DC, N, L, M))
    rep.compare("nabla-right", f, lam, contract(f, "abc,xra,yb,gxy->cgr", DC, L, N, M))
    rep.compare("nabla-idempotent", f, contract(f, "abc,xa,yb,gxy->cg", DC, N, N, M), N.T)
    return rep

def is_global_coaction(C: Coalgebra, H: HopfAlgebra, co: CoactionMap) -> Tuple[bool, Optional[Dict[str, Any]]]:
    """Global iff ∇(c) = ε_C(c)1_H; cross-checked against the CC axioms."""
    pcc = check_partial_comodule_coalgebra(C, H, co)
    if not pcc.passed:
        bad = pcc.first_failure()
        raise NotPartialCoaction(f"not a partial coaction: {bad.axiom} fails", witness=bad)
    f = C.field
    crit = compare("nabla-global", f, nabla(co, C).matrix.T, np.multiply.outer(C.counit, H.alg.one))
    direct = check_comodule_coalgebra(C, H, co).passed
    if crit.passed != direct:
        raise InvariantViolation(f"∇ criterion says {crit.passed}, CC axioms say {direct}")
    return crit.passed, crit.witness

def idempotent_coaction_on_ground_field(H: HopfAlgebra, h) -> CoactionMap:
    """λ′(1) = h⊗1, valid iff ε(h)=1 and h⊗h = (h⊗1)Δ(h)."""
    f = H.field
    v = f.reduce(np.asarray(h, dtype=object).reshape(-1))
    if v.shape != (H.dim,):
        raise DimensionMismatch(f"vector of length {v.shape[0]} in a {H.dim}-dim Hopf algebra")
    eps = f.reduce(H.coalg.counit.dot(v))[()]
    if eps != 1:
        raise ConditionsViolated("ε(h) must be 1",
                                 witness={"condition": "counit", "lhs": f.format(eps), "rhs": "1"})
    res = compare("idempotent", f,
                  np.multiply.outer(v, v),
                  contract(f, "b,x,ajb,ixa->ij", v, v, H.coalg.comul, H.alg.product))
    if not res.passed:
        raise ConditionsViolated("h⊗h ≠ (h⊗1)Δ(h)", witness=dict(res.witness, condition="idempotent"))
    return CoactionMap(H.dim, 1, LinearMap(f, v.reshape(-1, 1)))


# ---------------- passage to the dual Hopf algebra ----------------

def coaction_to_action(C: Coalgebra, H: HopfAlgebra, co: CoactionMap, verify: bool = True) -> ActionMap:
    """c ⇀ f = f(c^{-1}) c^{-0}, an action of dual_hopf(H)."""
    _fit(C.dim, H, co)
    Hs = _require_dual(H)
    act = ActionMap.from_tensor(C.field, co.tensor.transpose(1, 2, 0))
    if verify and check_partial_comodule_coalgebra(C, H, co).passed:
        rep = check_partial_module_coalgebra(C, Hs, act)
        if not rep.passed:
            raise InvariantViolation("partial coaction did not give a partial action", witness=rep.first_failure())
    return act

def coaction_to_dual_action(C: Coalgebra, H: HopfAlgebra, co: CoactionMap, verify: bool = True) -> DualActionMap:
    """(f ⇁ α)(c) = f(c^{-1}) α(c^{-0}) on C*."""
    _fit(C.dim, H, co)
    Hs = _require_dual(H)
    dact = DualActionMap.from_tensor(C.field, co.tensor.transpose(2, 0, 1))
    if verify and check_partial_comodule_coalgebra(C, H, co).passed:
        rep = check_partial_module_algebra(dual_algebra(C), Hs, dact)
        if not rep.passed:
            raise InvariantViolation("partial coaction did not give a partial module algebra",
                                     witness=rep.first_failure())
    return dact

def action_to_coaction(C: Coalgebra, Hstar_action: ActionMap, H: HopfAlgebra) -> CoactionMap:
    """λ′(c) = Σ hᵢ ⊗ c ⇀ hᵢ* over a dual basis."""
    if Hstar_action.coalgebra_dim != C.dim or Hstar_action.hopf_dim != H.dim:
        raise DimensionMismatch("action of H* does not fit C and H")
    co = CoactionMap.from_tensor(C.field, Hstar_action.tensor.transpose(2, 0, 1))
    back = coaction_to_action(C, H, co, verify=False)
    if not np.all(back.matrix == Hstar_action.matrix):
        raise InvariantViolation("dual-basis reconstruction does not contract back to the action")
    return co

def dual_coaction_on_dual(C: Coalgebra, H: HopfAlgebra, dact: DualActionMap) -> LinearMap:
    """ρ′: C* → C*⊗H, ρ′(α) = Σ (hᵢ* ⇁ α) ⊗ hᵢ; index (j, g) ↦ j*dim(H) + g."""
    c, h = C.dim, H.dim
    R = dact.tensor  # R[j, g, a]
    return LinearMap(C.field, R.reshape(c * h, c))

def check_translations(C: Coalgebra, H: HopfAlgebra, co: CoactionMap, act: ActionMap,
                       dact: DualActionMap, rho: LinearMap) -> CheckReport:
    """
    Evaluate every passage on basis vectors and dual-basis functionals,
    one map application at a time, and compare each against λ′.
    All four tensors are indexed (c, f, α) for c = e_d, f = h*_g, α = e*_a.
    """
    f = C.field
    c, h = C.dim, H.dim
    E, F = f.eye(c), f.eye(h)

    def tensor(rows) -> np.ndarray:
        return f.reduce(np.array(rows, dtype=object).reshape(c, h, c))

    images = [co.map.apply(E[d]).reshape(h, c) for d in range(c)]
    # f(c^{-1}) α(c^{-0})
    via_co = tensor([[F[g].dot(images[d]) for g in range(h)] for d in range(c)])
    # α(c ⇀ f)
    via_act = tensor([[act.map.apply(np.multiply.outer(E[d], F[g]).reshape(-1)) for g in range(h)]
                      for d in range(c)])
    # (f ⇁ α)(c)
    via_dact = tensor([[[dact.map.apply(np.multiply.outer(F[g], E[a]).reshape(-1))[d] for a in range(c)]
                        for g in range(h)] for d in range(c)])
    # α^{+0}(c) f(α^{+1})
    rho_images = [rho.apply(E[a]).reshape(c, h) for a in range(c)]
    via_rho = tensor([[[rho_images[a][d, g] for a in range(c)] for g in range(h)] for d in range(c)])
    rep = CheckReport("translations")
    rep.compare("coaction~action", f, via_act, via_co)
    rep.compare("action~action*", f, via_dact, via_co)
    rep.compare("coaction~coaction*", f, via_rho, via_co)
    rep.compare("action*~coaction*", f, via_dact, via_rho)
    return rep

def check_four_way_equivalence(C: Coalgebra, H: HopfAlgebra, co: CoactionMap) -> CheckReport:
    _fit(C.dim, H, co)
    f = C.field
    Hs = _require_dual(H)
    act = coaction_to_action(C, H, co, verify=False)
    dact = coaction_to_dual_action(C, H, co, verify=False)
    rho = dual_coaction_on_dual(C, H, dact)
    rep = CheckReport("four-way equivalence")
    rep.merge(check_partial_comodule_coalgebra(C, H, co), "coaction on C")
    rep.merge(check_partial_module_coalgebra(C, Hs, act), "action on C")
    rep.merge(check_partial_module_algebra(dual_algebra(C), Hs, dact), "action on C*")
    rep.merge(check_translations(C, H, co, act, dact, rho))
    rep.merge(check_compatibility_pairing(act, dact))
    rep.compare("round-trip", f, action_to_coaction(C, act, H).matrix, co.matrix)
    return rep


# ---------------- induced partial coactions ----------------

def coaction_projection_condition(D: Coalgebra, co_global: CoactionMap, incl: LinearMap,
                                  proj: LinearMap) -> Tuple[np.ndarray, np.ndarray]:
    """π(d)^{-1}⊗π(π(d)^{-0}) vs d₂^{-1}⊗ε(π(d₁))π(d₂^{-0}), read in C; indexed (d, g, r)."""
    f = D.field
    P, LG = proj.matrix, co_global.tensor
    Pi = incl.matrix.dot(P)
    ePi = D.counit.dot(Pi)
    lhs = contract(f, "td,gst,rs->dgr", Pi, LG, P)
    rhs = contract(f, "abd,a,gsb,rs->dgr", D.comul, ePi, LG, P)
    return lhs, rhs

def induce_partial_coaction(D: Coalgebra, H: HopfAlgebra, co_global: CoactionMap, incl: LinearMap,
                            proj: LinearMap, C: Optional[Coalgebra] = None) -> CoactionMap:
    """λ′ = (I⊗proj)∘λ∘incl, after verifying every hypothesis."""
    _fit(D.dim, H, co_global)
    f = D.field
    c = proj.codomain_dim
    if incl.matrix.shape != (D.dim, c) or proj.matrix.shape != (c, D.dim):
        raise DimensionMismatch(f"incl {incl.matrix.shape} / proj {proj.matrix.shape} do not fit D of dim {D.dim}")
    cc = check_comodule_coalgebra(D, H, co_global)
    if not cc.passed:
        raise NotComodule("global coaction fails the comodule coalgebra axioms", witness=cc.first_failure())
    res = compare("projection", f, proj.matrix.dot(incl.matrix), f.eye(c))
    if not res.passed:
        raise NotAProjection("proj∘incl is not the identity", witness=res)
    if C is None:
        C = induced_coalgebra(D, incl, proj)
    comult = check_comultiplicative(proj, D, C)
    if not comult.passed:
        raise NotComultiplicative("proj is not comultiplicative", witness=comult.first_failure())
    lhs, rhs = coaction_projection_condition(D, co_global, incl, proj)
    cond = compare("projection-condition", f, lhs, rhs)
    if not cond.passed:
        raise CoactionProjectionConditionFailed("coaction projection condition fails", witness=cond)
    L = contract(f, "rs,gst,tc->grc", proj.matrix, co_global.tensor, incl.matrix)
    out = CoactionMap.from_tensor(f, L)
    check = check_partial_comodule_coalgebra(C, H, out)
    if not check.passed:
        raise InvariantViolation("induced coaction is not a partial coaction", witness=check.first_failure())
    log.info("induced a partial coaction on a %d-dim coalgebra from a %d-dim one", c, D.dim)
    return out
