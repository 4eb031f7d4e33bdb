"""
Module coalgebras and module algebras, global and partial.

Tensor views:
    ActionMap.tensor[r, d, h]      coefficient of e_r in e_d ⇀ e_h   (right action on C)
    DualActionMap.tensor[r, h, a]  coefficient of e*_r in e_h ⇁ e*_a (left action on C*)
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from coalg import Algebra, Coalgebra, check_comultiplicative
from errors import (DimensionMismatch, InvariantViolation, NotAProjection,
                    NotComultiplicative, NotModuleCoalgebra, NotPartialAction,
                    ProjectionConditionFailed)
from hopf import HopfAlgebra
from multilinear import LinearMap, contract
from report import CheckReport, compare
from scalars import FieldSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ActionMap:
    coalgebra_dim: int
    hopf_dim: int
    map: LinearMap

    def __post_init__(self):
        want = (self.coalgebra_dim, self.coalgebra_dim * self.hopf_dim)
        if self.map.matrix.shape != want:
            raise DimensionMismatch(f"action matrix must be {want}, got {self.map.matrix.shape}")

    @classmethod
    def from_tensor(cls, fld: FieldSpec, A) -> "ActionMap":
        A = np.asarray(A, dtype=object)
        c, _, h = A.shape
        return cls(c, h, LinearMap(fld, A.reshape(c, c * h)))

    @property
    def field(self) -> FieldSpec:
        return self.map.field

    @property
    def matrix(self) -> np.ndarray:
        return self.map.matrix

    @property
    def tensor(self) -> np.ndarray:
        c, h = self.coalgebra_dim, self.hopf_dim
        return self.map.matrix.reshape(c, c, h)


@dataclass(frozen=True, eq=False)
class DualActionMap:
    hopf_dim: int
    dual_dim: int
    map: LinearMap

    def __post_init__(self):
        want = (self.dual_dim, self.hopf_dim * self.dual_dim)
        if self.map.matrix.shape != want:
            raise DimensionMismatch(f"dual action matrix must be {want}, got {self.map.matrix.shape}")

    @classmethod
    def from_tensor(cls, fld: FieldSpec, B) -> "DualActionMap":
        B = np.asarray(B, dtype=object)
        c, h, _ = B.shape
        return cls(h, c, LinearMap(fld, B.reshape(c, h * c)))

    @property
    def field(self) -> FieldSpec:
        return self.map.field

    @property
    def matrix(self) -> np.ndarray:
        return self.map.matrix

    @property
    def tensor(self) -> np.ndarray:
        c, h = self.dual_dim, self.hopf_dim
        return self.map.matrix.reshape(c, h, c)


def _fit(C_dim: int, H: HopfAlgebra, act: ActionMap) -> None:
    if act.coalgebra_dim != C_dim or act.hopf_dim != H.dim:
        raise DimensionMismatch(
            f"action is on ({act.coalgebra_dim}, {act.hopf_dim}), structures are ({C_dim}, {H.dim})")

def _fit_dual(A: Algebra, H: HopfAlgebra, act: DualActionMap) -> None:
    if act.dual_dim != A.dim or act.hopf_dim != H.dim:
        raise DimensionMismatch(
            f"dual action is on ({act.hopf_dim}, {act.dual_dim}), structures are ({H.dim}, {A.dim})")


# ---------------- module coalgebras ----------------

def _unit_law(rep: CheckReport, axiom: str, f: FieldSpec, A, H: HopfAlgebra) -> None:
    rep.compare(axiom, f, contract(f, "rdg,g->dr", A, H.alg.one), f.eye(A.shape[0]))

def _comultiplicative_law(rep, axiom, f, A, DC, DH) -> None:
    rep.compare(axiom, f,
                contract(f, "rdg,ijr->dgij", A, DC),
                contract(f, "abd,xyg,iax,jby->dgij", DC, DH, A, A))

def check_module_coalgebra(D: Coalgebra, H: HopfAlgebra, act: ActionMap) -> CheckReport:
    _fit(D.dim, H, act)
    f, A = D.field, act.tensor
    rep = CheckReport("module coalgebra")
    _unit_law(rep, "MC-1", f, A, H)
    _comultiplicative_law(rep, "MC-2", f, A, D.comul, H.coalg.comul)
    rep.compare("MC-3", f,
                contract(f, "sdh,rsk->dhkr", A, A),
                contract(f, "thk,rdt->dhkr", H.alg.product, A))
    return rep

def check_counit_compat(D: Coalgebra, H: HopfAlgebra, act: ActionMap) -> CheckReport:
    """ε_D(d⇀h) = ε_D(d)ε_H(h)."""
    _fit(D.dim, H, act)
    f = D.field
    rep = CheckReport("counit compatibility")
    rep.compare("counit-compat", f,
                contract(f, "r,rdg->dg", D.counit, act.tensor),
                np.multiply.outer(D.counit, H.coalg.counit))
    return rep

def check_partial_module_coalgebra(C: Coalgebra, H: HopfAlgebra, act: ActionMap,
                                   symmetric: bool = False) -> CheckReport:
    _fit(C.dim, H, act)
    f, A, DC, DH, M = C.field, act.tensor, C.comul, H.coalg.comul, H.alg.product
    rep = CheckReport("partial module coalgebra")
    _unit_law(rep, "PMC-1", f, A, H)
    _comultiplicative_law(rep, "PMC-2", f, A, DC, DH)
    lhs = contract(f, "sch,rsk->chkr", A, A)
    # εA[a, x] = ε_C(e_a ⇀ e_x)
    eA = contract(f, "s,sax->ax", C.counit, A)
    rep.compare("PMC-3", f, lhs, contract(f, "abc,xyh,ax,tyk,rbt->chkr", DC, DH, eA, M, A))
    if symmetric:
        rep.compare("PMC-4", f, lhs, contract(f, "abc,xyh,txk,rat,by->chkr", DC, DH, M, A, eA))
    return rep

def check_pmc_noncounital(C_space: int, delta: LinearMap, H: HopfAlgebra, act: ActionMap,
                          symmetric: bool = False, counit=None) -> CheckReport:
    """
    PMC′ axioms; only Δ is used. Given ``counit``, each axiom is also read
    with ε on its free leg, which lands on the PMC-3 / PMC-4 tensors and
    reports the same witness index.
    """
    n = int(getattr(C_space, "dim", C_space))
    _fit(n, H, act)
    if delta.matrix.shape != (n * n, n):
        raise DimensionMismatch(f"Δ must be {n * n}x{n}, got {delta.matrix.shape}")
    f, A, DH, M = delta.field, act.tensor, H.coalg.comul, H.alg.product
    DC = delta.matrix.reshape(n, n, n)
    eps = None if counit is None else np.asarray(counit, dtype=object).reshape(-1)
    if eps is not None and eps.shape != (n,):
        raise DimensionMismatch(f"counit of length {eps.shape[0]} on dimension {n}")
    rep = CheckReport("partial module coalgebra (non-counital)")
    rep.compare("coassociativity", f,
                contract(f, "rck,abr->kabc", DC, DC),
                contract(f, "ark,bcr->kabc", DC, DC))
    _unit_law(rep, "PMC'-1", f, A, H)
    sides = {"PMC'-2": ((contract(f, "sch,its,jtk->chkij", A, DC, A),
                         contract(f, "abc,xyh,iax,tyk,jbt->chkij", DC, DH, A, M, A)), "chkij,i->chkj")}
    if symmetric:
        sides["PMC'-3"] = ((contract(f, "sch,tjs,itk->chkij", A, DC, A),
                            contract(f, "abc,xyh,txk,iat,jby->chkij", DC, DH, M, A, A)), "chkij,j->chki")
    for axiom, ((lhs, rhs), read) in sides.items():
        rep.compare(axiom, f, lhs, rhs)
        if eps is not None:
            rep.compare(f"{axiom}/counit", f, contract(f, read, lhs, eps), contract(f, read, rhs, eps))
    return rep

def is_global_action(C: Coalgebra, H: HopfAlgebra, act: ActionMap) -> Tuple[bool, Optional[Dict[str, Any]]]:
    """A partial action is global iff ε_C(c⇀h) = ε_C(c)ε_H(h); cross-checked against MC."""
    pmc = check_partial_module_coalgebra(C, H, act)
    if not pmc.passed:
        bad = pmc.first_failure()
        raise NotPartialAction(f"not a partial action: {bad.axiom} fails", witness=bad)
    crit = check_counit_compat(C, H, act).results[0]
    direct = check_module_coalgebra(C, H, act).passed
    if crit.passed != direct:
        raise InvariantViolation(f"counit criterion says {crit.passed}, MC axioms say {direct}")
    return crit.passed, crit.witness


# ---------------- induced partial actions ----------------

def induced_coalgebra(D: Coalgebra, incl: LinearMap, proj: LinearMap) -> Coalgebra:
    """Δ_C = (proj⊗proj)Δ_D incl, ε_C = ε_D incl."""
    f = D.field
    delta = contract(f, "ijr,ai,bj,rc->abc", D.comul, proj.matrix, proj.matrix, incl.matrix)
    c = proj.codomain_dim
    eps = D.epsilon.matrix.dot(incl.matrix)
    return Coalgebra(LinearMap(f, delta.reshape(c * c, c)), LinearMap(f, eps))

def projection_condition(D: Coalgebra, act_global: ActionMap, incl: LinearMap, proj: LinearMap) -> Tuple[np.ndarray, np.ndarray]:
    """Both sides of π[π(d)⇀h] = π[ε(π(d₁))d₂⇀h], read in C through proj; indexed (d, h, r)."""
    f = D.field
    P, I, AG = proj.matrix, incl.matrix, act_global.tensor
    Pi = I.dot(P)
    ePi = D.counit.dot(Pi)
    lhs = contract(f, "rs,sth,td->dhr", P, AG, Pi)
    rhs = contract(f, "abd,a,sbh,rs->dhr", D.comul, ePi, AG, P)
    return lhs, rhs

def induce_partial_action(D: Coalgebra, H: HopfAlgebra, act_global: ActionMap, incl: LinearMap,
                          proj: LinearMap, C: Optional[Coalgebra] = None) -> ActionMap:
    """c ⇀ h = proj(incl(c) ⇀ h), after verifying every hypothesis."""
    _fit(D.dim, H, act_global)
    f = D.field
    c = proj.codomain_dim
    if incl.matrix.shape != (D.dim, c) or proj.matrix.shape != (c, D.dim):
        raise DimensionMismatch(f"incl {incl.matrix.shape} / proj {proj.matrix.shape} do not fit D of dim {D.dim}")
    mc = check_module_coalgebra(D, H, act_global)
    if not mc.passed:
        raise NotModuleCoalgebra("global action fails the module coalgebra axioms", witness=mc.first_failure())
    res = compare("projection", f, proj.matrix.dot(incl.matrix), f.eye(c))
    if not res.passed:
        raise NotAProjection("proj∘incl is not the identity", witness=res)
    if C is None:
        C = induced_coalgebra(D, incl, proj)
    comult = check_comultiplicative(proj, D, C)
    if not comult.passed:
        raise NotComultiplicative("proj is not comultiplicative", witness=comult.first_failure())
    lhs, rhs = projection_condition(D, act_global, incl, proj)
    cond = compare("projection-condition", f, lhs, rhs)
    if not cond.passed:
        raise ProjectionConditionFailed("π[π(d)⇀h] ≠ π[ε(π(d₁))d₂⇀h]", witness=cond)
    A = contract(f, "rs,sth,tc->rch", proj.matrix, act_global.tensor, incl.matrix)
    out = ActionMap.from_tensor(f, A)
    check = check_partial_module_coalgebra(C, H, out)
    if not check.passed:
        raise InvariantViolation("induced action is not a partial action", witness=check.first_failure())
    log.info("induced a partial action on a %d-dim coalgebra from a %d-dim one", c, D.dim)
    return out


# ---------------- module algebras and the C ↔ C* transfer ----------------

def dual_action_on_dual(C: Coalgebra, H: HopfAlgebra, act: ActionMap) -> DualActionMap:
    """(h ⇁ α)(c) = α(c ⇀ h)."""
    _fit(C.dim, H, act)
    return DualActionMap.from_tensor(C.field, act.tensor.transpose(1, 2, 0))

def action_from_dual_action(C: Coalgebra, H: HopfAlgebra, dact: DualActionMap) -> ActionMap:
    """Converse of dual_action_on_dual, using C ≅ C** in finite dimension."""
    if dact.dual_dim != C.dim or dact.hopf_dim != H.dim:
        raise DimensionMismatch("dual action does not fit C and H")
    return ActionMap.from_tensor(C.field, dact.tensor.transpose(2, 0, 1))

def check_partial_module_algebra(A: Algebra, H: HopfAlgebra, act: DualActionMap,
                                 symmetric: bool = False) -> CheckReport:
    _fit_dual(A, H, act)
    f, B, MA, UA = A.field, act.tensor, A.product, A.one
    DH, MH = H.coalg.comul, H.alg.product
    rep = CheckReport("partial module algebra")
    rep.compare("PMA-1", f, contract(f, "g,rga->ar", H.alg.one, B), f.eye(A.dim))
    rep.compare("PMA-2", f,
                contract(f, "sab,rhs->habr", MA, B),
                contract(f, "xyh,sxa,tyb,rst->habr", DH, B, B, MA))
    # h ⇀ 1_A
    B1 = contract(f, "sxu,u->sx", B, UA)
    lhs = contract(f, "ska,rhs->hkar", B, B)
    rep.compare("PMA-3", f, lhs, contract(f, "xyh,sx,tyk,vta,rsv->hkar", DH, B1, MH, B, MA))
    if symmetric:
        rep.compare("PMA-4", f, lhs, contract(f, "xyh,txk,vta,sy,rvs->hkar", DH, MH, B, B1, MA))
    return rep

def check_module_algebra(A: Algebra, H: HopfAlgebra, act: DualActionMap) -> CheckReport:
    _fit_dual(A, H, act)
    f, B, MA = A.field, act.tensor, A.product
    rep = CheckReport("module algebra")
    rep.compare("MA-1", f, contract(f, "g,rga->ar", H.alg.one, B), f.eye(A.dim))
    rep.compare("MA-2", f,
                contract(f, "sab,rhs->habr", MA, B),
                contract(f, "xyh,sxa,tyb,rst->habr", H.coalg.comul, B, B, MA))
    rep.compare("MA-3", f,
                contract(f, "ska,rhs->hkar", B, B),
                contract(f, "thk,rta->hkar", H.alg.product, B))
    rep.compare("MA-4", f,
                contract(f, "rhu,u->hr", B, A.one),
                np.multiply.outer(H.coalg.counit, A.one))
    return rep

def check_compatibility_pairing(actC: ActionMap, actCstar: DualActionMap) -> CheckReport:
    """(h ⇁ α)(c) = α(c ⇀ h) on basis triples, indexed (c, h, α)."""
    if actC.coalgebra_dim != actCstar.dual_dim or actC.hopf_dim != actCstar.hopf_dim:
        raise DimensionMismatch("action and dual action live on different spaces")
    f = actC.field
    rep = CheckReport("compatibility pairing")
    rep.compare("pairing", f, actCstar.tensor, actC.tensor.transpose(1, 2, 0))
    return rep
