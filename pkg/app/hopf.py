from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from coalg import (Algebra, Coalgebra, check_algebra, check_coalgebra,
                   dual_algebra, dual_coalgebra)
from errors import (DimensionMismatch, FieldMismatch, InvariantViolation,
                    NoAntipode, NoSolution, NotABialgebra)
from multilinear import LinearMap, contract, rank, solve
from report import CheckReport
from scalars import FieldSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Bialgebra:
    alg: Algebra
    coalg: Coalgebra

    def __post_init__(self):
        if self.alg.field != self.coalg.field:
            raise FieldMismatch("algebra and coalgebra over different fields")
        if self.alg.dim != self.coalg.dim:
            raise DimensionMismatch(f"algebra dim {self.alg.dim} vs coalgebra dim {self.coalg.dim}")

    @property
    def field(self) -> FieldSpec:
        return self.alg.field

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.coalg.labels


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    bialg: Bialgebra
    antipode: LinearMap

    def __post_init__(self):
        n = self.bialg.dim
        if self.antipode.matrix.shape != (n, n):
            raise DimensionMismatch(f"S must be {n}x{n}, got {self.antipode.matrix.shape}")

    @property
    def alg(self) -> Algebra:
        return self.bialg.alg

    @property
    def coalg(self) -> Coalgebra:
        return self.bialg.coalg

    @property
    def field(self) -> FieldSpec:
        return self.bialg.field

    @property
    def dim(self) -> int:
        return self.bialg.dim

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.bialg.labels

    @property
    def S(self) -> np.ndarray:
        return self.antipode.matrix


def _parts(B):
    b = B.bialg if isinstance(B, HopfAlgebra) else B
    return b.field, b.alg.product, b.alg.one, b.coalg.comul, b.coalg.counit


def check_bialgebra(B: Bialgebra) -> CheckReport:
    b = B.bialg if isinstance(B, HopfAlgebra) else B
    f, M, U, DH, EH = _parts(b)
    rep = CheckReport("bialgebra")
    rep.merge(check_algebra(b.alg), "algebra")
    rep.merge(check_coalgebra(b.coalg), "coalgebra")
    rep.compare("delta-multiplicative", f,
                contract(f, "rab,ijr->abij", M, DH),
                contract(f, "xya,zwb,ixz,jyw->abij", DH, DH, M, M))
    rep.compare("delta-unit", f, contract(f, "r,ijr->ij", U, DH), np.multiply.outer(U, U))
    rep.compare("counit-multiplicative", f, contract(f, "rab,r->ab", M, EH), np.multiply.outer(EH, EH))
    rep.compare("counit-unit", f, contract(f, "r,r->", EH, U), np.asarray(1, dtype=object))
    return rep

def convolution(fmap: LinearMap, gmap: LinearMap, C: Coalgebra, A: Algebra) -> LinearMap:
    """m∘(f⊗g)∘Δ."""
    for m in (fmap, gmap):
        if m.matrix.shape != (A.dim, C.dim):
            raise DimensionMismatch(f"map of shape {m.matrix.shape} is not {C.dim}->{A.dim}")
    f = C.field
    out = contract(f, "ijk,xi,yj,rxy->rk", C.comul, fmap.matrix, gmap.matrix, A.product)
    return LinearMap(f, out)

def convolution_algebra(X: Coalgebra, A: Algebra) -> Algebra:
    """Hom(X, A) under convolution; coordinate (x, a) is the map e_x ↦ e_a, index x*dim(A)+a."""
    f = X.field
    n = X.dim * A.dim
    prod = contract(f, "pqx,ast->xapsqt", X.comul, A.product).reshape(n, n * n)
    unit = np.multiply.outer(X.counit, A.one).reshape(n, 1)
    labels = tuple(f"{x}->{a}" for x in X.labels for a in A.labels)
    return Algebra(LinearMap(f, prod), LinearMap(f, unit), labels)

def compute_antipode(B: Bialgebra) -> HopfAlgebra:
    """Solve S(h₁)h₂ = ε(h)1 = h₁S(h₂) for the n² entries of S."""
    rep = check_bialgebra(B)
    if not rep.passed:
        bad = rep.first_failure()
        raise NotABialgebra(f"not a bialgebra: {bad.axiom} fails", witness=bad)
    f, M, U, DH, EH = _parts(B)
    n = B.dim
    left = contract(f, "abk,rxb->rkxa", DH, M).reshape(n * n, n * n)
    right = contract(f, "abk,rax->rkxb", DH, M).reshape(n * n, n * n)
    target = np.multiply.outer(U, EH).reshape(n * n)
    system = LinearMap(f, np.vstack([left, right]))
    try:
        sol = solve(system, np.concatenate([target, target]))
    except NoSolution:
        raise NoAntipode("identity map has no convolution inverse")
    if sol.nullspace:
        raise InvariantViolation("convolution inverse of the identity is not unique")
    log.info("antipode solved on a %d-dim bialgebra", n)
    return HopfAlgebra(B, LinearMap(f, sol.particular.reshape(n, n)))

def check_antipode_properties(H: HopfAlgebra) -> CheckReport:
    f, M, U, DH, EH = _parts(H)
    S = H.S
    rep = CheckReport("antipode")
    ident = LinearMap(f, f.eye(H.dim))
    counit_unit = np.multiply.outer(U, EH)
    rep.compare("convolution-left", f, convolution(H.antipode, ident, H.coalg, H.alg).matrix, counit_unit)
    rep.compare("convolution-right", f, convolution(ident, H.antipode, H.coalg, H.alg).matrix, counit_unit)
    rep.compare("anti-multiplicative", f,
                contract(f, "sab,rs->abr", M, S),
                contract(f, "xb,ya,rxy->abr", S, S, M))
    rep.compare("unit-fixed", f, S.dot(U), U)
    rep.compare("anti-comultiplicative", f,
                contract(f, "rk,ijr->kij", S, DH),
                contract(f, "abk,ib,ja->kij", DH, S, S))
    rep.compare("counit-fixed", f, EH.dot(S), EH)
    return rep

def check_hopf(H: HopfAlgebra) -> CheckReport:
    rep = CheckReport("hopf")
    rep.merge(check_bialgebra(H.bialg), "bialgebra")
    rep.merge(check_antipode_properties(H), "antipode")
    return rep

def verify_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """Return ``H`` once its bialgebra axioms and antipode are confirmed, else raise."""
    rep = check_bialgebra(H.bialg)
    if not rep.passed:
        bad = rep.first_failure()
        raise NotABialgebra(f"not a bialgebra: {bad.axiom} fails", witness=bad)
    rep = check_antipode_properties(H)
    if not rep.passed:
        bad = rep.first_failure()
        raise NoAntipode(f"supplied antipode fails {bad.axiom}", witness=bad)
    return H

def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """H* with convolution product, coproduct dual to m, counit evaluation at 1, antipode Sᵀ."""
    alg = dual_algebra(H.coalg)
    coalg = dual_coalgebra(H.alg)
    return HopfAlgebra(Bialgebra(alg, coalg), H.antipode.T)

def evaluation_pairing(H: HopfAlgebra) -> np.ndarray:
    """⟨e*_i, e_j⟩ in dual bases."""
    return H.field.eye(H.dim)

def separates_points(H: HopfAlgebra) -> bool:
    return rank(H.field, evaluation_pairing(H)) == H.dim
