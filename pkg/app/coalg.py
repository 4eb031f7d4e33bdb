"""
Coalgebras and algebras given by structure constants.

Tensor views used by every checker:
    comul[i, j, k]  coefficient of e_i⊗e_j in Δ(e_k)
    counit[k]       ε(e_k)
    product[r, i, j] coefficient of e_r in e_i e_j
    one[r]          coefficient of e_r in 1
"""
from __future__ import annotations
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from errors import DimensionMismatch, FieldMismatch
from multilinear import LinearMap, VectorSpace, contract, kron_arrays
from report import CheckReport
from scalars import FieldSpec

log = logging.getLogger(__name__)


def _labels(labels: Optional[Sequence[str]], n: int) -> Tuple[str, ...]:
    if labels is None:
        return tuple(f"e{i}" for i in range(n))
    return tuple(str(l) for l in labels)


@dataclass(frozen=True, eq=False)
class Coalgebra:
    delta: LinearMap
    epsilon: LinearMap
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        n = self.delta.domain_dim
        if self.delta.codomain_dim != n * n:
            raise DimensionMismatch(f"Δ must be {n * n}x{n}, got {self.delta.matrix.shape}")
        if self.epsilon.matrix.shape != (1, n):
            raise DimensionMismatch(f"ε must be 1x{n}, got {self.epsilon.matrix.shape}")
        if self.delta.field != self.epsilon.field:
            raise FieldMismatch("Δ and ε over different fields")
        object.__setattr__(self, "labels", _labels(self.labels, n))
        VectorSpace(n, self.labels)

    @classmethod
    def from_arrays(cls, field: FieldSpec, delta, epsilon, labels=None) -> "Coalgebra":
        return cls(LinearMap(field, delta), LinearMap(field, np.asarray(epsilon, dtype=object).reshape(1, -1)), labels)

    @property
    def field(self) -> FieldSpec:
        return self.delta.field

    @property
    def dim(self) -> int:
        return self.delta.domain_dim

    @property
    def space(self) -> VectorSpace:
        return VectorSpace(self.dim, self.labels)

    @property
    def comul(self) -> np.ndarray:
        n = self.dim
        return self.delta.matrix.reshape(n, n, n)

    @property
    def counit(self) -> np.ndarray:
        return self.epsilon.matrix[0]


@dataclass(frozen=True, eq=False)
class Algebra:
    mul: LinearMap
    unit: LinearMap
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        n = self.mul.codomain_dim
        if self.mul.domain_dim != n * n:
            raise DimensionMismatch(f"m must be {n}x{n * n}, got {self.mul.matrix.shape}")
        if self.unit.matrix.shape != (n, 1):
            raise DimensionMismatch(f"u must be {n}x1, got {self.unit.matrix.shape}")
        if self.mul.field != self.unit.field:
            raise FieldMismatch("m and u over different fields")
        object.__setattr__(self, "labels", _labels(self.labels, n))
        VectorSpace(n, self.labels)

    @classmethod
    def from_arrays(cls, field: FieldSpec, mul, unit, labels=None) -> "Algebra":
        return cls(LinearMap(field, mul), LinearMap(field, np.asarray(unit, dtype=object).reshape(-1, 1)), labels)

    @property
    def field(self) -> FieldSpec:
        return self.mul.field

    @property
    def dim(self) -> int:
        return self.mul.codomain_dim

    @property
    def space(self) -> VectorSpace:
        return VectorSpace(self.dim, self.labels)

    @property
    def product(self) -> np.ndarray:
        n = self.dim
        return self.mul.matrix.reshape(n, n, n)

    @property
    def one(self) -> np.ndarray:
        return self.unit.matrix[:, 0]


# ---------------- axiom checks ----------------

def check_coalgebra(C: Coalgebra) -> CheckReport:
    f, D, E = C.field, C.comul, C.counit
    rep = CheckReport("coalgebra")
    rep.compare("coassociativity", f,
                contract(f, "rck,abr->kabc", D, D),
                contract(f, "ark,bcr->kabc", D, D))
    eye = f.eye(C.dim)
    rep.compare("counit-left", f, contract(f, "a,abk->kb", E, D), eye)
    rep.compare("counit-right", f, contract(f, "b,abk->ka", E, D), eye)
    return rep

def check_algebra(A: Algebra) -> CheckReport:
    f, M, U = A.field, A.product, A.one
    rep = CheckReport("algebra")
    rep.compare("associativity", f,
                contract(f, "sab,rsc->abcr", M, M),
                contract(f, "sbc,ras->abcr", M, M))
    eye = f.eye(A.dim)
    rep.compare("unit-left", f, contract(f, "s,rsa->ar", U, M), eye)
    rep.compare("unit-right", f, contract(f, "s,ras->ar", U, M), eye)
    return rep

def check_comultiplicative(fmap: LinearMap, C: Coalgebra, D: Coalgebra, counit: bool = False) -> CheckReport:
    """Δ_D∘f = (f⊗f)∘Δ_C, and with ``counit`` also ε_D∘f = ε_C."""
    if fmap.matrix.shape != (D.dim, C.dim):
        raise DimensionMismatch(f"map of shape {fmap.matrix.shape} is not {C.dim}->{D.dim}")
    f, F = C.field, fmap.matrix
    rep = CheckReport("comultiplicative")
    rep.compare("comultiplicativity", f,
                contract(f, "rk,abr->kab", F, D.comul),
                contract(f, "ijk,ai,bj->kab", C.comul, F, F))
    if counit:
        rep.compare("counit-preserved", f, contract(f, "r,rk->k", D.counit, F), C.counit)
    return rep

def check_multiplicative(fmap: LinearMap, A: Algebra, B: Algebra, unital: bool = False) -> CheckReport:
    if fmap.matrix.shape != (B.dim, A.dim):
        raise DimensionMismatch(f"map of shape {fmap.matrix.shape} is not {A.dim}->{B.dim}")
    f, F = A.field, fmap.matrix
    rep = CheckReport("multiplicative")
    rep.compare("multiplicativity", f,
                contract(f, "rij,sr->ijs", A.product, F),
                contract(f, "xi,yj,sxy->ijs", F, F, B.product))
    if unital:
        rep.compare("unit-preserved", f, F.dot(A.one), B.one)
    return rep


# ---------------- constructions ----------------

def ground_coalgebra(field: FieldSpec) -> Coalgebra:
    return Coalgebra.from_arrays(field, [[1]], [1], labels=("1",))

def dual_algebra(C: Coalgebra) -> Algebra:
    """C* under convolution: (f∗g)(c) = f(c₁)g(c₂), unit ε."""
    return Algebra(C.delta.T, C.epsilon.T, tuple(f"{l}*" for l in C.labels))

def dual_coalgebra(A: Algebra) -> Coalgebra:
    return Coalgebra(A.mul.T, A.unit.T, tuple(f"{l}*" for l in A.labels))

def tensor_coalgebra(C: Coalgebra, D: Coalgebra) -> Coalgebra:
    """C⊗D with Δ = (I⊗τ⊗I)(Δ_C⊗Δ_D) and ε = ε_C⊗ε_D."""
    if C.field != D.field:
        raise FieldMismatch(f"{C.field} and {D.field} coalgebras")
    f = C.field
    n = C.dim * D.dim
    T = contract(f, "abc,xyd->axbycd", C.comul, D.comul).reshape(n * n, n)
    eps = kron_arrays(C.epsilon.matrix, D.epsilon.matrix)
    labels = tuple(f"{a}⊗{b}" for a in C.labels for b in D.labels)
    log.debug("tensor coalgebra of dims %d and %d", C.dim, D.dim)
    return Coalgebra(LinearMap(f, T), LinearMap(f, eps), labels)
