"""
Ready-made instances: finite groups and their group algebras, the partial
(co)actions of a group algebra on the ground field, regular and tensor
module coalgebras, adjoint / trivial / dual-basis coactions.

Constructors never enforce the axioms (except the characteristic guard),
so every one of them also serves as a negative-test generator.
"""
from __future__ import annotations
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from coalg import Algebra, Coalgebra, ground_coalgebra, tensor_coalgebra
from errors import (CharacteristicDividesOrder, ConditionsViolated,
                    DimensionMismatch, InvalidGroupTable)
from hopf import Bialgebra, HopfAlgebra, compute_antipode, dual_hopf
from multilinear import LinearMap, contract, kron_arrays
from pact import ActionMap
from pcoact import CoactionMap
from report import compare
from scalars import FieldSpec, QQ

log = logging.getLogger(__name__)

# ---------------- CONFIG ----------------
MAX_CYCLIC_ORDER = 12
# ----------------------------------------


@dataclass(frozen=True)
class GroupTable:
    table: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]
    identity: int = field(init=False)
    inverse: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0 or any(len(row) != n for row in self.table):
            raise InvalidGroupTable("Cayley table must be square and non-empty")
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InvalidGroupTable("need one unique label per element")
        if any(not (0 <= x < n) for row in self.table for x in row):
            raise InvalidGroupTable("table entries out of range")
        t = self.table
        ids = [e for e in range(n) if all(t[e][g] == g and t[g][e] == g for g in range(n))]
        if not ids:
            raise InvalidGroupTable("no identity element")
        e = ids[0]
        inv = []
        for g in range(n):
            hits = [h for h in range(n) if t[g][h] == e and t[h][g] == e]
            if not hits:
                raise InvalidGroupTable(f"element {self.labels[g]} has no inverse")
            inv.append(hits[0])
        for a, b, c in itertools.product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InvalidGroupTable(
                    f"not associative at ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})")
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, label: Union[str, int]) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.order:
                raise InvalidGroupTable(f"no element {label}")
            return label
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidGroupTable(f"no element labelled {label!r}")

    def subset(self, members: Iterable[Union[str, int]]) -> Tuple[int, ...]:
        return tuple(sorted({self.index(m) for m in members}))

    def is_subgroup(self, members: Iterable[int]) -> bool:
        s = set(members)
        return bool(s) and all(self.mul(a, b) in s for a in s for b in s)


def group_from_table(table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> GroupTable:
    try:
        rows = tuple(tuple(int(x) for x in row) for row in table)
    except (TypeError, ValueError):
        raise InvalidGroupTable("Cayley table entries must be element indices")
    return GroupTable(rows, tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(len(rows))))

def cyclic(n: int) -> GroupTable:
    if not 1 <= n <= MAX_CYCLIC_ORDER:
        raise InvalidGroupTable(f"cyclic order must lie in 1..{MAX_CYCLIC_ORDER}, got {n}")
    labels = ["e", "g"] + [f"g^{k}" for k in range(2, n)]
    return group_from_table([[(i + j) % n for j in range(n)] for i in range(n)], labels[:n])

def klein() -> GroupTable:
    return group_from_table([[i ^ j for j in range(4)] for i in range(4)], ["e", "a", "b", "c"])

def _cycle_label(perm: Tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"

def symmetric3() -> GroupTable:
    perms = sorted(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    # (p∘q)(i) = p[q[i]]
    table = [[pos[tuple(p[q[i]] for i in range(3))] for q in perms] for p in perms]
    return group_from_table(table, [_cycle_label(p) for p in perms])

def named_group(name: str) -> GroupTable:
    key = name.strip()
    if key.upper() in ("S3", "SYM3"):
        return symmetric3()
    if key.upper() in ("KLEIN", "V4", "Z2XZ2"):
        return klein()
    if key.upper().startswith("Z") and key[1:].isdigit():
        return cyclic(int(key[1:]))
    raise InvalidGroupTable(f"unknown group {name!r}")

def named_subset(G: GroupTable, text: str) -> Tuple[int, ...]:
    """"A3" (S3 only), "G"/"all", "e", or comma-separated labels."""
    key = text.strip()
    if key == "G" or key.lower() == "all":
        return tuple(range(G.order))
    if key.upper() == "A3":
        if G.labels != symmetric3().labels:
            raise InvalidGroupTable("A3 names a subgroup of S3 only")
        return G.subset(["e", "(123)", "(132)"])
    return G.subset(part.strip() for part in key.split(","))

def subsets_containing_identity(G: GroupTable) -> List[Tuple[int, ...]]:
    others = [g for g in range(G.order) if g != G.identity]
    out = []
    for k in range(len(others) + 1):
        for combo in itertools.combinations(others, k):
            out.append(tuple(sorted((G.identity,) + combo)))
    return out

def subgroups(G: GroupTable) -> List[Tuple[int, ...]]:
    return [s for s in subsets_containing_identity(G) if G.is_subgroup(s)]


# ---------------- Hopf algebras ----------------

def group_bialgebra(G: GroupTable, fld: FieldSpec = QQ) -> Bialgebra:
    n = G.order
    mul = fld.zeros((n, n * n))
    for i in range(n):
        for j in range(n):
            mul[G.mul(i, j), i * n + j] = 1
    unit = fld.zeros((n, 1))
    unit[G.identity, 0] = 1
    delta = fld.zeros((n * n, n))
    for g in range(n):
        delta[g * n + g, g] = 1
    eps = np.ones((1, n), dtype=object)
    return Bialgebra(Algebra(LinearMap(fld, mul), LinearMap(fld, unit), G.labels),
                     Coalgebra(LinearMap(fld, delta), LinearMap(fld, eps), G.labels))

def group_algebra(G: GroupTable, fld: FieldSpec = QQ) -> HopfAlgebra:
    """kG with Δ(g)=g⊗g, ε(g)=1; the antipode is solved for, not written down."""
    H = compute_antipode(group_bialgebra(G, fld))
    log.info("group algebra of order %d over %s", G.order, fld)
    return H

def monoid_bialgebra(fld: FieldSpec = QQ) -> Bialgebra:
    """k{1, z} with z² = z: a bialgebra that admits no antipode."""
    table = [[0, 1], [1, 1]]
    mul = fld.zeros((2, 4))
    for i in range(2):
        for j in range(2):
            mul[table[i][j], i * 2 + j] = 1
    delta = fld.zeros((4, 2))
    delta[0, 0] = delta[3, 1] = 1
    labels = ("1", "z")
    return Bialgebra(Algebra(LinearMap(fld, mul), LinearMap(fld, [[1], [0]]), labels),
                     Coalgebra(LinearMap(fld, delta), LinearMap(fld, [[1, 1]]), labels))


# ---------------- partial (co)actions on the ground field ----------------

def subgroup_partial_action_on_k(G: GroupTable, N: Iterable[Union[str, int]], fld: FieldSpec = QQ) -> ActionMap:
    """x ⇀ g = x·α(g), α the indicator of N."""
    members = G.subset(N)
    row = fld.zeros((1, G.order))
    for g in members:
        row[0, g] = 1
    return ActionMap(1, G.order, LinearMap(fld, row))

def character_partial_action_on_k(H: HopfAlgebra, alpha) -> ActionMap:
    """x ⇀ h = x·α(h); requires α(1)=1 and α(h)α(k) = α(h₁)α(h₂k)."""
    f = H.field
    a = f.reduce(np.asarray(alpha, dtype=object).reshape(-1))
    if a.shape != (H.dim,):
        raise DimensionMismatch(f"functional of length {a.shape[0]} on a {H.dim}-dim Hopf algebra")
    unit_value = f.reduce(a.dot(H.alg.one))[()]
    if unit_value != 1:
        raise ConditionsViolated("α(1) must be 1", witness={"condition": "unit", "lhs": f.format(unit_value), "rhs": "1"})
    lhs = np.multiply.outer(a, a)
    rhs = contract(f, "xyh,x,tyk,t->hk", H.coalg.comul, a, H.alg.product, a)
    res = compare("multiplicative", f, lhs, rhs)
    if not res.passed:
        raise ConditionsViolated("α(h)α(k) = α(h₁)α(h₂k) fails", witness=res.witness)
    return ActionMap(1, H.dim, LinearMap(f, a.reshape(1, -1)))

def subgroup_partial_coaction_on_k(G: GroupTable, N: Iterable[Union[str, int]], fld: FieldSpec = QQ) -> CoactionMap:
    """λ′(1) = ((1/|N|) Σ_{g∈N} g) ⊗ 1."""
    members = G.subset(N)
    if fld.characteristic and len(members) % fld.characteristic == 0:
        raise CharacteristicDividesOrder(
            f"characteristic {fld.characteristic} divides |N| = {len(members)}")
    weight = fld.div(1, len(members))
    col = fld.zeros((G.order, 1))
    for g in members:
        col[g, 0] = weight
    return CoactionMap(G.order, 1, LinearMap(fld, col))


# ---------------- global (co)actions ----------------

def regular_module_coalgebra(H: HopfAlgebra) -> ActionMap:
    """d ⇀ h = dh on H itself."""
    return ActionMap(H.dim, H.dim, H.alg.mul)

def tensor_module_coalgebra(C: Coalgebra, Dact: Tuple[Coalgebra, ActionMap]) -> ActionMap:
    """(c⊗d) ⇀ h = c⊗(d⇀h) on tensor_coalgebra(C, D)."""
    D, act = Dact
    f = C.field
    return ActionMap(C.dim * D.dim, act.hopf_dim, LinearMap(f, kron_arrays(f.eye(C.dim), act.map.matrix)))

def adjoint_coaction(H: HopfAlgebra) -> CoactionMap:
    """λ(h) = h₁S(h₃) ⊗ h₂."""
    f, D, M, S = H.field, H.coalg.comul, H.alg.product, H.S
    n = H.dim
    twice = contract(f, "ark,bcr->abck", D, D)
    L = contract(f, "abck,gax,xc->gbk", twice, M, S)
    return CoactionMap(n, n, LinearMap(f, L.reshape(n * n, n)))

def trivial_coaction(D: Coalgebra, H: HopfAlgebra) -> CoactionMap:
    """λ(d) = 1 ⊗ d."""
    f = D.field
    return CoactionMap(H.dim, D.dim, LinearMap(f, kron_arrays(H.alg.unit.matrix, f.eye(D.dim))))

def dual_basis_comodule(H: HopfAlgebra) -> CoactionMap:
    """λ(f) = Σ hᵢ ⊗ f∗hᵢ* on the coalgebra of dual_hopf(H)."""
    f, DH = H.field, H.coalg.comul
    n = H.dim
    L = contract(f, "xgs->gsx", DH)
    return CoactionMap(n, n, LinearMap(f, L.reshape(n * n, n)))

def dual_basis_coalgebra(H: HopfAlgebra) -> Coalgebra:
    return dual_hopf(H).coalg

def tensor_comodule_coalgebra(Cco: Tuple[Coalgebra, CoactionMap], D: Coalgebra) -> CoactionMap:
    """λ ⊗ I_D on tensor_coalgebra(C, D)."""
    C, co = Cco
    f = C.field
    return CoactionMap(co.hopf_dim, C.dim * D.dim, LinearMap(f, kron_arrays(co.map.matrix, f.eye(D.dim))))

def tensor_module_instance(C: Coalgebra, H: HopfAlgebra) -> Tuple[Coalgebra, ActionMap]:
    return tensor_coalgebra(C, H.coalg), tensor_module_coalgebra(C, (H.coalg, regular_module_coalgebra(H)))
