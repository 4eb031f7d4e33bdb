"""
Dense exact linear algebra on numpy object arrays.

Convention used everywhere: a pair index (i, j) of V⊗W is flattened
row-major to ``i * dim(W) + j``, and a linear map is stored as a
codomain x domain matrix whose column j is the image of basis vector j.
"""
from __future__ import annotations
import logging
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from errors import DimensionMismatch, FieldMismatch, NoSolution, NotInjective
from scalars import FieldSpec, QQ

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorSpace:
    dim: int
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if int(self.dim) < 1:
            raise DimensionMismatch(f"dimension must be positive, got {self.dim}")
        if self.labels is not None:
            if len(self.labels) != self.dim:
                raise DimensionMismatch(f"{len(self.labels)} labels for dimension {self.dim}")
            if len(set(self.labels)) != len(self.labels):
                raise DimensionMismatch("basis labels must be unique")


@dataclass(frozen=True, eq=False)
class LinearMap:
    field: FieldSpec
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=object)
        if m.ndim != 2 or 0 in m.shape:
            raise DimensionMismatch(f"a linear map needs a non-empty 2-d matrix, got shape {m.shape}")
        object.__setattr__(self, "matrix", self.field.reduce(m))

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def codomain_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def T(self) -> "LinearMap":
        return LinearMap(self.field, self.matrix.T)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose(self, other)

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=object)
        if v.shape[0] != self.domain_dim:
            raise DimensionMismatch(f"vector of length {v.shape[0]} fed to a map on dimension {self.domain_dim}")
        return self.field.reduce(self.matrix.dot(v))

    def equals(self, other: "LinearMap") -> bool:
        return self.matrix.shape == other.matrix.shape and bool(np.all(self.matrix == other.matrix))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row-reduced basis of a subspace of k^n (rows are basis vectors)."""
    field: FieldSpec
    ambient_dim: int
    basis: np.ndarray = dc_field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=object).reshape(1, -1)
        return rank(self.field, np.vstack([self.basis, v])) == self.dim

    def equals(self, other: "Subspace") -> bool:
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and bool(np.all(self.basis == other.basis)))


@dataclass
class Solution:
    particular: np.ndarray
    nullspace: List[np.ndarray]


# ---------------- constructors ----------------

def identity(field: FieldSpec, n: int) -> LinearMap:
    return LinearMap(field, field.eye(n))

def zero_map(field: FieldSpec, codomain_dim: int, domain_dim: int) -> LinearMap:
    return LinearMap(field, field.zeros((codomain_dim, domain_dim)))

def _same_field(f: LinearMap, g: LinearMap) -> FieldSpec:
    if f.field != g.field:
        raise FieldMismatch(f"maps over {f.field} and {g.field}")
    return f.field

def compose(f: LinearMap, g: LinearMap) -> LinearMap:
    """f∘g."""
    fld = _same_field(f, g)
    if f.domain_dim != g.codomain_dim:
        raise DimensionMismatch(f"cannot compose {f.matrix.shape} after {g.matrix.shape}")
    return LinearMap(fld, f.matrix.dot(g.matrix))

def kron_arrays(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    (m, n), (p, q) = a.shape, b.shape
    return np.multiply.outer(a, b).transpose(0, 2, 1, 3).reshape(m * p, n * q)

def kron(f: LinearMap, g: LinearMap) -> LinearMap:
    fld = _same_field(f, g)
    return LinearMap(fld, kron_arrays(f.matrix, g.matrix))

def flip(dim_a: int, dim_b: int, field: FieldSpec = QQ) -> LinearMap:
    """τ: A⊗B → B⊗A, sending index a*dim_b + b to b*dim_a + a."""
    if dim_a < 1 or dim_b < 1:
        raise DimensionMismatch("flip needs positive dimensions")
    out = field.zeros((dim_a * dim_b, dim_a * dim_b))
    for a in range(dim_a):
        for b in range(dim_b):
            out[b * dim_a + a, a * dim_b + b] = 1
    return LinearMap(field, out)

def contract(field: FieldSpec, subscripts: str, *operands) -> np.ndarray:
    """Exact einsum over object arrays, canonicalised."""
    ops = [np.asarray(o, dtype=object) for o in operands]
    return field.reduce(np.einsum(subscripts, *ops, optimize="greedy"))


# ---------------- elimination ----------------

def rref(field: FieldSpec, matrix) -> Tuple[np.ndarray, List[int]]:
    R = field.reduce(np.array(matrix, dtype=object, copy=True))
    if R.ndim != 2:
        raise DimensionMismatch(f"row reduction needs a 2-d matrix, got shape {R.shape}")
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = [i for i in range(r, rows) if R[i, c] != 0]
        if not hits:
            continue
        if hits[0] != r:
            R[[r, hits[0]]] = R[[hits[0], r]]
        R[r] = field.reduce(R[r] * field.inv(R[r, c]))
        for i in range(rows):
            if i != r and R[i, c] != 0:
                R[i] = field.reduce(R[i] - R[i, c] * R[r])
        pivots.append(c)
        r += 1
    return R, pivots

def rank(field: FieldSpec, matrix) -> int:
    m = np.asarray(matrix, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(field, m)[1])

def row_space(field: FieldSpec, matrix, ambient_dim: Optional[int] = None) -> Subspace:
    m = np.asarray(matrix, dtype=object)
    if m.size == 0:
        n = ambient_dim if ambient_dim is not None else (m.shape[1] if m.ndim == 2 else 0)
        return Subspace(field, n, field.zeros((0, n)))
    R, pivots = rref(field, m)
    return Subspace(field, m.shape[1], R[: len(pivots)])

def nullspace(field: FieldSpec, matrix) -> List[np.ndarray]:
    m = np.asarray(matrix, dtype=object)
    R, pivots = rref(field, m)
    n = m.shape[1]
    out: List[np.ndarray] = []
    for free in (c for c in range(n) if c not in pivots):
        v = field.zeros(n)
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = field.neg(R[i, free])
        out.append(v)
    return out

def solve(A, b, field: Optional[FieldSpec] = None) -> Solution:
    """One solution of A x = b plus a nullspace basis; b may be a vector or a matrix.

    A plain array needs ``field``; a LinearMap brings its own.
    """
    if isinstance(A, LinearMap):
        if field is not None and field != A.field:
            raise FieldMismatch(f"system over {A.field}, asked to solve over {field}")
        fld, a = A.field, A.matrix
    elif field is None:
        raise FieldMismatch("a raw coefficient array needs an explicit field")
    else:
        fld, a = field, field.reduce(A)
    rhs = fld.reduce(b.matrix if isinstance(b, LinearMap) else b)
    vector = rhs.ndim == 1
    rhs2 = rhs.reshape(-1, 1) if vector else rhs
    if rhs2.shape[0] != a.shape[0]:
        raise DimensionMismatch(f"system has {a.shape[0]} rows, right-hand side {rhs2.shape[0]}")
    n, k = a.shape[1], rhs2.shape[1]
    R, pivots = rref(fld, np.hstack([a, rhs2]))
    if any(p >= n for p in pivots):
        raise NoSolution("inconsistent linear system")
    x = fld.zeros((n, k))
    for i, pc in enumerate(pivots):
        x[pc] = R[i, n:]
    return Solution(x[:, 0] if vector else x, nullspace(fld, a))

def is_injective(f: LinearMap) -> bool:
    return rank(f.field, f.matrix) == f.domain_dim

def same_column_space(field: FieldSpec, a, b) -> bool:
    ra, rb = rank(field, a), rank(field, b)
    return ra == rb == rank(field, np.hstack([np.asarray(a, dtype=object), np.asarray(b, dtype=object)]))

def left_inverse_on_image(f: LinearMap) -> LinearMap:
    """g with g∘f = id; complement of the image (standard basis completion) goes to 0."""
    fld = f.field
    m, n = f.matrix.shape
    if rank(fld, f.matrix) != n:
        raise NotInjective(f"map of shape {f.matrix.shape} is not injective")
    _, pivots = rref(fld, np.hstack([f.matrix, fld.eye(m)]))
    extra = [p - n for p in pivots if p >= n]
    basis = np.hstack([f.matrix, fld.eye(m)[:, extra]])
    inverse = solve(LinearMap(fld, basis), fld.eye(m)).particular
    return LinearMap(fld, inverse[:n])

def span_closure(field: FieldSpec, seed, step: Callable[[np.ndarray], Iterable[np.ndarray]],
                 ambient_dim: Optional[int] = None) -> Subspace:
    """Smallest subspace containing ``seed`` and closed under the linear ``step``."""
    seed = [np.asarray(v, dtype=object) for v in seed]
    if ambient_dim is None:
        ambient_dim = len(seed[0])
    current = row_space(field, np.array(seed, dtype=object).reshape(len(seed), ambient_dim), ambient_dim)
    while True:
        images = [np.asarray(w, dtype=object) for v in current.basis for w in step(v)]
        if not images:
            return current
        grown = row_space(field, np.vstack([current.basis, np.array(images, dtype=object)]), ambient_dim)
        if grown.dim == current.dim:
            return current
        log.debug("span closure grew %d -> %d", current.dim, grown.dim)
        current = grown
