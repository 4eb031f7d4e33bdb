"""
Bundle files: one JSON document holding a field, a map of named structures,
free-form metadata and attached reports.

    {"version": "1",
     "field":   {"kind": "Q"} | {"kind": "Fp", "p": 7},
     "objects": {name: {"type": ..., ...}},
     "metadata": {...},
     "reports":  {name: {"title", "pass", "results"}}}

Matrices are {"shape": [m, n], "rows": [["1/2", "0"], ...]} with canonical
scalar strings. Output is canonical (sorted keys, two-space indent, trailing
newline), so a parse/serialize round trip is byte-identical.
"""
from __future__ import annotations
import io
import json
import logging
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, List, Optional, Set, Tuple, Type, Union

import numpy as np

from catalog import GroupTable, group_from_table
from coalg import Algebra, Coalgebra
from errors import BundleError, DimensionMismatch, FieldMismatch
from helper import report_frame
from hopf import Bialgebra, HopfAlgebra, verify_hopf
from multilinear import LinearMap, Subspace
from pact import ActionMap, DualActionMap
from pcoact import CoactionMap
from report import AxiomResult, CheckReport
from scalars import FieldSpec

log = logging.getLogger(__name__)

BUNDLE_VERSION = "1"


@dataclass(frozen=True, eq=False)
class ActionEntry:
    coalgebra: str
    hopf: str
    action: ActionMap
    partial: bool = True


@dataclass(frozen=True, eq=False)
class CoactionEntry:
    coalgebra: str
    hopf: str
    coaction: CoactionMap
    partial: bool = True


@dataclass(frozen=True, eq=False)
class DualActionEntry:
    algebra: str
    hopf: str
    action: DualActionMap
    partial: bool = True


Entry = Union[HopfAlgebra, Bialgebra, Coalgebra, Algebra, ActionEntry, CoactionEntry,
              DualActionEntry, LinearMap, Subspace, GroupTable]


@dataclass
class Bundle:
    field: FieldSpec
    objects: Dict[str, Entry] = dc_field(default_factory=dict)
    metadata: Dict[str, Any] = dc_field(default_factory=dict)
    reports: Dict[str, Dict[str, Any]] = dc_field(default_factory=dict)
    _verified: Set[str] = dc_field(default_factory=set, repr=False, compare=False)

    def add(self, name: str, obj: Entry) -> "Bundle":
        fld = _entry_field(obj)
        if fld is not None and fld != self.field:
            raise FieldMismatch(f"object {name!r} is over {fld}, bundle is over {self.field}")
        self._verified.discard(name)
        self.objects[name] = obj
        return self

    def attach(self, name: str, report: CheckReport) -> "Bundle":
        self.reports[name] = report.to_json()
        return self

    def get(self, name: str, kind: Optional[Union[Type, Tuple[Type, ...]]] = None) -> Entry:
        if name not in self.objects:
            raise BundleError(f"no object named {name!r}")
        obj = self.objects[name]
        if kind is not None and not isinstance(obj, kind):
            raise BundleError(f"object {name!r} is a {_type_name(obj)}")
        return obj

    def names(self, kind: Union[Type, Tuple[Type, ...]]) -> List[str]:
        return sorted(n for n, o in self.objects.items() if isinstance(o, kind))

    def coalgebra(self, name: str) -> Coalgebra:
        """A coalgebra reference may also name a Hopf algebra or bialgebra (its underlying coalgebra)."""
        obj = self.get(name, (Coalgebra, HopfAlgebra, Bialgebra))
        return obj if isinstance(obj, Coalgebra) else obj.coalg

    def algebra(self, name: str) -> Algebra:
        obj = self.get(name, (Algebra, HopfAlgebra, Bialgebra))
        return obj if isinstance(obj, Algebra) else obj.alg

    def hopf(self, name: str, verify: bool = True) -> HopfAlgebra:
        """Hopf algebra ``name`` with its antipode verified on first use."""
        H = self.get(name, HopfAlgebra)
        if verify and name not in self._verified:
            verify_hopf(H)
            self._verified.add(name)
        return H

    def to_json(self) -> Dict[str, Any]:
        return {
            "version": BUNDLE_VERSION,
            "field": self.field.to_json(),
            "objects": {n: _encode(self.field, o) for n, o in self.objects.items()},
            "metadata": self.metadata,
            "reports": self.reports,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _entry_field(obj) -> Optional[FieldSpec]:
    if isinstance(obj, (ActionEntry, DualActionEntry)):
        return obj.action.field
    if isinstance(obj, CoactionEntry):
        return obj.coaction.field
    if isinstance(obj, GroupTable):
        return None
    return obj.field

def _type_name(obj) -> str:
    return {
        HopfAlgebra: "hopf", Bialgebra: "hopf", Coalgebra: "coalgebra", Algebra: "algebra",
        ActionEntry: "action", CoactionEntry: "coaction", DualActionEntry: "dual_action",
        LinearMap: "linear_map", Subspace: "subspace", GroupTable: "group",
    }[type(obj)]


# ---------------- matrices ----------------

def encode_matrix(fld: FieldSpec, m) -> Dict[str, Any]:
    m = np.asarray(m, dtype=object)
    return {"shape": list(m.shape), "rows": fld.format_array(m) if m.size else []}

def decode_matrix(fld: FieldSpec, obj: Any, shape: Optional[Tuple[int, int]] = None, where: str = "") -> np.ndarray:
    try:
        rows_n, cols_n = (int(x) for x in obj["shape"])
        rows = obj["rows"]
    except (KeyError, TypeError, ValueError):
        raise BundleError(f"{where}: a matrix needs 'shape' [m, n] and 'rows'")
    if rows_n < 0 or cols_n < 0:
        raise BundleError(f"{where}: negative shape {(rows_n, cols_n)}")
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise BundleError(f"{where}: 'rows' must be a list of lists")
    if shape is not None and (rows_n, cols_n) != tuple(shape):
        raise DimensionMismatch(f"{where}: expected shape {tuple(shape)}, got {(rows_n, cols_n)}")
    if len(rows) != rows_n or any(len(r) != cols_n for r in rows):
        raise DimensionMismatch(f"{where}: rows do not match declared shape {(rows_n, cols_n)}")
    out = fld.zeros((rows_n, cols_n))
    for i, row in enumerate(rows):
        for j, cell in enumerate(row):
            out[i, j] = fld.parse(cell)
    return out


# ---------------- per-type codecs ----------------

def _encode(fld: FieldSpec, obj: Entry) -> Dict[str, Any]:
    if isinstance(obj, (HopfAlgebra, Bialgebra)):
        b = obj.bialg if isinstance(obj, HopfAlgebra) else obj
        out = {
            "type": "hopf", "dim": b.dim, "labels": list(b.labels),
            "mul": encode_matrix(fld, b.alg.mul.matrix), "unit": encode_matrix(fld, b.alg.unit.matrix),
            "delta": encode_matrix(fld, b.coalg.delta.matrix), "epsilon": encode_matrix(fld, b.coalg.epsilon.matrix),
        }
        if isinstance(obj, HopfAlgebra):
            out["antipode"] = encode_matrix(fld, obj.S)
        return out
    if isinstance(obj, Coalgebra):
        return {"type": "coalgebra", "dim": obj.dim, "labels": list(obj.labels),
                "delta": encode_matrix(fld, obj.delta.matrix), "epsilon": encode_matrix(fld, obj.epsilon.matrix)}
    if isinstance(obj, Algebra):
        return {"type": "algebra", "dim": obj.dim, "labels": list(obj.labels),
                "mul": encode_matrix(fld, obj.mul.matrix), "unit": encode_matrix(fld, obj.unit.matrix)}
    if isinstance(obj, ActionEntry):
        a = obj.action
        return {"type": "action", "coalgebra": obj.coalgebra, "hopf": obj.hopf, "partial": obj.partial,
                "c_dim": a.coalgebra_dim, "h_dim": a.hopf_dim, "matrix": encode_matrix(fld, a.matrix)}
    if isinstance(obj, CoactionEntry):
        co = obj.coaction
        return {"type": "coaction", "coalgebra": obj.coalgebra, "hopf": obj.hopf, "partial": obj.partial,
                "h_dim": co.hopf_dim, "c_dim": co.coalgebra_dim, "matrix": encode_matrix(fld, co.matrix)}
    if isinstance(obj, DualActionEntry):
        d = obj.action
        return {"type": "dual_action", "algebra": obj.algebra, "hopf": obj.hopf, "partial": obj.partial,
                "h_dim": d.hopf_dim, "a_dim": d.dual_dim, "matrix": encode_matrix(fld, d.matrix)}
    if isinstance(obj, LinearMap):
        return {"type": "linear_map", "matrix": encode_matrix(fld, obj.matrix)}
    if isinstance(obj, Subspace):
        return {"type": "subspace", "ambient_dim": obj.ambient_dim, "basis": encode_matrix(fld, obj.basis)}
    if isinstance(obj, GroupTable):
        return {"type": "group", "order": obj.order, "labels": list(obj.labels),
                "table": [list(row) for row in obj.table]}
    raise BundleError(f"cannot serialize {type(obj).__name__}")

def _need(obj: Dict[str, Any], key: str, where: str):
    if key not in obj:
        raise BundleError(f"{where}: missing key {key!r}")
    return obj[key]

def _dim(obj, key, where) -> int:
    v = _need(obj, key, where)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise BundleError(f"{where}: {key!r} must be a positive integer")
    return v

def _ref(obj, key, where) -> str:
    v = _need(obj, key, where)
    if not isinstance(v, str):
        raise BundleError(f"{where}: {key!r} must name an object")
    return v

def _labels(obj, where) -> Optional[List[str]]:
    v = obj.get("labels")
    if v is not None and (not isinstance(v, list) or not all(isinstance(s, str) for s in v)):
        raise BundleError(f"{where}: 'labels' must be a list of strings")
    return v

def _decode_structure(fld: FieldSpec, name: str, obj: Dict[str, Any]) -> Entry:
    kind = _need(obj, "type", name)
    if kind in ("hopf", "coalgebra", "algebra"):
        n = _dim(obj, "dim", name)
        labels = _labels(obj, name)
        coalg = alg = None
        if kind in ("hopf", "coalgebra"):
            coalg = Coalgebra(LinearMap(fld, decode_matrix(fld, _need(obj, "delta", name), (n * n, n), f"{name}.delta")),
                              LinearMap(fld, decode_matrix(fld, _need(obj, "epsilon", name), (1, n), f"{name}.epsilon")),
                              labels)
        if kind in ("hopf", "algebra"):
            alg = Algebra(LinearMap(fld, decode_matrix(fld, _need(obj, "mul", name), (n, n * n), f"{name}.mul")),
                          LinearMap(fld, decode_matrix(fld, _need(obj, "unit", name), (n, 1), f"{name}.unit")),
                          labels)
        if kind == "coalgebra":
            return coalg
        if kind == "algebra":
            return alg
        b = Bialgebra(alg, coalg)
        if "antipode" not in obj:
            return b
        return HopfAlgebra(b, LinearMap(fld, decode_matrix(fld, obj["antipode"], (n, n), f"{name}.antipode")))
    if kind == "linear_map":
        return LinearMap(fld, decode_matrix(fld, _need(obj, "matrix", name), where=f"{name}.matrix"))
    if kind == "subspace":
        n = _dim(obj, "ambient_dim", name)
        basis = decode_matrix(fld, _need(obj, "basis", name), where=f"{name}.basis")
        if basis.shape[1] != n:
            raise DimensionMismatch(f"{name}: basis vectors of length {basis.shape[1]} in dimension {n}")
        return Subspace(fld, n, basis)
    if kind == "group":
        table = _need(obj, "table", name)
        if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
            raise BundleError(f"{name}: 'table' must be a list of rows")
        if not all(isinstance(x, int) and not isinstance(x, bool) for row in table for x in row):
            raise BundleError(f"{name}: group table entries must be integers")
        G = group_from_table(table, _labels(obj, name))
        if G.order != obj.get("order", G.order):
            raise BundleError(f"{name}: order {obj['order']} but table has {G.order} rows")
        return G
    raise BundleError(f"{name}: unknown object type {kind!r}")

def _decode_map(fld: FieldSpec, name: str, obj: Dict[str, Any], bundle: Bundle) -> Entry:
    kind = obj["type"]
    partial = obj.get("partial", True)
    if not isinstance(partial, bool):
        raise BundleError(f"{name}: 'partial' must be true or false")
    H = bundle.hopf(_ref(obj, "hopf", name), verify=False)
    if kind == "action":
        C = bundle.coalgebra(_ref(obj, "coalgebra", name))
        c, h = _dim(obj, "c_dim", name), _dim(obj, "h_dim", name)
        if (c, h) != (C.dim, H.dim):
            raise BundleError(f"{name}: declared dims {(c, h)} but references have {(C.dim, H.dim)}")
        m = decode_matrix(fld, _need(obj, "matrix", name), (c, c * h), f"{name}.matrix")
        return ActionEntry(obj["coalgebra"], obj["hopf"], ActionMap(c, h, LinearMap(fld, m)), partial)
    if kind == "coaction":
        C = bundle.coalgebra(_ref(obj, "coalgebra", name))
        h, c = _dim(obj, "h_dim", name), _dim(obj, "c_dim", name)
        if (c, h) != (C.dim, H.dim):
            raise BundleError(f"{name}: declared dims {(c, h)} but references have {(C.dim, H.dim)}")
        m = decode_matrix(fld, _need(obj, "matrix", name), (h * c, c), f"{name}.matrix")
        return CoactionEntry(obj["coalgebra"], obj["hopf"], CoactionMap(h, c, LinearMap(fld, m)), partial)
    A = bundle.algebra(_ref(obj, "algebra", name))
    h, a = _dim(obj, "h_dim", name), _dim(obj, "a_dim", name)
    if (a, h) != (A.dim, H.dim):
        raise BundleError(f"{name}: declared dims {(a, h)} but references have {(A.dim, H.dim)}")
    m = decode_matrix(fld, _need(obj, "matrix", name), (a, h * a), f"{name}.matrix")
    return DualActionEntry(obj["algebra"], obj["hopf"], DualActionMap(h, a, LinearMap(fld, m)), partial)

MAP_TYPES = ("action", "coaction", "dual_action")


# ---------------- load / dump ----------------

def bundle_from_json(raw: Any) -> Bundle:
    if not isinstance(raw, dict):
        raise BundleError("a bundle is a JSON object")
    version = raw.get("version")
    if version != BUNDLE_VERSION:
        raise BundleError(f"unsupported bundle version {version!r}")
    fld = FieldSpec.from_json(_need(raw, "field", "bundle"))
    objects = raw.get("objects", {})
    if not isinstance(objects, dict):
        raise BundleError("'objects' must be a JSON object")
    metadata, reports = raw.get("metadata", {}), raw.get("reports", {})
    if not isinstance(metadata, dict):
        raise BundleError("'metadata' must be a JSON object")
    if not isinstance(reports, dict) or not all(isinstance(r, dict) for r in reports.values()):
        raise BundleError("'reports' must map names to JSON objects")
    b = Bundle(fld, metadata=dict(metadata), reports=dict(reports))
    # structures first so (co)action references resolve whatever the key order
    pending = []
    for name in sorted(objects):
        obj = objects[name]
        if not isinstance(obj, dict):
            raise BundleError(f"{name}: object entries must be JSON objects")
        if obj.get("type") in MAP_TYPES:
            pending.append(name)
        else:
            b.add(name, _decode_structure(fld, name, obj))
    for name in pending:
        b.add(name, _decode_map(fld, name, objects[name], b))
    log.debug("bundle over %s with %d objects", fld, len(b.objects))
    return b

def parse_bundle(text: Union[str, bytes]) -> Bundle:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise BundleError(f"not valid JSON: {e}")
    return bundle_from_json(raw)

def load_bundle(path: Union[str, Path]) -> Bundle:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise BundleError(f"cannot read {path}: {e}")
    return parse_bundle(data)

def bundle_bytes(bundle: Bundle) -> bytes:
    return bundle.dumps().encode("utf-8")

def dump_bundle(bundle: Bundle, path: Union[str, Path]) -> Path:
    p = Path(path)
    p.write_bytes(bundle_bytes(bundle))
    return p

def reserialize(data: bytes) -> bytes:
    return bundle_bytes(parse_bundle(data))


# ---------------- artifacts ----------------

def export_bytes(bundle: Bundle, stem: Optional[str] = None) -> Dict[str, bytes]:
    """Bundle JSON plus one CSV per attached report, keyed by file name."""
    artifacts: Dict[str, bytes] = {}

    def to_csv_bytes(df) -> bytes:
        bio = io.StringIO(); df.to_csv(bio, index=False); return bio.getvalue().encode("utf-8")

    artifacts[_fname(stem, "bundle.json")] = bundle_bytes(bundle)
    for name, rep in sorted(bundle.reports.items()):
        artifacts[_fname(stem, f"{name}.csv")] = to_csv_bytes(report_frame([report_from_json(rep)]))
    return artifacts

def report_from_json(obj: Dict[str, Any]) -> CheckReport:
    rep = CheckReport(obj.get("title", ""))
    try:
        for r in obj.get("results", []):
            rep.add(AxiomResult(r["axiom"], bool(r["pass"]), r.get("witness")))
    except (KeyError, TypeError, AttributeError):
        raise BundleError(f"report {rep.title!r}: results need 'axiom' and 'pass'")
    return rep

def _fname(stem: Optional[str], suffix: str) -> str:
    prefix = (stem or "bundle").replace("/", "_")
    return f"{prefix}.{suffix}"
