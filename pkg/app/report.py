from __future__ import annotations
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from errors import DimensionMismatch
from scalars import FieldSpec

log = logging.getLogger(__name__)


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    witness: Optional[Dict[str, Any]] = None

    def to_record(self) -> Dict[str, Any]:
        rec: Dict[str, Any] = {"axiom": self.axiom, "pass": self.passed}
        if self.witness is not None:
            rec["witness"] = self.witness
        return rec


@dataclass
class CheckReport:
    title: str
    results: List[AxiomResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def first_failure(self) -> Optional[AxiomResult]:
        bad = self.failures
        return bad[0] if bad else None

    def verdict(self, axiom: str) -> bool:
        hits = [r for r in self.results if r.axiom == axiom]
        if not hits:
            raise KeyError(axiom)
        return all(r.passed for r in hits)

    def add(self, result: AxiomResult) -> AxiomResult:
        self.results.append(result)
        if not result.passed:
            log.debug("%s: %s failed at %s", self.title, result.axiom, result.witness)
        return result

    def require(self, axiom: str, ok: bool, **detail) -> AxiomResult:
        return self.add(AxiomResult(axiom, bool(ok), None if ok or not detail else dict(detail)))

    def compare(self, axiom: str, fld: FieldSpec, lhs, rhs) -> AxiomResult:
        return self.add(compare(axiom, fld, lhs, rhs))

    def merge(self, other: "CheckReport", prefix: Optional[str] = None) -> "CheckReport":
        for r in other.results:
            name = f"{prefix}/{r.axiom}" if prefix else r.axiom
            self.results.append(AxiomResult(name, r.passed, r.witness))
        return self

    def to_records(self) -> List[Dict[str, Any]]:
        return [r.to_record() for r in self.results]

    def to_json(self) -> Dict[str, Any]:
        return {"title": self.title, "pass": self.passed, "results": self.to_records()}

    def to_frame(self) -> pd.DataFrame:
        rows = [{
            "report": self.title,
            "axiom": r.axiom,
            "pass": r.passed,
            "witness": "" if r.witness is None else _witness_text(r.witness),
        } for r in self.results]
        return pd.DataFrame(rows, columns=["report", "axiom", "pass", "witness"])

    def summary(self) -> str:
        lines = [f"{'PASS' if self.passed else 'FAIL'}  {self.title}"]
        for r in self.results:
            mark = "ok " if r.passed else "BAD"
            tail = "" if r.witness is None else f"  {_witness_text(r.witness)}"
            lines.append(f"  [{mark}] {r.axiom}{tail}")
        return "\n".join(lines)


def _witness_text(w: Dict[str, Any]) -> str:
    return ", ".join(f"{k}={v}" for k, v in w.items())


def compare(axiom: str, fld: FieldSpec, lhs, rhs) -> AxiomResult:
    """Exact tensor comparison; the witness is the first differing multi-index."""
    lhs = fld.reduce(lhs)
    rhs = fld.reduce(rhs)
    if lhs.shape != rhs.shape:
        raise DimensionMismatch(f"{axiom}: sides have shapes {lhs.shape} and {rhs.shape}")
    diff = np.argwhere(np.asarray(lhs != rhs, dtype=bool))
    if len(diff) == 0:
        return AxiomResult(axiom, True)
    idx = tuple(int(i) for i in diff[0])
    return AxiomResult(axiom, False, {
        "index": list(idx),
        "lhs": fld.format(lhs[idx]),
        "rhs": fld.format(rhs[idx]),
    })
