import json

import numpy as np
import pytest

from bundle import (BUNDLE_VERSION, ActionEntry, Bundle, CoactionEntry, DualActionEntry,
                    bundle_bytes, decode_matrix, dump_bundle, encode_matrix, export_bytes,
                    load_bundle, parse_bundle, report_from_json, reserialize)
from catalog import (group_algebra, monoid_bialgebra, subgroup_partial_action_on_k,
                     subgroup_partial_coaction_on_k)
from coalg import dual_algebra, ground_coalgebra
from errors import BundleError, DimensionMismatch, FieldMismatch, NoAntipode
from hopf import Bialgebra, HopfAlgebra
from multilinear import LinearMap, Subspace
from pact import check_partial_module_coalgebra, dual_action_on_dual
from scalars import QQ


def sample_bundle(G, k, fld=QQ) -> Bundle:
    H = group_algebra(G, fld)
    act = subgroup_partial_action_on_k(G, ["e"], fld)
    b = Bundle(fld, metadata={"group": "Z4", "subset": ["e"]})
    b.add("G", G).add("H", H).add("k", k)
    b.add("act", ActionEntry("k", "H", act))
    b.add("co", CoactionEntry("k", "H", subgroup_partial_coaction_on_k(G, ["e", "g^2"], fld)))
    b.add("k*", dual_algebra(k))
    b.add("act*", DualActionEntry("k*", "H", dual_action_on_dual(k, H, act)))
    b.add("M", monoid_bialgebra(fld))
    b.add("half", LinearMap(fld, [[fld.parse("1/2"), 0]]))
    b.add("line", Subspace(fld, 2, fld.array([[1, 1]])))
    return b

# ---------------------------------------------------------
# Canonical round trip
# ---------------------------------------------------------
def test_round_trip_is_byte_identical(z4, k):
    text = sample_bundle(z4, k).dumps()
    assert parse_bundle(text).dumps() == text
    assert reserialize(text.encode("utf-8")) == text.encode("utf-8")

def test_round_trip_over_prime_field(z4, f5):
    data = bundle_bytes(sample_bundle(z4, ground_coalgebra(f5), f5))
    assert reserialize(data) == data
    assert json.loads(data)["field"] == {"kind": "Fp", "p": 5}

def test_decoded_objects_keep_their_types(z4, k):
    b = parse_bundle(sample_bundle(z4, k).dumps())
    assert isinstance(b.hopf("H"), HopfAlgebra)
    assert isinstance(b.get("M"), Bialgebra) and not isinstance(b.get("M"), HopfAlgebra)
    assert b.get("G").order == 4
    act = b.get("act", ActionEntry)
    assert act.partial and act.action.matrix.shape == (1, 4)
    assert check_partial_module_coalgebra(b.coalgebra("k"), b.hopf("H"), act.action).passed
    assert b.get("half").matrix[0, 0] == QQ.parse("1/2")
    assert b.get("line").dim == 1
    assert b.names(ActionEntry) == ["act"]

def test_coalgebra_reference_accepts_hopf(z4, k):
    b = sample_bundle(z4, k)
    assert b.coalgebra("H").dim == 4
    assert b.algebra("M").dim == 2
    with pytest.raises(BundleError):
        b.coalgebra("act")

def test_key_order_does_not_matter(z4, k):
    raw = json.loads(sample_bundle(z4, k).dumps())
    shuffled = dict(reversed(list(raw["objects"].items())))
    raw["objects"] = shuffled
    again = parse_bundle(json.dumps(raw))
    assert again.dumps() == sample_bundle(z4, k).dumps()

def test_dump_and_load(tmp_path, z4, k):
    b = sample_bundle(z4, k)
    p = dump_bundle(b, tmp_path / "b.json")
    assert p.read_bytes() == bundle_bytes(b)
    assert load_bundle(p).dumps() == b.dumps()

# ---------------------------------------------------------
# Rejections
# ---------------------------------------------------------
def test_bad_documents_are_refused(z4, k):
    good = json.loads(sample_bundle(z4, k).dumps())
    with pytest.raises(BundleError):
        parse_bundle("{not json")
    with pytest.raises(BundleError):
        parse_bundle("[]")
    with pytest.raises(BundleError):
        parse_bundle(json.dumps(dict(good, version="0")))
    broken = json.loads(json.dumps(good))
    broken["objects"]["act"]["hopf"] = "nowhere"
    with pytest.raises(BundleError):
        parse_bundle(json.dumps(broken))
    broken = json.loads(json.dumps(good))
    broken["objects"]["k"]["type"] = "sheaf"
    with pytest.raises(BundleError):
        parse_bundle(json.dumps(broken))

def test_bad_shapes_are_refused(z4, k):
    good = json.loads(sample_bundle(z4, k).dumps())
    broken = json.loads(json.dumps(good))
    broken["objects"]["H"]["antipode"]["shape"] = [3, 4]
    with pytest.raises(DimensionMismatch):
        parse_bundle(json.dumps(broken))
    broken = json.loads(json.dumps(good))
    broken["objects"]["half"]["matrix"]["rows"] = [["1"]]
    with pytest.raises(DimensionMismatch):
        parse_bundle(json.dumps(broken))
    with pytest.raises(BundleError):
        decode_matrix(QQ, {"rows": []}, where="x")

def test_field_mismatch_on_add(z2, f5):
    with pytest.raises(FieldMismatch):
        Bundle(QQ).add("H", group_algebra(z2, f5))

def test_missing_object(z4, k):
    with pytest.raises(BundleError):
        sample_bundle(z4, k).get("nothing")

# ---------------------------------------------------------
# Matrices, reports and artifacts
# ---------------------------------------------------------
def test_matrix_encoding_is_canonical():
    m = QQ.array([[QQ.parse("2/4"), -3], [0, QQ.parse("6/3")]])
    enc = encode_matrix(QQ, m)
    assert enc == {"shape": [2, 2], "rows": [["1/2", "-3"], ["0", "2"]]}
    assert np.all(decode_matrix(QQ, enc, (2, 2)) == m)

def test_reports_survive_the_bundle(z4, kZ4, k):
    b = sample_bundle(z4, k)
    bad = subgroup_partial_action_on_k(z4, ["e", "g"])
    b.attach("pmc", check_partial_module_coalgebra(k, kZ4, bad))
    again = parse_bundle(b.dumps())
    rep = report_from_json(again.reports["pmc"])
    assert not rep.passed
    assert rep.first_failure().witness is not None
    assert again.dumps() == b.dumps()

def test_export_bytes(z4, kZ4, k):
    b = sample_bundle(z4, k)
    act = b.get("act").action
    b.attach("pmc", check_partial_module_coalgebra(k, kZ4, act))
    files = export_bytes(b, "z4/e")
    assert sorted(files) == ["z4_e.bundle.json", "z4_e.pmc.csv"]
    assert files["z4_e.bundle.json"] == bundle_bytes(b)
    assert files["z4_e.pmc.csv"].decode("utf-8").splitlines()[0] == "report,axiom,pass,witness"
    assert "bundle.bundle.json" in export_bytes(b)

def test_version_constant():
    assert json.loads(Bundle(QQ).dumps())["version"] == BUNDLE_VERSION

def test_hopf_entries_are_verified_once(z4, k):
    raw = json.loads(sample_bundle(z4, k).dumps())
    raw["objects"]["H"]["antipode"]["rows"] = [["0"] * 4 for _ in range(4)]
    b = parse_bundle(json.dumps(raw))
    # decoding alone does not judge the antipode
    assert b.hopf("H", verify=False).S[0, 0] == 0
    with pytest.raises(NoAntipode):
        b.hopf("H")
    good = sample_bundle(z4, k)
    assert good.hopf("H") is good.hopf("H")
    assert "H" in good._verified
    good.add("H", group_algebra(z4))
    assert "H" not in good._verified

def test_malformed_reports_are_refused():
    with pytest.raises(BundleError):
        report_from_json({"title": "x", "results": [{"pass": True}]})
    with pytest.raises(BundleError):
        report_from_json({"title": "x", "results": 3})
