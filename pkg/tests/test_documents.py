import json

import pytest

from pmlevels.documents import (DocumentError, basis_from_doc, detect_kind, dumps,
                                family_from_doc, family_to_doc, load_document, load_map,
                                space_from_doc, space_to_doc)
from pmlevels.levels import delta_transform

from conftest import SAMPLES


def test_space_roundtrip(pm2):
    doc = space_to_doc(pm2)
    assert space_from_doc(json.loads(dumps(doc))) == pm2
    assert doc["alpha"] == {"x|y": [{"at": "2", "to": "1/2"}, {"at": "5", "to": "1"}]}


def test_family_roundtrip(f2):
    assert family_from_doc(family_to_doc(f2)) == f2


def test_dumps_canonical(pm2):
    a = dumps(space_to_doc(pm2))
    assert a.endswith("\n") and a == dumps(json.loads(a))


def test_provenance_allowed(pm2):
    doc = space_to_doc(pm2, {"seed": 1})
    assert space_from_doc(doc) == pm2


@pytest.mark.parametrize("doc, kind", [
    ({"alpha": {}}, "space"), ({"levels": {}}, "family"), ({"table": {}}, "table"),
    ({"assign": {}}, "map"), ({"basis": []}, "basis"), ([], "basis"),
])
def test_detect(doc, kind):
    assert detect_kind(doc) == kind


@pytest.mark.parametrize("doc", [
    {"carrier": ["x", "y"], "tnorm": "product", "alpha": {"x|y": [{"at": "2", "to": "3/2"}]}},
    {"carrier": ["x", "y"], "tnorm": "product", "alpha": {"x-y": [{"at": "2", "to": "1"}]}},
    {"carrier": ["x", "y"], "tnorm": "hamacher", "alpha": {"x|y": [{"at": "2", "to": "1"}]}},
    {"carrier": ["x", "y"], "tnorm": "product", "alpha": {}},
    {"carrier": ["x", "y"], "tnorm": "product", "alpha": {"x|y": [{"at": "0.5", "to": "1"}]}},
    {"carrier": "xy", "tnorm": "product", "alpha": {}},
    {"carrier": ["x"], "tnorm": "product", "alpha": {}, "junk": 1},
])
def test_bad_space(doc):
    with pytest.raises(DocumentError):
        space_from_doc(doc)


def test_bad_kind():
    with pytest.raises(DocumentError):
        detect_kind({"nothing": 1})
    with pytest.raises(DocumentError):
        detect_kind(3)
    with pytest.raises(DocumentError):
        basis_from_doc({"basis": [{"carrier": ["x"], "table": {"x|>x": "1"}}]})


def test_load_files(tmp_path, pm2):
    kind, obj = load_document(str(SAMPLES / "pm2.json"))
    assert (kind, obj) == ("space", pm2)
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(DocumentError, match="invalid JSON"):
        load_document(str(bad))
    with pytest.raises(DocumentError, match="cannot read"):
        load_document(str(tmp_path / "missing.json"))


def test_load_map(pm2):
    f, X, Y = load_map(str(SAMPLES / "id_pm2.json"))
    assert X == Y == pm2 and f("x") == "x"


def test_load_map_errors(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"assign": {"x": "x", "y": "y"}}))
    with pytest.raises(DocumentError, match="no domain"):
        load_map(str(m))
    m.write_text(json.dumps({"domain": str(SAMPLES / "pm2.json"), "codomain": str(SAMPLES / "pm2.json"),
                             "assign": {"x": "z", "y": "y"}}))
    with pytest.raises(DocumentError):
        load_map(str(m))
    m.write_text(json.dumps({"domain": str(SAMPLES / "f2.json"), "codomain": str(SAMPLES / "pm2.json"),
                             "assign": {"x": "x", "y": "y"}}))
    with pytest.raises(DocumentError, match="space document"):
        load_map(str(m))


def test_delta_document_matches_sample(pm2):
    assert dumps(family_to_doc(delta_transform(pm2))) == dumps(json.loads((SAMPLES / "f2.json").read_text()))
