"""Catalog parsing, round-trips, error taxonomy, and report serialization."""

import json

import pytest

from modlab import catalog as cat
from modlab.classify import classify_submodule
from modlab.errors import (CapExceededError, CatalogParseError,
                           CatalogReferenceError)


def test_default_catalog_counts(default_cat):
    assert len(default_cat.rings) >= 10
    assert len(default_cat.modules) >= 15
    assert len(default_cat.submodules) >= 40
    digest = default_cat.digest()
    assert len(digest) == 64 and int(digest, 16) >= 0


def test_roundtrip(default_cat, tmp_path):
    path = tmp_path / "cat.json"
    cat.write_catalog(default_cat, path)
    again = cat.load_catalog(path)
    assert again.rings == default_cat.rings
    assert again.modules == default_cat.modules
    assert again.submodules == default_cat.submodules
    assert again.caps == default_cat.caps
    assert again.digest() == default_cat.digest()


def test_parse_error_empty():
    with pytest.raises(CatalogParseError) as info:
        cat.parse_catalog("")
    assert info.value.line == 1


def test_unresolved_reference():
    doc = {"modules": {"m": {"kind": "ring_as_module", "ring": "nope"}}}
    with pytest.raises(CatalogReferenceError) as info:
        cat.parse_catalog(json.dumps(doc))
    assert info.value.reference == "nope"
    doc2 = {"submodules": {"s": {"module": "ghost", "generators": []}}}
    with pytest.raises(CatalogReferenceError):
        cat.parse_catalog(json.dumps(doc2))


def test_cyclic_reference_rejected():
    doc = {"modules": {"a": {"kind": "quotient", "base": "a",
                             "kernel_generators": []}}}
    with pytest.raises(CatalogReferenceError):
        cat.parse_catalog(json.dumps(doc))


def test_cap_violation():
    doc = {"rings": {"big": {"kind": "zn", "n": 240}},
           "modules": {"m": {"kind": "free", "ring": "big", "rank": 2}}}
    parsed = cat.parse_catalog(json.dumps(doc))
    ws = cat.Workspace(parsed)
    with pytest.raises(CapExceededError) as info:
        ws.module("m")
    assert info.value.cap_name == "module_size"


def test_unknown_cap_rejected():
    doc = {"defaults": {"caps": {"bogus": 3}}}
    with pytest.raises(CatalogParseError):
        cat.parse_catalog(json.dumps(doc))


def test_workspace_shares_rings(workspace):
    m1 = workspace.module("Z8_ring")
    m2 = workspace.module("Z8sq_ring")
    assert m1.ring is m2.ring


def test_submodules_for_lattice_and_targeted(workspace):
    subs, complete = workspace.submodules_for("Z12_ring")
    assert complete and len(subs) == 5  # proper submodules of Z12
    subs_big, complete_big = workspace.submodules_for("Z36sq_int")
    assert not complete_big
    names = [n for n, _ in subs_big]
    assert "Z36sq_int.N23" in names and any(n.endswith("zero") for n in names)


def test_classification_report_schema(workspace, default_cat):
    N = workspace.submodule("Z30_int.zero")
    report = classify_submodule(N)
    doc = cat.classification_report_doc(report, default_cat.digest())
    assert doc["schema_version"] == 1
    assert doc["catalog_digest"] == default_cat.digest()
    preds = {p["predicate"]: p for p in doc["predicates"]}
    assert preds["C1A"]["holds"] is False
    assert preds["C1A"]["witness"] == [2, 3, 5, 1]
    assert preds["WC1A"]["holds"] is True
    # no floats anywhere
    def no_floats(node):
        if isinstance(node, float):
            raise AssertionError("float in report")
        if isinstance(node, dict):
            for v in node.values():
                no_floats(v)
        if isinstance(node, list):
            for v in node:
                no_floats(v)
    no_floats(doc)


def test_report_dump_deterministic(workspace, default_cat, tmp_path):
    N = workspace.submodule("Z9_int.zero")
    doc = cat.classification_report_doc(classify_submodule(N), default_cat.digest())
    a = cat.dump_report(doc, tmp_path / "a.json")
    b = cat.dump_report(doc, tmp_path / "b.json")
    assert a == b
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    parsed = json.loads(a)
    assert parsed["module"].startswith("Z9")
