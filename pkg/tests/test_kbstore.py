import json

import pytest

from chunkmind import kbstore
from chunkmind.dialogue import process_utterance
from chunkmind.service import make_context
from chunkmind.spm import Direction

from tests.conftest import HOUSE_KB, QUEEN_KB


def test_queen_kb_loads(queen):
    nodes = set(queen.kb.entities)
    assert {"queen", "charles", "cat", "dog", "apple", "crown"} <= nodes
    assert len(nodes) >= 9
    assert queen.kb.center == "queen"


def test_house_kb_matrix_matches_expected(house):
    spm = house.spm
    assert spm.matrix["table"][Direction.BACK] == "sofa"
    assert spm.matrix["sofa"][Direction.FRONT] == "table"
    assert spm.matrix["sofa"][Direction.RIGHT] == "fridge"
    assert spm.matrix["fridge"][Direction.LEFT] == "sofa"


def test_roundtrip_fixpoint():
    for path in [QUEEN_KB, HOUSE_KB]:
        original = path.read_text("utf-8")
        first = kbstore.dumps(kbstore.load(path))
        second = kbstore.dumps(kbstore.loads(first))
        assert first == original
        assert second == first


def test_asymmetric_matrix_rejected(tmp_path):
    doc = json.loads(HOUSE_KB.read_text("utf-8"))
    doc["spm"]["directions"].append({"subject": "table", "direction": "left", "object": "sofa"})
    bad = tmp_path / "bad.kb.json"
    bad.write_text(json.dumps(doc), "utf-8")
    with pytest.raises(kbstore.ValidationError):
        kbstore.load(bad)


def test_cycle_rejected_at_load(tmp_path):
    doc = json.loads(QUEEN_KB.read_text("utf-8"))
    doc["solid_edges"].append({"parent": "cat", "space": "pet", "child": "queen"})
    bad = tmp_path / "bad.kb.json"
    bad.write_text(json.dumps(doc), "utf-8")
    with pytest.raises(kbstore.ValidationError):
        kbstore.load(bad)


def test_undeclared_endpoint_rejected(tmp_path):
    doc = json.loads(QUEEN_KB.read_text("utf-8"))
    doc["solid_edges"].append({"parent": "queen", "space": "pet", "child": "unicorn"})
    bad = tmp_path / "bad.kb.json"
    bad.write_text(json.dumps(doc), "utf-8")
    with pytest.raises(kbstore.ValidationError) as err:
        kbstore.load(bad)
    assert "unicorn" in str(err.value)


def test_overlapping_intervals_rejected(tmp_path):
    doc = json.loads(HOUSE_KB.read_text("utf-8"))
    for sheet in doc["sheets"]:
        if sheet["entity"] == "apple":
            sheet["records"].append(
                {
                    "space": "spatial-position",
                    "value": {"relation": "in", "sapp": "fridge"},
                    "cts": "2021-09-28T00:00:00Z",
                    "tts": "2021-10-05T00:00:00Z",
                }
            )
    bad = tmp_path / "bad.kb.json"
    bad.write_text(json.dumps(doc), "utf-8")
    with pytest.raises(kbstore.ValidationError):
        kbstore.load(bad)


def test_parse_error_has_position(tmp_path):
    bad = tmp_path / "bad.kb.json"
    bad.write_text("{not json", "utf-8")
    with pytest.raises(kbstore.ParseError) as err:
        kbstore.load(bad)
    assert "line" in str(err.value)


def test_save_to_unwritable_path(house, tmp_path):
    target = tmp_path / "missing-dir" / "out.kb.json"
    with pytest.raises(kbstore.IoError):
        kbstore.save(house, target)


def test_save_after_dialogue_has_record_pair(house, tmp_path):
    ctx = make_context(house)
    process_utterance("Nana, do we have any apple?", ctx, house.kb, house.spm)
    process_utterance("Give me an apple.", ctx, house.kb, house.spm)
    out = tmp_path / "after.kb.json"
    kbstore.save(house, out)
    doc = json.loads(out.read_text("utf-8"))
    apple = next(s for s in doc["sheets"] if s["entity"] == "apple")
    spatial = [r for r in apple["records"] if r["space"] == "spatial-position"]
    assert [r["quantity"] for r in spatial] == [3, 2]
    assert spatial[0]["tts"] == "2021-10-01T17:06:00Z"
    assert spatial[1]["cts"] == "2021-10-01T17:06:00Z"
    assert spatial[1]["tts"] == "OPEN"
