"""Regenerate the shipped knowledge base files from code.

Run from the repo root:  python scripts/build_kbs.py
"""

from pathlib import Path

from chunkmind.kbstore import KbBundle, save
from chunkmind.measurement import temperature_model
from chunkmind.memory import KnowledgeBase, SpatialValue, utc
from chunkmind.spm import Direction, SpatialMap

DATA = Path(__file__).resolve().parents[1] / "src" / "chunkmind" / "data"


def queen_bundle() -> KbBundle:
    kb = KnowledgeBase()
    kb.ensure_entity("queen", "Queen Elizabeth", proper=True)
    kb.ensure_entity("charles", "Charles", proper=True)
    for node in ["cat", "dog", "tail", "paw", "apple", "crown", "book",
                 "coffee", "tea", "drink", "fridge"]:
        kb.ensure_entity(node)
    kb.center = "queen"
    kb.vice_centers = ["charles"]

    kb.assert_inclusion("queen", "jewelry", "crown")
    kb.assert_inclusion("queen", "pet", "cat")
    kb.assert_inclusion("queen", "pet", "dog")
    kb.assert_inclusion("cat", "part", "tail")
    kb.assert_inclusion("cat", "part", "paw")
    kb.assert_inclusion("drink", "kind", "coffee")
    kb.assert_inclusion("drink", "kind", "tea")

    kb.assert_virtual("queen", "son", "charles")
    kb.assert_virtual("charles", "mother", "queen")
    kb.assert_virtual("dog", "friend", "cat", bidirectional=True)

    t0 = utc(2021, 9, 1, 9, 0)
    kb.update_attribute("apple", "color", "red", at=t0)
    kb.update_attribute("apple", "spatial-position", SpatialValue("in", "fridge"), at=t0)
    kb.update_attribute("dog", "name", "Wrote", at=t0)
    kb.update_attribute("tail", "color", "black", at=t0)
    kb.update_attribute("paw", "color", "black", at=t0)
    kb.update_attribute("crown", "quantity", "twelve", quantity=12, at=t0)

    spm = SpatialMap()
    spm.add_sapp("fridge", 0)

    return KbBundle(kb, spm, {}, {"owner": "queen"})


def house_bundle() -> KbBundle:
    kb = KnowledgeBase()
    kb.ensure_entity("jack", "Jack", proper=True)
    kb.ensure_entity("nana", "Nana", proper=True)
    kb.ensure_entity("community", "**community", proper=True)
    for node in ["apple", "cat", "table", "fridge", "sofa", "house"]:
        kb.ensure_entity(node)
    kb.center = "nana"
    kb.vice_centers = ["jack"]

    spm = SpatialMap()
    spm.add_sapp("community", 2)
    spm.add_sapp("house", 1, parent="community")
    spm.add_sapp("table", 0, parent="house")
    spm.add_sapp("fridge", 0, parent="house")
    spm.add_sapp("sofa", 0, parent="house")
    spm.set_direction("table", Direction.BACK, "sofa")
    spm.set_direction("sofa", Direction.RIGHT, "fridge")

    kb.update_attribute(
        "apple", "spatial-position", SpatialValue("in", "fridge"),
        quantity=3, at=utc(2021, 9, 29, 11, 0),
    )
    kb.update_attribute(
        "cat", "spatial-position", SpatialValue("up", "fridge"), at=utc(2021, 9, 20, 8, 0)
    )
    kb.update_attribute(
        "jack", "spatial-position", SpatialValue("up", "sofa"), at=utc(2021, 10, 1, 16, 30)
    )
    kb.update_attribute(
        "nana", "spatial-position", SpatialValue("in", "house"), at=utc(2021, 9, 1, 0, 0)
    )

    context = {
        "owner": "jack",
        "speaker": "jack",
        "addressee": "nana",
        "owner_root": "house",
        "session_start": "2021-10-01T17:05:00Z",
    }
    return KbBundle(kb, spm, {"temperature": temperature_model()}, context)


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    save(queen_bundle(), DATA / "queen.kb.json")
    save(house_bundle(), DATA / "house.kb.json")
    print(f"wrote {DATA / 'queen.kb.json'}")
    print(f"wrote {DATA / 'house.kb.json'}")


if __name__ == "__main__":
    main()
