import pytest

from chunkmind.memory import KnowledgeBase, SpatialValue, utc
from chunkmind.spm import (
    ConflictError,
    Direction,
    DuplicateVertex,
    LayerMismatch,
    LayerOrderError,
    SpatialMap,
    UnknownVertex,
    Unlocatable,
    express_position,
)


@pytest.fixture
def room():
    spm = SpatialMap()
    spm.add_sapp("community", 2)
    spm.add_sapp("house", 1, parent="community")
    for sapp in ["table", "fridge", "sofa"]:
        spm.add_sapp(sapp, 0, parent="house")
    spm.set_direction("table", Direction.BACK, "sofa")
    spm.set_direction("sofa", Direction.RIGHT, "fridge")
    return spm


def test_direction_inverses():
    assert Direction.LEFT.inverse is Direction.RIGHT
    assert Direction.FRONT.inverse is Direction.BACK
    assert Direction.UP.inverse is Direction.DOWN
    assert Direction.DOWN.inverse is Direction.UP


def test_add_duplicate_vertex(room):
    with pytest.raises(DuplicateVertex):
        room.add_sapp("fridge", 0)


def test_layer_order_enforced(room):
    with pytest.raises(LayerOrderError):
        room.add_sapp("attic", 1, parent="fridge")


def test_unknown_parent(room):
    with pytest.raises(UnknownVertex):
        room.add_sapp("shed", 0, parent="barn")


def test_set_direction_symmetry(room):
    assert room.matrix["sofa"][Direction.FRONT] == "table"
    assert room.matrix["fridge"][Direction.LEFT] == "sofa"


def test_set_direction_conflict(room):
    with pytest.raises(ConflictError):
        room.set_direction("table", Direction.BACK, "fridge")


def test_set_direction_cross_layer(room):
    with pytest.raises(LayerMismatch):
        room.set_direction("table", Direction.UP, "house")


def test_neighbors_rows(room):
    table = room.neighbors("table")
    assert table[Direction.BACK] == "sofa"
    assert sum(v is not None for v in table.values()) == 1
    sofa = room.neighbors("sofa")
    assert sofa[Direction.RIGHT] == "fridge" and sofa[Direction.FRONT] == "table"


def test_neighbors_unknown(room):
    with pytest.raises(UnknownVertex):
        room.neighbors("ghost")


def test_scope_union(room):
    assert room.scope_of("house") == {"table", "fridge", "sofa"}
    assert room.scope_of("fridge") == {"fridge"}
    assert room.scope_of("community") == {"table", "fridge", "sofa"}


def test_scope_grows_with_new_leaf(room):
    room.add_sapp("bed", 0, parent="house")
    # brute-force recomputation of the leaf union as oracle
    def leaves(v):
        kids = room.children.get(v, [])
        if not kids:
            return {v}
        out = set()
        for k in kids:
            out |= leaves(k)
        return out

    assert room.scope_of("house") == leaves("house") == {"table", "fridge", "sofa", "bed"}


def _kb(room):
    kb = KnowledgeBase()
    for node in ["cat", "apple", "jack", "table", "fridge", "sofa", "house", "community"]:
        kb.ensure_entity(node)
    kb.update_attribute("cat", "spatial-position", SpatialValue("up", "fridge"), at=utc(2021, 9, 1))
    kb.update_attribute(
        "apple", "spatial-position", SpatialValue("in", "fridge"), quantity=3, at=utc(2021, 9, 1)
    )
    kb.update_attribute("jack", "spatial-position", SpatialValue("up", "sofa"), at=utc(2021, 9, 1))
    return kb


def test_type_a_direction(room):
    kb = _kb(room)
    stmt = express_position(room, kb, "cat", observer="jack")
    assert stmt.kind == "direction"
    assert (stmt.spw, stmt.sapp) == ("on", "fridge")


def test_type_b_when_no_direction(room):
    stmt = express_position(room, _kb(room), "apple")
    assert stmt.kind == "scope"
    assert (stmt.spw, stmt.sapp) == ("in", "fridge")


def test_type_b_when_observer_in_other_layer(room):
    kb = _kb(room)
    kb.update_attribute("nana", "spatial-position", SpatialValue("in", "house"), at=utc(2021, 9, 2))
    stmt = express_position(room, kb, "cat", observer="nana")
    assert stmt.kind == "scope" and stmt.sapp == "house"


def test_via_filters_anchor(room):
    kb = _kb(room)
    behind = express_position(room, kb, "sofa", via="table")
    left = express_position(room, kb, "sofa", via="fridge")
    assert (behind.spw, behind.sapp) == ("behind", "table")
    assert (left.spw, left.sapp) == ("on the left side of", "fridge")


def test_unlocatable(room):
    with pytest.raises(Unlocatable):
        express_position(room, _kb(room), "ghost")


def test_statement_names_one_spw_and_vertex_sapp(room):
    kb = _kb(room)
    for target, kwargs in [("cat", {}), ("apple", {}), ("sofa", {}), ("house", {})]:
        stmt = express_position(room, kb, target, **kwargs)
        assert stmt.sapp in room.layer_of
        if stmt.kind == "direction":
            assert stmt.spw in {"on", "under", "before", "behind",
                                "on the left side of", "on the right side of"}
        else:
            assert stmt.spw == "in"
