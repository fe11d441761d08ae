"""Spatial projection map: per-layer six-direction adjacency plus a scope tree.

Static anchor points (SAPPs) are vertices; each layer keeps a vertex x 6
adjacency matrix whose cells are exclusive and symmetric under direction
inversion. Scope containment runs upward between layers. Dynamic entities
are not vertices; they anchor onto a SAPP through their spatial-position
record.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from chunkmind.memory import KnowledgeBase, SpatialValue
from chunkmind.surface import pluralize, sentence_case


class SpmError(Exception):
    pass


class DuplicateVertex(SpmError):
    pass


class LayerOrderError(SpmError):
    pass


class ConflictError(SpmError):
    pass


class UnknownVertex(SpmError):
    pass


class LayerMismatch(SpmError):
    pass


class Unlocatable(SpmError):
    pass


class Direction(str, Enum):
    LEFT = "left"
    RIGHT = "right"
    FRONT = "front"
    BACK = "back"
    UP = "up"
    DOWN = "down"

    @property
    def inverse(self) -> "Direction":
        return _INVERSE[self]


_INVERSE = {
    Direction.LEFT: Direction.RIGHT,
    Direction.RIGHT: Direction.LEFT,
    Direction.FRONT: Direction.BACK,
    Direction.BACK: Direction.FRONT,
    Direction.UP: Direction.DOWN,
    Direction.DOWN: Direction.UP,
}

SCOPE_RELATION = "in"


@dataclass
class SpwTable:
    """Surface wording for scope, direction, and distance relations."""

    scope_words: list[str] = field(default_factory=lambda: ["in", "inside", "within"])
    direction_words: dict[Direction, list[str]] = field(
        default_factory=lambda: {
            Direction.UP: ["on", "above", "over"],
            Direction.DOWN: ["under", "below", "beneath"],
            Direction.FRONT: ["before"],
            Direction.BACK: ["behind", "after"],
            Direction.LEFT: ["on the left side of"],
            Direction.RIGHT: ["on the right side of"],
        }
    )
    distance_words: list[str] = field(
        default_factory=lambda: ["beside", "nearby", "close to", "next to"]
    )

    def __post_init__(self):
        for d in Direction:
            if not self.direction_words.get(d):
                raise SpmError(f"no surface word for direction {d.value}")

    def direction_word(self, d: Direction) -> str:
        return self.direction_words[d][0]

    def scope_word(self) -> str:
        return self.scope_words[0]


DEFAULT_SPW = SpwTable()

# recognized preposition surface -> anchor relation
WORD_TO_RELATION = {
    "in": "in", "at": "in", "inside": "in", "within": "in", "among": "in",
    "on": "up", "above": "up", "up": "up", "over": "up",
    "under": "down", "below": "down", "beneath": "down",
    "before": "front",
    "behind": "back", "after": "back",
    "on the left side": "left", "on the left side of": "left",
    "on the right side": "right", "on the right side of": "right",
}


@dataclass
class PositionStatement:
    target: str
    spw: str
    sapp: str
    kind: str  # "direction" | "scope"
    sentence: str


class SpatialMap:
    def __init__(self, spw: Optional[SpwTable] = None):
        self.layer_of: dict[str, int] = {}
        self.matrix: dict[str, dict[Direction, Optional[str]]] = {}
        self.parent: dict[str, str] = {}
        self.children: dict[str, list[str]] = {}
        self.spw = spw or DEFAULT_SPW

    # -- construction --------------------------------------------------

    def add_sapp(self, sapp: str, layer: int, parent: Optional[str] = None) -> None:
        if sapp in self.layer_of:
            raise DuplicateVertex(f"SAPP {sapp!r} already present")
        if parent is not None:
            if parent not in self.layer_of:
                raise UnknownVertex(f"parent SAPP {parent!r} unknown")
            if self.layer_of[parent] <= layer:
                raise LayerOrderError(
                    f"parent {parent!r} (layer {self.layer_of[parent]}) must be above layer {layer}"
                )
        self.layer_of[sapp] = layer
        self.matrix[sapp] = {d: None for d in Direction}
        if parent is not None:
            self.parent[sapp] = parent
            self.children.setdefault(parent, []).append(sapp)

    def set_direction(self, subject: str, d: Direction, obj: str) -> None:
        """Record obj at subject's d side; the inverse cell is set atomically."""
        for v in (subject, obj):
            if v not in self.layer_of:
                raise UnknownVertex(f"SAPP {v!r} unknown")
        if subject == obj:
            raise ConflictError("a vertex cannot neighbor itself")
        if self.layer_of[subject] != self.layer_of[obj]:
            raise LayerMismatch(f"{subject!r} and {obj!r} are not in the same layer")
        cur = self.matrix[subject][d]
        cur_inv = self.matrix[obj][d.inverse]
        if cur not in (None, obj) or cur_inv not in (None, subject):
            raise ConflictError(f"{subject!r} {d.value} cell already bound")
        self.matrix[subject][d] = obj
        self.matrix[obj][d.inverse] = subject

    # -- queries ---------------------------------------------------------

    def neighbors(self, vertex: str) -> dict[Direction, Optional[str]]:
        if vertex not in self.matrix:
            raise UnknownVertex(f"SAPP {vertex!r} unknown")
        return dict(self.matrix[vertex])

    def scope_of(self, vertex: str) -> set[str]:
        """Leaf SAPPs under a vertex; a leaf's scope is itself."""
        if vertex not in self.layer_of:
            raise UnknownVertex(f"SAPP {vertex!r} unknown")
        kids = self.children.get(vertex)
        if not kids:
            return {vertex}
        scope: set[str] = set()
        for kid in kids:
            scope |= self.scope_of(kid)
        return scope

    def contains(self, outer: str, vertex: str) -> bool:
        """True iff `outer` is `vertex` or one of its scope ancestors."""
        node: Optional[str] = vertex
        while node is not None:
            if node == outer:
                return True
            node = self.parent.get(node)
        return False

    def layers(self) -> list[int]:
        return sorted(set(self.layer_of.values()))

    def vertices_in(self, layer: int) -> list[str]:
        return [v for v, l in self.layer_of.items() if l == layer]

    def subgraphs(self, layer: int) -> list[list[str]]:
        """Connected components of a layer under the direction links."""
        pending = self.vertices_in(layer)
        out: list[list[str]] = []
        seen: set[str] = set()
        for start in pending:
            if start in seen:
                continue
            comp, stack = [], [start]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                comp.append(v)
                for nb in self.matrix[v].values():
                    if nb is not None and nb not in seen:
                        stack.append(nb)
            out.append(sorted(comp))
        return out

    def anchor_of(self, kb: KnowledgeBase, entity: str):
        """(sapp, relation) an entity hangs on; SAPPs anchor on themselves."""
        if entity in self.layer_of:
            return entity, None
        rec = kb.open_attribute(entity, "spatial-position")
        if rec is not None and isinstance(rec.value, SpatialValue):
            if rec.value.sapp in self.layer_of:
                return rec.value.sapp, rec.value.relation
        return None, None


def position_candidates(spm: SpatialMap, kb: KnowledgeBase, target: str):
    """All (direction, adjacent SAPP) pairs that place the target."""
    out = []
    if target in spm.layer_of:
        for v in spm.layer_of:
            for d in Direction:
                if spm.matrix[v][d] == target:
                    out.append((d, v))
    else:
        anchor, relation = spm.anchor_of(kb, target)
        if anchor is not None and relation is not None and relation != SCOPE_RELATION:
            out.append((Direction(relation), anchor))
    return out


def express_position(
    spm: SpatialMap,
    kb: KnowledgeBase,
    target: str,
    observer: Optional[str] = None,
    ctx=None,
    via: Optional[str] = None,
) -> PositionStatement:
    """Type A (direction word + adjacent SAPP) when observer and target share
    a layer and a direction relation exists; otherwise Type B (scope word +
    containing SAPP)."""
    anchor, relation = spm.anchor_of(kb, target)
    if anchor is None:
        raise Unlocatable(f"{target!r} has no spatial record and no parent")

    candidates = position_candidates(spm, kb, target)
    if via is not None:
        candidates = [c for c in candidates if c[1] == via]
        if not candidates:
            raise Unlocatable(f"{target!r} has no direction relation via {via!r}")

    same_layer = True
    if observer is not None:
        obs_anchor, _ = spm.anchor_of(kb, observer)
        if obs_anchor is not None:
            same_layer = spm.layer_of[obs_anchor] == spm.layer_of[anchor]

    if candidates and same_layer:
        d, sapp = candidates[0]
        spw, kind = spm.spw.direction_word(d), "direction"
    else:
        if target in spm.layer_of:
            container = spm.parent.get(target)
        elif relation == SCOPE_RELATION:
            container = anchor
        else:
            container = spm.parent.get(anchor)
        if container is None:
            if candidates:
                d, sapp = candidates[0]
                spw, kind = spm.spw.direction_word(d), "direction"
            else:
                raise Unlocatable(f"{target!r} has no spatial record and no parent")
        else:
            spw, kind, sapp = spm.spw.scope_word(), "scope", container

    sentence = _render_position(kb, target, spw, sapp, ctx)
    return PositionStatement(target, spw, sapp, kind, sentence)


def _render_position(kb: KnowledgeBase, target: str, spw: str, sapp: str, ctx) -> str:
    name = kb.display(target)
    rec = kb.open_attribute(target, "spatial-position")
    plural = rec is not None and (rec.quantity or 0) > 1
    if plural:
        name = pluralize(name)
    owned = (
        ctx is not None
        and getattr(ctx, "owner_root", None) == target
        and getattr(ctx, "speaker", None) == getattr(ctx, "owner", None)
    )
    if owned:
        subject = f"my {name}"
    elif kb.is_proper(target):
        subject = name
    else:
        subject = f"the {name}"
    verb = "are" if plural else "is"
    obj = kb.display(sapp) if kb.is_proper(sapp) else f"the {kb.display(sapp)}"
    return sentence_case(f"{subject} {verb} {spw} {obj}.")
