"""Bitemporal attribute records and the solid/dashed inclusion graph.

Solid edges are strict hierarchical inclusion (a DAG, no equal sets);
dashed edges are virtual relations that never answer inclusion queries.
Records carry creation/termination timestamps so point-in-time reads work.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional


class KbError(Exception):
    pass


class CycleError(KbError):
    pass


class StaleTimestamp(KbError):
    pass


class UnknownNode(KbError):
    pass


def parse_ts(value: str) -> datetime:
    """ISO-8601; 'Z' suffix accepted; naive input is taken as UTC."""
    dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_ts(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


def utc(year, month, day, hour=0, minute=0, second=0) -> datetime:
    return datetime(year, month, day, hour, minute, second, tzinfo=timezone.utc)


@dataclass(frozen=True)
class SpatialValue:
    """Anchor of a dynamic entity: scope ('in') or one of six directions."""

    relation: str  # "in", "up", "down", "left", "right", "front", "back"
    sapp: str


@dataclass
class AttributeRecord:
    space: str
    value: object  # str or SpatialValue
    cts: datetime
    quantity: Optional[int] = None
    tts: Optional[datetime] = None  # None = open

    def __post_init__(self):
        if self.quantity is not None and self.quantity < 0:
            raise KbError("quantity must be >= 0")
        if self.tts is not None and not self.cts < self.tts:
            raise KbError("record interval needs cts < tts")

    @property
    def is_open(self) -> bool:
        return self.tts is None

    def covers(self, t: datetime) -> bool:
        return self.cts <= t and (self.tts is None or t < self.tts)


@dataclass
class MemorySheet:
    entity: str
    records: list[AttributeRecord] = field(default_factory=list)

    def records_for(self, space: str) -> list[AttributeRecord]:
        return [r for r in self.records if r.space == space]

    def open_record(self, space: str) -> Optional[AttributeRecord]:
        for r in self.records:
            if r.space == space and r.is_open:
                return r
        return None

    def spaces(self) -> list[str]:
        seen = []
        for r in self.records:
            if r.space not in seen:
                seen.append(r.space)
        return seen


@dataclass
class Entity:
    id: str
    name: str
    proper: bool = False


@dataclass(frozen=True)
class Edge:
    src: str
    space: str
    dst: str


class KnowledgeBase:
    """One agent's store: entities, their sheets, and the memory graph."""

    def __init__(self):
        self.entities: dict[str, Entity] = {}
        self.sheets: dict[str, MemorySheet] = {}
        self.solid_out: dict[str, list[Edge]] = {}
        self.solid_in: dict[str, list[Edge]] = {}
        self.dashed_out: dict[str, list[Edge]] = {}
        self.dashed_in: dict[str, list[Edge]] = {}
        self.center: Optional[str] = None
        self.vice_centers: list[str] = []

    # -- entities ----------------------------------------------------------

    def ensure_entity(self, node: str, name: Optional[str] = None, proper: bool = False) -> Entity:
        ent = self.entities.get(node)
        if ent is None:
            ent = Entity(node, name or node, proper)
            self.entities[node] = ent
        return ent

    def display(self, node: str) -> str:
        ent = self.entities.get(node)
        return ent.name if ent else node

    def is_proper(self, node: str) -> bool:
        ent = self.entities.get(node)
        return ent.proper if ent else True

    def __contains__(self, node: str) -> bool:
        return node in self.entities

    def nodes(self) -> list[str]:
        return list(self.entities)

    # -- graph -------------------------------------------------------------

    def assert_inclusion(self, parent: str, space: str, child: str) -> None:
        if parent == child:
            raise CycleError(f"strict inclusion forbids {parent} > {child}")
        if self.query_inclusion(child, parent):
            raise CycleError(f"{parent} > {child} would close an inclusion cycle")
        self.ensure_entity(parent)
        self.ensure_entity(child)
        edge = Edge(parent, space, child)
        if edge not in self.solid_out.setdefault(parent, []):
            self.solid_out[parent].append(edge)
            self.solid_in.setdefault(child, []).append(edge)

    def assert_virtual(self, src: str, space: str, dst: str, bidirectional: bool = False) -> None:
        if src == dst:
            raise KbError("virtual self-relations are rejected")
        self.ensure_entity(src)
        self.ensure_entity(dst)
        edge = Edge(src, space, dst)
        if edge not in self.dashed_out.setdefault(src, []):
            self.dashed_out[src].append(edge)
            self.dashed_in.setdefault(dst, []).append(edge)
        if bidirectional:
            self.assert_virtual(dst, space, src, bidirectional=False)

    def query_inclusion(self, parent: str, child: str) -> bool:
        """True iff child is reachable from parent via solid edges (strict)."""
        if parent == child:
            return False
        seen = {parent}
        queue = deque([parent])
        while queue:
            node = queue.popleft()
            for edge in self.solid_out.get(node, ()):
                if edge.dst == child:
                    return True
                if edge.dst not in seen:
                    seen.add(edge.dst)
                    queue.append(edge.dst)
        return False

    def solid_children(self, node: str) -> list[Edge]:
        return list(self.solid_out.get(node, ()))

    def solid_parents(self, node: str) -> list[Edge]:
        return list(self.solid_in.get(node, ()))

    def dashed_from(self, node: str) -> list[Edge]:
        return list(self.dashed_out.get(node, ()))

    def dashed_to(self, node: str) -> list[Edge]:
        return list(self.dashed_in.get(node, ()))

    def all_edges(self) -> tuple[list[Edge], list[Edge]]:
        solid = [e for edges in self.solid_out.values() for e in edges]
        dashed = [e for edges in self.dashed_out.values() for e in edges]
        return solid, dashed

    # -- sheets ------------------------------------------------------------

    def sheet(self, entity: str) -> MemorySheet:
        if entity not in self.sheets:
            self.sheets[entity] = MemorySheet(entity)
        return self.sheets[entity]

    def update_attribute(
        self,
        entity: str,
        space: str,
        value,
        quantity: Optional[int] = None,
        at: Optional[datetime] = None,
    ) -> AttributeRecord:
        """Close the open record for (entity, space) at `at` and open a new one."""
        if at is None:
            at = datetime.now(timezone.utc)
        self.ensure_entity(entity)
        sheet = self.sheet(entity)
        current = sheet.open_record(space)
        if current is not None:
            if at < current.cts:
                raise StaleTimestamp(
                    f"{entity}/{space}: update at {format_ts(at)} predates open record"
                )
            if at == current.cts:
                # closing at the creation instant would leave an empty interval
                sheet.records.remove(current)
            else:
                current.tts = at
        record = AttributeRecord(space, value, at, quantity=quantity)
        sheet.records.append(record)
        return record

    def attribute_at(self, entity: str, space: str, t: datetime) -> Optional[AttributeRecord]:
        sheet = self.sheets.get(entity)
        if sheet is None:
            return None
        for r in sheet.records:
            if r.space == space and r.covers(t):
                return r
        return None

    def open_attribute(self, entity: str, space: str) -> Optional[AttributeRecord]:
        sheet = self.sheets.get(entity)
        return sheet.open_record(space) if sheet else None
