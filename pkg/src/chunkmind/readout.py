"""Sentence generation from the store in the three data-reading modes.

Defining readouts walk every attribute of a node; set readouts only surface
sets and inclusion; process readouts verbalize an event's roles. Generated
sentences follow the article-free table style (no terminal punctuation),
except process readouts which article their entity roles.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from chunkmind.lexicon import Lexicon
from chunkmind.memory import KnowledgeBase, SpatialValue, UnknownNode
from chunkmind.spm import DEFAULT_SPW, SCOPE_RELATION, Direction
from chunkmind.surface import conjoin, sentence_case


class Mode(str, Enum):
    DRM = "DRM"
    SRM = "SRM"
    PRM = "PRM"


class MissingActiveRole(Exception):
    pass


@dataclass
class Readout:
    mode: Mode
    subject: str
    sentence: str
    asc: Optional[str] = None
    object: object = None
    verb: Optional[str] = None


def value_text(kb: KnowledgeBase, value) -> str:
    """Render a record value; spatial anchors become '<spw> <sapp>'."""
    if isinstance(value, SpatialValue):
        if value.relation == SCOPE_RELATION:
            word = DEFAULT_SPW.scope_word()
        else:
            word = DEFAULT_SPW.direction_word(Direction(value.relation))
        return f"{word} {kb.display(value.sapp)}"
    if isinstance(value, str) and value in kb:
        return kb.display(value)
    return str(value)


def _check_node(kb: KnowledgeBase, node: str) -> None:
    if node not in kb:
        raise UnknownNode(f"node {node!r} not in the knowledge base")


def read_defining(
    kb: KnowledgeBase, node: str, lex: Optional[Lexicon] = None, brief: bool = False
) -> list[Readout]:
    """Full readouts from a node: sheet values, labeled solid children
    grouped per space, and virtual relations in both stored directions."""
    _check_node(kb, node)
    subject = kb.display(node)
    out: list[Readout] = []

    sheet = kb.sheets.get(node)
    if sheet is not None:
        for rec in sheet.records:
            if not rec.is_open:
                continue
            val = value_text(kb, rec.value)
            omit = (
                brief
                and lex is not None
                and isinstance(rec.value, str)
                and lex.lookup(rec.value) is not None
                and lex.lookup(rec.value).space_hint == rec.space
            )
            text = f"{subject} is {val}" if omit else f"{subject}'s {rec.space} is {val}"
            out.append(Readout(Mode.DRM, node, sentence_case(text), asc=rec.space, object=rec.value))

    for space, children in _grouped_children(kb, node):
        names = [kb.display(c) for c in children]
        link = "are" if len(names) > 1 else "is"
        text = f"{subject}'s {space} {link} {conjoin(names)}"
        out.append(Readout(Mode.DRM, node, sentence_case(text), asc=space, object=children))

    for edge in kb.dashed_from(node):
        text = f"{subject}'s {edge.space} is {kb.display(edge.dst)}"
        out.append(Readout(Mode.DRM, node, sentence_case(text), asc=edge.space, object=edge.dst))

    for edge in kb.dashed_to(node):
        text = f"{subject} is {edge.space} of {kb.display(edge.src)}"
        out.append(Readout(Mode.DRM, node, sentence_case(text), asc=edge.space, object=edge.src))

    return out


def read_defining_group(kb: KnowledgeBase, nodes: list[str]) -> list[Readout]:
    """Shared-attribute readouts for a conjoined subject, e.g. two parts
    with the same color: one sentence with plural agreement."""
    for node in nodes:
        _check_node(kb, node)
    if not nodes:
        return []
    out: list[Readout] = []
    first = kb.sheets.get(nodes[0])
    if first is None:
        return []
    for rec in first.records:
        if not rec.is_open:
            continue
        shared = all(
            (other := kb.open_attribute(n, rec.space)) is not None and other.value == rec.value
            for n in nodes[1:]
        )
        if not shared:
            continue
        subject = conjoin([kb.display(n) for n in nodes])
        text = f"{subject}'s {rec.space} are {value_text(kb, rec.value)}"
        out.append(Readout(Mode.DRM, subject, sentence_case(text), asc=rec.space, object=rec.value))
    return out


def read_set(kb: KnowledgeBase, node: str, depth: str = "space") -> list[Readout]:
    """Inclusion-only readouts: leaf values surface as their space alone;
    set-valued spaces surface as the space or the subsets per `depth`;
    virtual relations surface as the space alone."""
    _check_node(kb, node)
    subject = kb.display(node)
    out: list[Readout] = []

    sheet = kb.sheets.get(node)
    if sheet is not None:
        for space in sheet.spaces():
            if sheet.open_record(space) is None:
                continue
            out.append(
                Readout(Mode.SRM, node, sentence_case(f"{subject} has {space}"), asc=space)
            )

    for space, children in _grouped_children(kb, node):
        if depth == "subset":
            names = conjoin([kb.display(c) for c in children])
            text = f"{subject} has {names}"
            out.append(Readout(Mode.SRM, node, sentence_case(text), asc=space, object=children))
        else:
            out.append(
                Readout(Mode.SRM, node, sentence_case(f"{subject} has {space}"), asc=space)
            )

    seen_virtual = []
    for edge in kb.dashed_from(node):
        if edge.space in seen_virtual:
            continue
        seen_virtual.append(edge.space)
        out.append(
            Readout(Mode.SRM, node, sentence_case(f"{subject} has {edge.space}"), asc=edge.space)
        )
    return out


def read_process(kb: KnowledgeBase, event: dict) -> Readout:
    """Verbalize an event: active role, verb, optional passive role."""
    active = event.get("active")
    verb = event.get("verb")
    passive = event.get("passive")
    if not active:
        raise MissingActiveRole("process readouts need an active role")
    if not verb:
        raise MissingActiveRole("process readouts need a verb")
    parts = [_role_np(kb, active), verb]
    if passive:
        parts.append(_role_np(kb, passive, definite=True))
    return Readout(
        Mode.PRM,
        active,
        sentence_case(" ".join(parts)),
        object=passive,
        verb=verb,
    )


def _role_np(kb: KnowledgeBase, role: str, definite: bool = False) -> str:
    if role in kb:
        name = kb.display(role)
        proper = kb.is_proper(role)
    else:
        name = role
        proper = role[:1].isupper()
    if definite and not proper:
        return f"the {name}"
    return name


def _grouped_children(kb: KnowledgeBase, node: str):
    """Solid out-edges grouped by space label, preserving first-seen order."""
    groups: dict[str, list[str]] = {}
    order: list[str] = []
    for edge in kb.solid_children(node):
        if edge.space not in groups:
            groups[edge.space] = []
            order.append(edge.space)
        groups[edge.space].append(edge.dst)
    return [(space, groups[space]) for space in order]
