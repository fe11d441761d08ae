"""End-to-end utterance pipeline: segment, classify, resolve, plan, execute.

Each utterance runs against the knowledge base and the spatial map inside a
dialogue context (speaker, addressee, owner, clock). Verifications and
searches never mutate the store; descriptions and feasible actions do.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from enum import Enum
from typing import Callable, Optional

from chunkmind.lexicon import Chunk, Lexicon, Minor, classify, seed_lexicon, segment
from chunkmind.measurement import UnknownQuantityWord, eval_quantity
from chunkmind.memory import KnowledgeBase, SpatialValue
from chunkmind.readout import Mode, read_defining
from chunkmind.spm import SpatialMap, Unlocatable, WORD_TO_RELATION, express_position
from chunkmind.tasks import (
    TaskSentence,
    TaskType,
    UnclassifiableSentence,
    classify_sentence,
    strip_to_description,
)

RESPONSE_YES = "Yes."
RESPONSE_NO = "No."
RESPONSE_SURE = "Sure."
RESPONSE_OK = "OK."
RESPONSE_UNKNOWN = "I don't know."
RESPONSE_REFUSE = "Sorry, I can't."
RESPONSE_CLARIFY = "I don't understand."

SPEAKER_PRONOUNS = {"i", "we", "me", "my", "us", "our"}
ADDRESSEE_PRONOUNS = {"you", "your"}

SPATIAL_SPACE = "spatial-position"


class UnresolvedEntity(Exception):
    pass


def stepping_clock(start: datetime, step: timedelta = timedelta(minutes=1)) -> Callable[[], datetime]:
    """Deterministic turn clock: first call returns `start`, then +step."""
    state = {"now": start}

    def clock() -> datetime:
        now = state["now"]
        state["now"] = now + step
        return now

    return clock


@dataclass
class DialogueContext:
    speaker: str
    addressee: str
    owner: str
    owner_root: Optional[str] = None
    clock: Optional[Callable[[], datetime]] = None

    def __post_init__(self):
        if self.speaker == self.addressee:
            raise ValueError("speaker and addressee must differ")

    def now(self) -> datetime:
        return self.clock() if self.clock else datetime.now(timezone.utc)


class TaskKind(str, Enum):
    VERIFY_INCLUSION = "VerifyInclusion"
    VERIFY_QUANTITY = "VerifyQuantity"
    VERIFY_RELATION = "VerifyRelation"
    SEARCH_ATTRIBUTE = "SearchAttribute"
    ASSERT_DESCRIPTION = "AssertDescription"
    ACTION = "Action"


@dataclass
class ResolvedTask:
    kind: TaskKind
    subject: Optional[str] = None
    object: Optional[str] = None
    space: Optional[str] = None
    value: Optional[str] = None
    demand_word: Optional[str] = None
    verb: Optional[str] = None
    payload: Optional[TaskSentence] = None


# -- step 3: object resolution ----------------------------------------------


def resolve_objects(chunks: list[Chunk], ctx: DialogueContext, kb: KnowledgeBase) -> list[Chunk]:
    """Bind pronouns and KB entities; strip a leading vocative."""
    body = list(chunks)
    if len(body) >= 2 and body[0].is_data_like and body[1].text == ",":
        body = body[2:]

    names = {kb.display(node).lower(): node for node in kb.entities}
    out = []
    for chunk in body:
        bound = Chunk(list(chunk.words), chunk.text, chunk.cls, chunk.plural, chunk.binding)
        if chunk.text in SPEAKER_PRONOUNS:
            bound.binding = ctx.speaker
        elif chunk.text in ADDRESSEE_PRONOUNS:
            bound.binding = ctx.addressee
        elif chunk.is_data_like and not chunk.is_minor(Minor.VERB):
            if chunk.text in kb.entities:
                bound.binding = chunk.text
            elif chunk.text in names:
                bound.binding = names[chunk.text]
        out.append(bound)
    return out


# -- step 4: task planning ---------------------------------------------------


def plan_tasks(
    sentence: TaskSentence, ctx: DialogueContext, kb: KnowledgeBase, lex: Lexicon
) -> list[ResolvedTask]:
    chunks = sentence.chunks
    if sentence.task is TaskType.VERIFICATION:
        return _plan_verification(sentence, ctx, kb)
    if sentence.task is TaskType.SEARCH:
        return _plan_search(sentence, lex)
    if sentence.imperative:
        return _plan_action(sentence, ctx)
    return [ResolvedTask(TaskKind.ASSERT_DESCRIPTION, payload=sentence)]


def _first_entity(chunks: list[Chunk]):
    for c in chunks:
        if c.is_data_like and not c.is_minor(Minor.VERB) and not c.is_minor(Minor.MEASUREMENT):
            if not c.is_minor(Minor.BASIC_ATTRIBUTE):
                return c
    return None


def _measurement_word(chunks: list[Chunk]) -> Optional[str]:
    for c in chunks:
        if c.is_minor(Minor.MEASUREMENT):
            return c.text
    return None


def _pivot(chunks: list[Chunk], minor: Minor) -> Optional[int]:
    for i, c in enumerate(chunks):
        if c.is_minor(minor):
            return i
    return None


def _plan_verification(sentence: TaskSentence, ctx: DialogueContext, kb: KnowledgeBase):
    desc = strip_to_description(sentence)
    chunks = desc.chunks
    if sentence.mode is Mode.SRM:
        i = _pivot(chunks, Minor.HAVE)
        subject = _subject_binding(chunks[:i], ctx)
        obj_chunk = _first_entity(chunks[i + 1 :])
        obj = obj_chunk.binding if obj_chunk and obj_chunk.binding else None
        word = _measurement_word(chunks[i + 1 :]) or "any"
        if subject == ctx.owner:
            return [
                ResolvedTask(TaskKind.VERIFY_INCLUSION, subject=ctx.owner, object=obj),
                ResolvedTask(TaskKind.VERIFY_QUANTITY, object=obj, demand_word=word),
            ]
        return [ResolvedTask(TaskKind.VERIFY_RELATION, subject=subject, object=obj)]
    if sentence.mode is Mode.DRM:
        i = _pivot(chunks, Minor.BE)
        subj_chunk = _first_entity(chunks[:i])
        subject = subj_chunk.binding if subj_chunk and subj_chunk.binding else (
            subj_chunk.text if subj_chunk else None
        )
        space, value = _predicate(chunks[i + 1 :], chunks[:i])
        return [ResolvedTask(TaskKind.VERIFY_RELATION, subject=subject, space=space, value=value)]
    verb = next((c for c in chunks if c.is_minor(Minor.VERB)), None)
    return [ResolvedTask(TaskKind.VERIFY_RELATION, verb=verb.text if verb else None)]


def _subject_binding(chunks: list[Chunk], ctx: DialogueContext) -> Optional[str]:
    for c in chunks:
        if c.binding:
            return c.binding
    head = _first_entity(chunks)
    return head.text if head else None


def _predicate(after: list[Chunk], before: list[Chunk]):
    """(space, value) of a DRM predicate: basic attribute, spatial phrase,
    or a plain value matched against the subject's possessive space."""
    space = None
    for k in range(len(before) - 1, 0, -1):
        if before[k].is_data_like and before[k - 1].is_minor(Minor.POSSESSIVE):
            space = before[k].text
            break
    for c in after:
        if c.is_minor(Minor.BASIC_ATTRIBUTE):
            return space or c.space_hint, c.text
    prep = next((c for c in after if c.is_minor(Minor.PREPOSITION)), None)
    if prep is not None:
        tail = _first_entity(after)
        sapp = tail.binding or tail.text if tail else None
        return SPATIAL_SPACE, SpatialValue(WORD_TO_RELATION.get(prep.text, "in"), sapp)
    tail = _first_entity(after)
    return space, (tail.binding or tail.text) if tail else None


def _plan_search(sentence: TaskSentence, lex: Lexicon):
    slot = sentence.missing_slot or 0
    interrogative = sentence.chunks[slot]
    key = lex.interrogative_key(interrogative.text)
    space = None
    if key == "spatial-position":
        space = SPATIAL_SPACE
    elif key == "color":
        space = "color"
    subject_chunk = _first_entity(sentence.chunks[slot + 1 :]) or _first_entity(sentence.chunks)
    subject = None
    if subject_chunk is not None:
        subject = subject_chunk.binding or subject_chunk.text
    return [ResolvedTask(TaskKind.SEARCH_ATTRIBUTE, subject=subject, space=space, value=key)]


def _plan_action(sentence: TaskSentence, ctx: DialogueContext):
    chunks = sentence.chunks
    verb = next(c for c in chunks if c.is_minor(Minor.VERB))
    rest = chunks[chunks.index(verb) + 1 :]
    recipient = None
    for c in rest:
        if c.text in SPEAKER_PRONOUNS or c.text in ADDRESSEE_PRONOUNS or c.binding:
            recipient = c.binding
            break
    obj_chunk = None
    for c in reversed(rest):
        if c.is_data_like and not c.is_minor(Minor.MEASUREMENT) and not c.is_minor(Minor.VERB):
            obj_chunk = c
            break
    if obj_chunk is None or obj_chunk.binding is None:
        raise UnresolvedEntity(
            f"action references an unknown entity: {obj_chunk.text if obj_chunk else '?'}"
        )
    word = _measurement_word(rest) or "a"
    return [
        ResolvedTask(
            TaskKind.ACTION,
            subject=recipient or ctx.speaker,
            object=obj_chunk.binding,
            demand_word=word,
            verb=verb.text,
        )
    ]


# -- step 5/6: execution ------------------------------------------------------


def owned_by_default(kb: KnowledgeBase, spm: SpatialMap, ctx: DialogueContext, node: str) -> bool:
    """Default ownership is spatial: the node anchors inside the owner's
    root scope. Explicit inclusion edges from the owner take precedence."""
    if node is None:
        return False
    if kb.query_inclusion(ctx.owner, node):
        return True
    if ctx.owner_root is None:
        return False
    if node == ctx.owner_root:
        return True
    anchor, _ = spm.anchor_of(kb, node)
    if anchor is None:
        return False
    return spm.contains(ctx.owner_root, anchor)


def execute(
    tasks: list[ResolvedTask],
    kb: KnowledgeBase,
    spm: SpatialMap,
    ctx: DialogueContext,
    at: Optional[datetime] = None,
    lex: Optional[Lexicon] = None,
) -> str:
    lex = lex or seed_lexicon()
    checks: list[bool] = []
    for task in tasks:
        if task.kind is TaskKind.VERIFY_INCLUSION:
            checks.append(owned_by_default(kb, spm, ctx, task.object))
        elif task.kind is TaskKind.VERIFY_QUANTITY:
            checks.append(_check_quantity(kb, task))
        elif task.kind is TaskKind.VERIFY_RELATION:
            if task.verb is not None:
                return RESPONSE_UNKNOWN  # no process store to verify against
            checks.append(_check_relation(kb, task))
        elif task.kind is TaskKind.ACTION:
            return _run_action(kb, task, at or ctx.now())
        elif task.kind is TaskKind.SEARCH_ATTRIBUTE:
            return _run_search(kb, spm, ctx, task, lex)
        elif task.kind is TaskKind.ASSERT_DESCRIPTION:
            _apply_description(kb, spm, task.payload, at or ctx.now())
            return RESPONSE_OK
    if checks:
        return RESPONSE_YES if all(checks) else RESPONSE_NO
    return RESPONSE_UNKNOWN


def _check_quantity(kb: KnowledgeBase, task: ResolvedTask) -> bool:
    rec = kb.open_attribute(task.object, SPATIAL_SPACE) if task.object else None
    qty = 0 if rec is None else (1 if rec.quantity is None else rec.quantity)
    try:
        result = eval_quantity(task.demand_word or "any", qty)
    except UnknownQuantityWord:
        return False
    return result if isinstance(result, bool) else qty >= result


def _check_relation(kb: KnowledgeBase, task: ResolvedTask) -> bool:
    if task.subject is None:
        return False
    if task.value is not None:
        if isinstance(task.value, SpatialValue):
            rec = kb.open_attribute(task.subject, SPATIAL_SPACE)
            return rec is not None and rec.value == task.value
        if task.space is not None:
            rec = kb.open_attribute(task.subject, task.space)
            if rec is not None and isinstance(rec.value, str):
                if rec.value.lower() == str(task.value).lower():
                    return True
        for edge in kb.solid_children(task.subject) + kb.dashed_from(task.subject):
            if task.space is not None and edge.space != task.space:
                continue
            if edge.dst == task.value or kb.display(edge.dst).lower() == str(task.value).lower():
                return True
        return False
    if task.object is not None:
        if kb.query_inclusion(task.subject, task.object):
            return True
        return any(e.dst == task.object for e in kb.dashed_from(task.subject))
    return False


def _run_action(kb: KnowledgeBase, task: ResolvedTask, at: datetime) -> str:
    rec = kb.open_attribute(task.object, SPATIAL_SPACE)
    if rec is None:
        return RESPONSE_REFUSE
    qty = 1 if rec.quantity is None else rec.quantity
    demand = eval_quantity(task.demand_word or "a", qty)
    if isinstance(demand, bool):
        demand = 1
    if demand > qty:
        return RESPONSE_REFUSE
    # quantity-in-place decrement at the source anchor; transit is not modeled
    kb.update_attribute(task.object, SPATIAL_SPACE, rec.value, quantity=qty - demand, at=at)
    return RESPONSE_SURE


def _run_search(kb, spm, ctx, task: ResolvedTask, lex: Lexicon) -> str:
    if task.subject is None or task.subject not in kb:
        return RESPONSE_UNKNOWN
    if task.space == SPATIAL_SPACE:
        try:
            return express_position(spm, kb, task.subject, observer=ctx.speaker, ctx=ctx).sentence
        except Unlocatable:
            return RESPONSE_UNKNOWN
    for ro in read_defining(kb, task.subject):
        if task.space is None or ro.asc == task.space:
            if task.value == "person" and ro.asc not in lex.person_spaces:
                continue
            return ro.sentence + "."
    return RESPONSE_UNKNOWN


def _apply_description(kb: KnowledgeBase, spm: SpatialMap, sentence: TaskSentence, at: datetime):
    chunks = sentence.chunks
    if sentence.mode is Mode.DRM:
        i = _pivot(chunks, Minor.BE)
        subj_chunk = _first_entity(chunks[:i])
        if subj_chunk is None:
            return
        subject = subj_chunk.binding or _new_entity(kb, subj_chunk)
        space, value = _predicate(chunks[i + 1 :], chunks[:i])
        if isinstance(value, SpatialValue):
            kb.update_attribute(subject, SPATIAL_SPACE, value, at=at)
        elif space is not None and _is_person_space(space):
            obj_chunk = _first_entity(chunks[i + 1 :])
            obj = obj_chunk.binding or _new_entity(kb, obj_chunk)
            kb.assert_virtual(subject, space, obj)
        elif value is not None and space is not None and _value_is_node(kb, chunks[i + 1 :]):
            obj_chunk = _first_entity(chunks[i + 1 :])
            obj = obj_chunk.binding or _new_entity(kb, obj_chunk)
            kb.assert_inclusion(subject, space, obj)
        elif value is not None and space is None and _value_is_node(kb, chunks[i + 1 :]):
            # "X is Y": the value abstracts the subject
            obj_chunk = _first_entity(chunks[i + 1 :])
            obj = obj_chunk.binding or _new_entity(kb, obj_chunk)
            kb.assert_inclusion(obj, "kind", subject)
        elif value is not None:
            kb.update_attribute(subject, space or "kind", str(value), at=at)
    elif sentence.mode is Mode.SRM:
        i = _pivot(chunks, Minor.HAVE)
        subj_chunk = _first_entity(chunks[:i])
        obj_chunk = _first_entity(chunks[i + 1 :])
        if subj_chunk is None or obj_chunk is None:
            return
        subject = subj_chunk.binding or _new_entity(kb, subj_chunk)
        obj = obj_chunk.binding or _new_entity(kb, obj_chunk)
        space = obj_chunk.space_hint or "member"
        kb.assert_inclusion(subject, space, obj)
        for c in chunks[i + 1 :]:
            if c.is_minor(Minor.BASIC_ATTRIBUTE):
                kb.update_attribute(obj, c.space_hint, c.text, at=at)
    # PRM descriptions acknowledge only; there is no process store


def _is_person_space(space: str) -> bool:
    from chunkmind.lexicon import DEFAULT_PERSON_SPACES

    return space in DEFAULT_PERSON_SPACES


def _value_is_node(kb: KnowledgeBase, after: list[Chunk]) -> bool:
    from chunkmind.lexicon import ENTITY_MINORS

    tail = _first_entity(after)
    if tail is None:
        return False
    if tail.binding is not None or tail.cls is None:
        return True
    return tail.cls.minor in ENTITY_MINORS


def _new_entity(kb: KnowledgeBase, chunk: Chunk) -> str:
    node = chunk.text
    proper = chunk.words[0][:1].isupper()
    kb.ensure_entity(node, name=chunk.words[0] if proper else node, proper=proper)
    return node


# -- whole pipeline -----------------------------------------------------------


def process_utterance(
    text: str,
    ctx: DialogueContext,
    kb: KnowledgeBase,
    spm: SpatialMap,
    lex: Optional[Lexicon] = None,
    at: Optional[datetime] = None,
):
    """Run one utterance through the full pipeline; returns (response, kb)."""
    lex = lex or seed_lexicon()
    tokens = segment(text)
    if not tokens:
        return RESPONSE_CLARIFY, kb
    chunks = classify(tokens, lex)
    try:
        sentence = classify_sentence(chunks)
    except UnclassifiableSentence:
        return RESPONSE_CLARIFY, kb
    sentence.chunks = resolve_objects(sentence.chunks, ctx, kb)
    when = at or ctx.now()
    try:
        tasks = plan_tasks(sentence, ctx, kb, lex)
    except UnresolvedEntity:
        return RESPONSE_REFUSE, kb
    response = execute(tasks, kb, spm, ctx, at=when, lex=lex)
    return response, kb
