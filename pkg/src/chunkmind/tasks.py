"""Sentence classification over the 3x3 task grid and its transformations.

A sentence's reading mode comes from its structure content (be / have /
verb); its task type from interrogatives, auxiliary fronting, and the
terminal. Descriptions turn into verifications by fronting the be-word or
prepending a do-auxiliary, and into searches by substituting the missing
chunk with an interrogative that moves to the front.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from chunkmind.lexicon import (
    Chunk,
    ChunkClass,
    Lexicon,
    Major,
    Minor,
    PLURAL_PRONOUNS,
    TERMINALS,
)
from chunkmind.memory import KnowledgeBase
from chunkmind.readout import Mode
from chunkmind.surface import join_tokens


class TaskType(str, Enum):
    DESCRIPTION = "Description"
    VERIFICATION = "Verification"
    SEARCH = "Search"


class UnclassifiableSentence(Exception):
    pass


class NotADescription(Exception):
    pass


class NotAVerification(Exception):
    pass


class SlotNotData(Exception):
    pass


@dataclass
class TaskSentence:
    chunks: list[Chunk]  # terminal punctuation excluded
    task: TaskType
    mode: Mode
    terminal: Optional[str]
    imperative: bool = False
    missing_slot: Optional[int] = None

    def tokens(self) -> list[str]:
        toks = [w for c in self.chunks for w in c.words]
        if self.terminal:
            toks.append(self.terminal)
        return toks

    def text(self) -> str:
        return join_tokens(self.tokens())

    def find(self, text: str) -> int:
        """Index of the first chunk with the given normalized text."""
        for i, c in enumerate(self.chunks):
            if c.text == text.lower():
                return i
        raise ValueError(f"no chunk {text!r} in sentence")


def _copy_chunks(chunks: list[Chunk]) -> list[Chunk]:
    return [copy.deepcopy(c) for c in chunks]


def _body_start(chunks: list[Chunk]) -> int:
    """Skip a leading vocative (name + comma)."""
    if len(chunks) >= 2 and chunks[0].is_data_like and chunks[1].text == ",":
        return 2
    return 0


def _index_of(chunks: list[Chunk], minor: Minor, start: int = 0) -> Optional[int]:
    for i in range(start, len(chunks)):
        if chunks[i].is_minor(minor):
            return i
    return None


def _verb_index(chunks: list[Chunk], start: int = 0) -> Optional[int]:
    return _index_of(chunks, Minor.VERB, start)


def classify_sentence(chunks: list[Chunk]) -> TaskSentence:
    """Assign (task, mode) to a classified chunk sequence."""
    if not chunks:
        raise UnclassifiableSentence("empty chunk sequence")
    body = list(chunks)
    terminal = None
    while body and body[-1].is_minor(Minor.PUNCTUATION) and body[-1].text in TERMINALS:
        terminal = body.pop().text
    if not body:
        raise UnclassifiableSentence("punctuation only")

    start = _body_start(body)
    scope = body[start:]
    if not scope:
        raise UnclassifiableSentence("vocative only")

    if any(c.is_minor(Minor.BE) for c in scope):
        mode = Mode.DRM
    elif any(c.is_minor(Minor.HAVE) for c in scope):
        mode = Mode.SRM
    elif any(c.is_minor(Minor.VERB) for c in scope):
        mode = Mode.PRM
    else:
        raise UnclassifiableSentence("no structure word or verb found")

    missing = None
    if any(c.is_minor(Minor.INTERROGATIVE) for c in body):
        task = TaskType.SEARCH
        missing = next(i for i, c in enumerate(body) if c.is_minor(Minor.INTERROGATIVE))
    elif terminal == "?" and scope[0].cls is not None and scope[0].cls.minor in (Minor.DO_AUX, Minor.BE):
        task = TaskType.VERIFICATION
    else:
        task = TaskType.DESCRIPTION

    imperative = task is TaskType.DESCRIPTION and scope[0].is_minor(Minor.VERB)
    return TaskSentence(body, task, mode, terminal, imperative=imperative, missing_slot=missing)


# -- agreement ------------------------------------------------------------


def do_auxiliary(subject_chunks: list[Chunk]) -> str:
    """'does' for a single third-person subject, else 'do'."""
    if any(c.is_minor(Minor.CONJUNCTION) for c in subject_chunks):
        return "do"
    head = None
    for c in subject_chunks:
        if c.is_data_like or c.is_pronoun:
            head = c
    if head is None:
        return "do"
    if head.plural or head.text in PLURAL_PRONOUNS:
        return "do"
    return "does"


def _aux_chunk(form: str) -> Chunk:
    return Chunk([form], form, ChunkClass(Major.STRUCTURE, Minor.DO_AUX))


def _set_text(chunk: Chunk, text: str) -> None:
    chunk.words = [text]
    chunk.text = text


# -- B transformation ------------------------------------------------------


def to_verification(sentence: TaskSentence) -> TaskSentence:
    """Description -> Verification: front the be-word (DRM) or prepend a
    do-auxiliary (SRM/PRM, keeping have/verb in place)."""
    if sentence.task is not TaskType.DESCRIPTION:
        raise NotADescription(f"expected a description, got {sentence.task.value}")
    chunks = _copy_chunks(sentence.chunks)

    if sentence.mode is Mode.DRM:
        i = _index_of(chunks, Minor.BE)
        be = chunks.pop(i)
        chunks.insert(0, be)
    elif sentence.mode is Mode.SRM:
        i = _index_of(chunks, Minor.HAVE)
        aux = do_auxiliary(chunks[:i])
        if chunks[i].text == "has":
            _set_text(chunks[i], "have")
        chunks.insert(0, _aux_chunk(aux))
    else:
        i = _verb_index(chunks)
        aux = do_auxiliary(chunks[:i])
        chunks.insert(0, _aux_chunk(aux))

    return TaskSentence(chunks, TaskType.VERIFICATION, sentence.mode, "?")


def strip_to_description(sentence: TaskSentence) -> TaskSentence:
    """Inverse of to_verification (auxiliary inflection restored)."""
    if sentence.task is not TaskType.VERIFICATION:
        raise NotAVerification(f"expected a verification, got {sentence.task.value}")
    chunks = _copy_chunks(sentence.chunks)
    if not chunks:
        raise NotAVerification("empty sentence")

    first = chunks[0]
    if first.is_minor(Minor.BE):
        be = chunks.pop(0)
        j = _np_end(chunks, 0)
        chunks.insert(j, be)
    elif first.is_minor(Minor.DO_AUX):
        aux = chunks.pop(0)
        if sentence.mode is Mode.SRM and aux.text == "does":
            i = _index_of(chunks, Minor.HAVE)
            if i is not None and chunks[i].text == "have":
                _set_text(chunks[i], "has")
    else:
        raise NotAVerification("no fronted be-word or do-auxiliary")

    return TaskSentence(chunks, TaskType.DESCRIPTION, sentence.mode, ".")


def _np_end(chunks: list[Chunk], i: int) -> int:
    """End index (exclusive) of the noun phrase starting at i.

    Grammar: pronoun | [det|measurement]? modifier* head (conj head)*
    with possessive chains continuing into another phrase.
    """
    n = len(chunks)
    if i >= n:
        return i
    if chunks[i].is_pronoun:
        return i + 1
    j = i
    if j < n and (chunks[j].is_determiner or chunks[j].is_minor(Minor.MEASUREMENT)):
        j += 1
    while j < n and chunks[j].is_minor(Minor.BASIC_ATTRIBUTE) and j + 1 < n and chunks[j + 1].is_data_like:
        j += 1
    if j < n and chunks[j].is_data_like and not chunks[j].is_minor(Minor.VERB):
        j += 1
    else:
        return j
    while (
        j + 1 < n
        and chunks[j].is_minor(Minor.CONJUNCTION)
        and chunks[j + 1].is_data_like
        and not chunks[j + 1].is_minor(Minor.VERB)
    ):
        j += 2
    if j < n and chunks[j].is_minor(Minor.POSSESSIVE):
        return _np_end(chunks, j + 1)
    return j


# -- C transformation ------------------------------------------------------


def to_search(
    sentence: TaskSentence,
    missing: int,
    lex: Lexicon,
    kb: Optional[KnowledgeBase] = None,
) -> TaskSentence:
    """Description -> Search: substitute the missing data chunk with an
    interrogative and reorder so the interrogative leads the sentence."""
    if sentence.task is not TaskType.DESCRIPTION:
        raise NotADescription(f"expected a description, got {sentence.task.value}")
    chunks = sentence.chunks
    if not 0 <= missing < len(chunks):
        raise ValueError(f"missing slot {missing} out of range")
    target = chunks[missing]
    if not target.is_data_like:
        raise SlotNotData(f"chunk {target.text!r} is not a data chunk")

    if sentence.mode is Mode.DRM:
        pivot = _index_of(chunks, Minor.BE)
    elif sentence.mode is Mode.SRM:
        pivot = _index_of(chunks, Minor.HAVE)
    else:
        pivot = _verb_index(chunks)

    interrogatives, span = _substitution(chunks, missing, pivot, lex, kb)

    if missing < pivot:
        # missing on the subject/active side: order unchanged
        new = (
            _copy_chunks(chunks[: span[0]])
            + interrogatives
            + _copy_chunks(chunks[span[1] :])
        )
        slot = span[0]
        return TaskSentence(new, TaskType.SEARCH, sentence.mode, "?", missing_slot=slot)

    np2 = _copy_chunks(chunks[pivot + 1 : span[0]]) + _copy_chunks(chunks[span[1] :])
    np2 = interrogatives + np2
    subject = _copy_chunks(chunks[:pivot])

    if sentence.mode is Mode.DRM:
        be = copy.deepcopy(chunks[pivot])
        new = np2 + [be] + _flip_possessive(subject)
    elif sentence.mode is Mode.SRM:
        aux = _aux_chunk(do_auxiliary(subject))
        have = copy.deepcopy(chunks[pivot])
        if have.text == "has":
            _set_text(have, "have")
        new = np2 + [aux] + subject + [have]
    else:
        aux = _aux_chunk(do_auxiliary(subject))
        verb = copy.deepcopy(chunks[pivot])
        new = np2 + [aux] + subject + [verb]

    return TaskSentence(new, TaskType.SEARCH, sentence.mode, "?", missing_slot=0)


def _interrogative_chunk(lex: Lexicon, key: str) -> Chunk:
    phrase = lex.interrogative(key)
    return Chunk(phrase.split(), phrase, ChunkClass(Major.POINTER, Minor.INTERROGATIVE))


def _substitution(chunks, missing, pivot, lex, kb):
    """Pick the interrogative and the chunk span it replaces."""
    target = chunks[missing]
    n = len(chunks)

    # value inside a prepositional phrase -> the preposition's space
    prep = None
    for k in range(missing - 1, -1, -1):
        c = chunks[k]
        if c.is_minor(Minor.PREPOSITION):
            prep = k
            break
        if not (c.is_determiner or c.is_minor(Minor.MEASUREMENT) or c.is_minor(Minor.BASIC_ATTRIBUTE)):
            break
    if prep is not None:
        key = chunks[prep].space_hint or "spatial-position"
        return [_interrogative_chunk(lex, key)], (prep, _np_right(chunks, missing, n))

    # possessor: entity followed by 's
    if missing + 1 < n and chunks[missing + 1].is_minor(Minor.POSSESSIVE):
        start = missing
        if start - 1 >= 0 and chunks[start - 1].is_determiner:
            start -= 1
        return [_interrogative_chunk(lex, "possession")], (start, missing + 2)

    if target.is_minor(Minor.MEASUREMENT):
        return [_interrogative_chunk(lex, "quantity")], (missing, missing + 1)

    if target.is_minor(Minor.BASIC_ATTRIBUTE):
        key = target.space_hint if target.space_hint in lex.interrogative_map else "generic"
        return [_interrogative_chunk(lex, key)], (missing, missing + 1)

    if missing < pivot:
        # whole subject/active noun phrase -> who
        start = missing
        while start - 1 >= 0 and (
            chunks[start - 1].is_determiner
            or chunks[start - 1].is_minor(Minor.MEASUREMENT)
            or chunks[start - 1].is_minor(Minor.BASIC_ATTRIBUTE)
        ):
            start -= 1
        return [_interrogative_chunk(lex, "person")], (start, _np_right(chunks, missing, pivot))

    # object side: a pointed-at entity keeps its head noun ("which book")
    if missing - 1 >= 0 and chunks[missing - 1].is_determiner:
        return [_interrogative_chunk(lex, "selection")], (missing - 1, missing)

    # person-valued space on the subject side selects who
    asc = _subject_space(chunks, pivot)
    if asc is not None and asc in lex.person_spaces:
        end = _np_right(chunks, missing, n)
        return [_interrogative_chunk(lex, "person")], (missing, end)

    # known kind -> "what kind of <kind>"
    kind = _kind_of(kb, target) if kb is not None else None
    end = _np_right(chunks, missing, n)
    if kind is not None:
        kind_chunk = Chunk([kind], kind.lower(), ChunkClass(Major.DATA, Minor.ENTITY_DYNAMIC))
        return [_interrogative_chunk(lex, "kind"), kind_chunk], (missing, end)

    return [_interrogative_chunk(lex, "generic")], (missing, end)


def _np_right(chunks, missing, hi) -> int:
    """Right edge of the phrase containing `missing` (spans conjunctions)."""
    m = missing + 1
    while (
        m + 1 < hi
        and chunks[m].is_minor(Minor.CONJUNCTION)
        and chunks[m + 1].is_data_like
    ):
        m += 2
    return m


def _subject_space(chunks, pivot) -> Optional[str]:
    """Trailing attribute-space word of the subject's possessive chain."""
    k = pivot - 1
    if k < 1:
        return None
    c = chunks[k]
    space_like = c.is_minor(Minor.ATTRIBUTE_SPACE) or c.is_minor(Minor.EXTENDED_ATTRIBUTE)
    if space_like and chunks[k - 1].is_minor(Minor.POSSESSIVE):
        return c.text
    return None


def _kind_of(kb: KnowledgeBase, chunk: Chunk) -> Optional[str]:
    node = chunk.binding or chunk.text
    for edge in kb.solid_parents(node):
        if edge.space == "kind":
            return kb.display(edge.src)
    return None


def _flip_possessive(np1: list[Chunk]) -> list[Chunk]:
    """Read a possessive chain backwards: [the dog 's name] -> [the name of the dog]."""
    for k, c in enumerate(np1):
        if c.is_minor(Minor.POSSESSIVE):
            left = np1[:k]
            right = np1[k + 1 :]
            out = []
            if not (right and right[0].is_determiner):
                out.append(Chunk(["the"], "the", ChunkClass(Major.POINTER, Minor.DEMONSTRATIVE)))
            of = Chunk(["of"], "of", ChunkClass(Major.STRUCTURE, Minor.OF))
            return out + right + [of] + left
    return np1
