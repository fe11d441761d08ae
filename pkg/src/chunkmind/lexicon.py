"""Front end of the engine: token segmentation and chunk classification.

Word lists live in ``data/lexicon.json`` (an array of ``{phrase, major,
minor, space_hint?}`` objects); this module only knows the class taxonomy
and the matching rules. Unknown tokens are carried forward unclassified so
later stages can still bind them as entity names.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Optional


class Major(str, Enum):
    DATA = "Data"
    STRUCTURE = "Structure"
    POINTER = "Pointer"


class Minor(str, Enum):
    # data chunks
    BASIC_ATTRIBUTE = "BasicAttribute"
    EXTENDED_ATTRIBUTE = "ExtendedAttribute"
    ATTRIBUTE_SPACE = "AttributeSpace"
    VERB = "Verb"
    MEASUREMENT = "Measurement"
    ENTITY_DYNAMIC = "EntityExplicitDynamic"
    ENTITY_STATIC = "EntityExplicitStatic"
    ENTITY_IMPLICIT = "EntityImplicit"
    # structure chunks
    BE = "Be"
    HAVE = "Have"
    OF = "Of"
    POSSESSIVE = "Possessive"
    DO_AUX = "DoAux"
    PUNCTUATION = "Punctuation"
    CONJUNCTION = "Conjunction"
    # pointer chunks
    DEMONSTRATIVE = "Demonstrative"
    INTERROGATIVE = "Interrogative"
    PREPOSITION = "Preposition"


_MINORS_BY_MAJOR = {
    Major.DATA: {
        Minor.BASIC_ATTRIBUTE,
        Minor.EXTENDED_ATTRIBUTE,
        Minor.ATTRIBUTE_SPACE,
        Minor.VERB,
        Minor.MEASUREMENT,
        Minor.ENTITY_DYNAMIC,
        Minor.ENTITY_STATIC,
        Minor.ENTITY_IMPLICIT,
    },
    Major.STRUCTURE: {
        Minor.BE,
        Minor.HAVE,
        Minor.OF,
        Minor.POSSESSIVE,
        Minor.DO_AUX,
        Minor.PUNCTUATION,
        Minor.CONJUNCTION,
    },
    Major.POINTER: {
        Minor.DEMONSTRATIVE,
        Minor.INTERROGATIVE,
        Minor.PREPOSITION,
    },
}

ENTITY_MINORS = {Minor.ENTITY_DYNAMIC, Minor.ENTITY_STATIC, Minor.ENTITY_IMPLICIT}

# minors whose surface form takes a naive plural ("crown" -> "crowns")
_PLURALIZABLE = ENTITY_MINORS | {Minor.EXTENDED_ATTRIBUTE, Minor.ATTRIBUTE_SPACE}

SENTENCE_PUNCT = {",", ".", "?", "!"}
TERMINALS = {".", "?", "!"}

# determiner-like vs standalone pronoun-like demonstratives
DETERMINERS = {"the", "this", "that", "these", "those", "my", "your", "our"}
PRONOUNS = {"i", "we", "you", "me", "they", "them", "it", "he", "she", "us"}
PLURAL_PRONOUNS = {"i", "we", "you", "they"}

# interrogative selection table; the keys are semantic, not surface forms
DEFAULT_INTERROGATIVES = {
    "color": "what color",
    "person": "who",
    "possession": "whose",
    "selection": "which",
    "quantity": "how many",
    "kind": "what kind of",
    "spatial-position": "where",
    "generic": "what",
}

# attribute spaces whose values are people (drive who/whose selection)
DEFAULT_PERSON_SPACES = {"son", "mother", "father", "wife", "daughter", "friend"}


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class ChunkClass:
    major: Major
    minor: Minor
    space_hint: Optional[str] = None

    def __post_init__(self):
        if self.minor not in _MINORS_BY_MAJOR[self.major]:
            raise LexiconError(f"minor {self.minor.value} not valid under {self.major.value}")
        if self.minor in (Minor.BASIC_ATTRIBUTE, Minor.PREPOSITION) and not self.space_hint:
            raise LexiconError(f"{self.minor.value} entries need a space_hint")
        if self.minor in ENTITY_MINORS and self.space_hint:
            raise LexiconError("entity entries carry no space_hint")


@dataclass
class Chunk:
    """A surface phrase (one or more tokens) with its classification."""

    words: list[str]
    text: str
    cls: Optional[ChunkClass] = None  # None = unknown token
    plural: bool = False
    binding: Optional[str] = None  # entity id filled in by the dialogue resolver

    def is_minor(self, minor: Minor) -> bool:
        return self.cls is not None and self.cls.minor is minor

    @property
    def is_data_like(self) -> bool:
        """Data chunk or unknown token (a possible entity name)."""
        return self.cls is None or self.cls.major is Major.DATA

    @property
    def is_pronoun(self) -> bool:
        return self.is_minor(Minor.DEMONSTRATIVE) and self.text in PRONOUNS

    @property
    def is_determiner(self) -> bool:
        return self.is_minor(Minor.DEMONSTRATIVE) and self.text in DETERMINERS

    @property
    def space_hint(self) -> Optional[str]:
        return self.cls.space_hint if self.cls else None


class Lexicon:
    """Phrase table mapping normalized surface text to chunk classes.

    Lookup is longest-match; phrases are case-normalized. The interrogative
    map and the person-valued space list drive search-question generation.
    """

    def __init__(self, interrogative_map=None, person_spaces=None):
        self.entries: dict[str, ChunkClass] = {}
        self.interrogative_map = dict(interrogative_map or DEFAULT_INTERROGATIVES)
        missing = set(DEFAULT_INTERROGATIVES) - set(self.interrogative_map)
        if missing:
            raise LexiconError(f"interrogative map missing keys: {sorted(missing)}")
        self.person_spaces = set(person_spaces or DEFAULT_PERSON_SPACES)
        self.max_words = 1

    def add(self, phrase: str, cls: ChunkClass):
        key = " ".join(phrase.lower().split()) if phrase not in SENTENCE_PUNCT else phrase
        if key in self.entries:
            raise LexiconError(f"duplicate lexicon phrase: {key!r}")
        self.entries[key] = cls
        self.max_words = max(self.max_words, len(key.split()))

    def lookup(self, phrase: str) -> Optional[ChunkClass]:
        return self.entries.get(phrase)

    def interrogative(self, key: str) -> str:
        return self.interrogative_map.get(key, self.interrogative_map["generic"])

    def interrogative_key(self, phrase: str) -> Optional[str]:
        """Reverse lookup: interrogative surface form -> semantic key."""
        for key, surface in self.interrogative_map.items():
            if surface == phrase:
                return key
        return None

    def __contains__(self, phrase: str) -> bool:
        return phrase in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    @classmethod
    def from_entries(cls, rows, interrogative_map=None, person_spaces=None) -> "Lexicon":
        lex = cls(interrogative_map, person_spaces)
        for i, row in enumerate(rows):
            try:
                chunk_cls = ChunkClass(
                    Major(row["major"]), Minor(row["minor"]), row.get("space_hint")
                )
                lex.add(row["phrase"], chunk_cls)
            except (KeyError, ValueError) as exc:
                raise LexiconError(f"lexicon entry {i}: {exc}") from exc
        return lex


def load_lexicon(path: Optional[str | Path] = None) -> Lexicon:
    """Load a lexicon seed file; defaults to the packaged one."""
    if path is None:
        text = resources.files("chunkmind.data").joinpath("lexicon.json").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    rows = json.loads(text)
    return Lexicon.from_entries(rows)


_seed: Optional[Lexicon] = None


def seed_lexicon() -> Lexicon:
    """The packaged lexicon, loaded once (it is immutable after load)."""
    global _seed
    if _seed is None:
        _seed = load_lexicon()
    return _seed


_TOKEN_RE = re.compile(r"[^\s,.?!]+|[,.?!]")


def segment(text: str) -> list[str]:
    """Whitespace tokenization with , . ? ! split into standalone tokens."""
    return _TOKEN_RE.findall(text)


def classify(tokens: list[str], lex: Lexicon) -> list[Chunk]:
    """Longest-match, left-to-right classification of a token sequence."""
    chunks: list[Chunk] = []
    lowered = [t.lower() for t in tokens]
    n = len(tokens)
    i = 0
    while i < n:
        low = lowered[i]
        # possessive clitic: "queen's" -> [queen]['s]
        if low.endswith("'s") and len(low) > 2:
            chunks.append(_classify_single(tokens[i][:-2], lex))
            chunks.append(Chunk(["'s"], "'s", lex.lookup("'s")))
            i += 1
            continue
        matched = False
        for width in range(min(lex.max_words, n - i), 1, -1):
            phrase = " ".join(lowered[i : i + width])
            cls = lex.lookup(phrase)
            if cls is not None:
                chunks.append(Chunk(list(tokens[i : i + width]), phrase, cls))
                i += width
                matched = True
                break
        if not matched:
            chunks.append(_classify_single(tokens[i], lex))
            i += 1
    return chunks


def _classify_single(token: str, lex: Lexicon) -> Chunk:
    low = token.lower()
    cls = lex.lookup(low)
    if cls is not None:
        return Chunk([token], low, cls)
    if low.isdigit():
        return Chunk([token], low, ChunkClass(Major.DATA, Minor.MEASUREMENT, "quantity"))
    if low.endswith("s") and len(low) > 1:
        base = low[:-1]
        base_cls = lex.lookup(base)
        if base_cls is not None and base_cls.minor in _PLURALIZABLE:
            return Chunk([token], base, base_cls, plural=True)
    return Chunk([token], low, None)
