"""Small text helpers shared by the sentence renderers."""

from __future__ import annotations


def sentence_case(text: str) -> str:
    """Capitalize the first character, leave the rest alone."""
    return text[:1].upper() + text[1:] if text else text


def pluralize(noun: str) -> str:
    if noun.endswith(("s", "x", "z", "ch", "sh")):
        return noun + "es"
    return noun + "s"


def conjoin(names: list[str]) -> str:
    """'a', 'a and b', 'a, b and c'."""
    if not names:
        return ""
    if len(names) == 1:
        return names[0]
    return ", ".join(names[:-1]) + " and " + names[-1]


def join_tokens(tokens: list[str]) -> str:
    """Space-join tokens, attaching the possessive clitic to its owner."""
    out = ""
    for tok in tokens:
        if not out:
            out = tok
        elif tok == "'s":
            out += tok
        else:
            out += " " + tok
    return out
