import pytest

from chunkmind.lexicon import classify, segment
from chunkmind.readout import Mode
from chunkmind.tasks import (
    NotADescription,
    NotAVerification,
    SlotNotData,
    TaskType,
    UnclassifiableSentence,
    classify_sentence,
    strip_to_description,
    to_search,
    to_verification,
)


def parse(text, lex):
    return classify_sentence(classify(segment(text), lex))


def test_classify_srm_verification(lex):
    ts = parse("do we have any apple ?", lex)
    assert (ts.task, ts.mode) == (TaskType.VERIFICATION, Mode.SRM)


def test_classify_imperative(lex):
    ts = parse("Give me an apple .", lex)
    assert (ts.task, ts.mode) == (TaskType.DESCRIPTION, Mode.PRM)
    assert ts.imperative


def test_classify_drm_description(lex):
    ts = parse("This apple is red .", lex)
    assert (ts.task, ts.mode) == (TaskType.DESCRIPTION, Mode.DRM)
    assert not ts.imperative


def test_classify_skips_vocative(lex):
    ts = parse("Nana, do we have any apple ?", lex)
    assert ts.task is TaskType.VERIFICATION


def test_classify_search(lex):
    ts = parse("What color is this apple ?", lex)
    assert (ts.task, ts.mode) == (TaskType.SEARCH, Mode.DRM)
    assert ts.missing_slot == 0


def test_unclassifiable(lex):
    with pytest.raises(UnclassifiableSentence):
        parse("blah blah .", lex)
    with pytest.raises(UnclassifiableSentence):
        classify_sentence([])


def test_to_verification_drm(lex):
    ts = parse("This apple is red .", lex)
    assert to_verification(ts).tokens() == ["is", "This", "apple", "red", "?"]


def test_to_verification_srm(lex):
    ts = parse("The cat has a black tail .", lex)
    assert [t.lower() for t in to_verification(ts).tokens()] == [
        "does", "the", "cat", "have", "a", "black", "tail", "?",
    ]


def test_to_verification_prm(lex):
    ts = parse("Wrote run away .", lex)
    assert [t.lower() for t in to_verification(ts).tokens()] == [
        "does", "wrote", "run", "away", "?",
    ]


def test_to_verification_rejects_non_description(lex):
    with pytest.raises(NotADescription):
        to_verification(parse("do we have any apple ?", lex))


def test_to_search_color(lex):
    ts = parse("This apple is red .", lex)
    out = to_search(ts, ts.find("red"), lex)
    assert [t.lower() for t in out.tokens()] == ["what", "color", "is", "this", "apple", "?"]
    assert out.missing_slot == 0


def test_to_search_quantity(lex):
    ts = parse("Queen has twelve crowns .", lex)
    out = to_search(ts, ts.find("twelve"), lex)
    assert [t.lower() for t in out.tokens()] == [
        "how", "many", "crowns", "does", "queen", "have", "?",
    ]


def test_to_search_passive_selection(lex):
    ts = parse("Queen read the book .", lex)
    out = to_search(ts, ts.find("book"), lex)
    assert [t.lower() for t in out.tokens()] == [
        "which", "book", "does", "queen", "read", "?",
    ]


def test_to_search_rejects_structure_slot(lex):
    ts = parse("This apple is red .", lex)
    with pytest.raises(SlotNotData):
        to_search(ts, ts.find("is"), lex)


def test_to_search_single_interrogative_at_front(lex, queen):
    cases = [
        ("This apple is red .", "red"),
        ("The dog's name is Wrote .", "wrote"),
        ("They are Queen's crowns .", "queen"),
        ("The cat has a black tail .", "cat"),
        ("Queen has twelve crowns .", "twelve"),
        ("Queen read the book .", "book"),
        ("Queen likes coffee and tea .", "coffee"),
    ]
    for text, miss in cases:
        ts = parse(text, lex)
        out = to_search(ts, ts.find(miss), lex, kb=queen.kb)
        interrogatives = [c for c in out.chunks if c.cls and c.cls.minor.value == "Interrogative"]
        assert len(interrogatives) == 1
        assert out.chunks[0] is interrogatives[0] or out.missing_slot == out.chunks.index(interrogatives[0])


def test_transforms_preserve_other_data_chunks(lex):
    ts = parse("Queen has twelve crowns .", lex)
    out = to_search(ts, ts.find("twelve"), lex)
    kept = [c.text for c in out.chunks if c.is_data_like and c.cls and c.cls.minor.value != "Verb"]
    assert "crown" in kept and "queen" in kept


def test_strip_inverts_verification(lex):
    for text in [
        "This apple is red .",
        "The dog's name is Wrote .",
        "They are Queen's crowns .",
        "The cat has a black tail .",
        "Queen has twelve crowns .",
        "Wrote run away .",
        "Queen read the book .",
        "Queen likes coffee and tea .",
    ]:
        ts = parse(text, lex)
        assert strip_to_description(to_verification(ts)).tokens() == ts.tokens()


def test_strip_examples(lex):
    out = strip_to_description(parse("Is this apple red ?", lex))
    assert [t.lower() for t in out.tokens()] == ["this", "apple", "is", "red", "."]
    out = strip_to_description(parse("Does Queen have twelve crowns ?", lex))
    assert [t.lower() for t in out.tokens()] == ["queen", "has", "twelve", "crowns", "."]


def test_strip_rejects_description(lex):
    with pytest.raises(NotAVerification):
        strip_to_description(parse("Give me an apple .", lex))
