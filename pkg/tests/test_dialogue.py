import pytest

from chunkmind import kbstore
from chunkmind.dialogue import (
    DialogueContext,
    ResolvedTask,
    TaskKind,
    owned_by_default,
    plan_tasks,
    process_utterance,
    resolve_objects,
    stepping_clock,
)
from chunkmind.lexicon import classify, segment
from chunkmind.memory import utc
from chunkmind.service import make_context
from chunkmind.tasks import classify_sentence


@pytest.fixture
def ctx(house):
    return make_context(house)


def chunks_of(text, lex):
    return classify(segment(text), lex)


def test_context_rejects_self_talk():
    with pytest.raises(ValueError):
        DialogueContext(speaker="jack", addressee="jack", owner="jack")


def test_resolve_pronouns(house, ctx, lex):
    out = resolve_objects(chunks_of("do we have any apple ?", lex), ctx, house.kb)
    bindings = {c.text: c.binding for c in out}
    assert bindings["we"] == "jack"
    assert bindings["apple"] == "apple"


def test_resolve_strips_vocative(house, ctx, lex):
    out = resolve_objects(chunks_of("Nana , do we have any apple ?", lex), ctx, house.kb)
    assert out[0].text == "do"


def test_resolve_me_to_speaker(house, ctx, lex):
    out = resolve_objects(chunks_of("Give me an apple .", lex), ctx, house.kb)
    assert {c.text: c.binding for c in out}["me"] == "jack"


def test_resolve_unknown_stays_unbound(house, ctx, lex):
    out = resolve_objects(chunks_of("Zorp is red .", lex), ctx, house.kb)
    assert out[0].binding is None


def _plan(text, bundle, ctx, lex):
    sentence = classify_sentence(chunks_of(text, lex))
    sentence.chunks = resolve_objects(sentence.chunks, ctx, bundle.kb)
    return plan_tasks(sentence, ctx, bundle.kb, lex)


def test_plan_ownership_verification(house, ctx, lex):
    tasks = _plan("do we have any apple ?", house, ctx, lex)
    assert [t.kind for t in tasks] == [TaskKind.VERIFY_INCLUSION, TaskKind.VERIFY_QUANTITY]
    assert tasks[0].subject == "jack" and tasks[0].object == "apple"
    assert tasks[1].demand_word == "any"


def test_plan_give_action(house, ctx, lex):
    (task,) = _plan("Give me an apple .", house, ctx, lex)
    assert task.kind is TaskKind.ACTION
    assert task.object == "apple" and task.subject == "jack"
    assert task.demand_word == "an"


def test_plan_where_search(house, ctx, lex):
    (task,) = _plan("Where is the cat ?", house, ctx, lex)
    assert task.kind is TaskKind.SEARCH_ATTRIBUTE
    assert task.subject == "cat" and task.space == "spatial-position"


def test_default_ownership_is_spatial(house, ctx):
    assert owned_by_default(house.kb, house.spm, ctx, "apple")
    assert owned_by_default(house.kb, house.spm, ctx, "house")
    assert not owned_by_default(house.kb, house.spm, ctx, "banana")


def test_dialogue_turn_one(house, ctx):
    response, _ = process_utterance("Nana, do we have any apple?", ctx, house.kb, house.spm)
    assert response == "Yes."


def test_dialogue_turn_two_updates_records(house, ctx):
    process_utterance("Nana, do we have any apple?", ctx, house.kb, house.spm)
    response, _ = process_utterance("Give me an apple.", ctx, house.kb, house.spm)
    assert response == "Sure."
    records = house.kb.sheets["apple"].records_for("spatial-position")
    closed, open_ = records
    assert closed.quantity == 3 and closed.tts == utc(2021, 10, 1, 17, 6)
    assert open_.quantity == 2 and open_.cts == utc(2021, 10, 1, 17, 6) and open_.is_open


def test_unknown_entity_verification_is_no(house, ctx):
    # oracle: brute-force scan of every SAPP scope finds no banana anchor
    anchored = set()
    for sheet in house.kb.sheets.values():
        for rec in sheet.records:
            if rec.space == "spatial-position" and rec.is_open:
                for sapp in house.spm.layer_of:
                    if rec.value.sapp in house.spm.scope_of(sapp) | {sapp}:
                        anchored.add(sheet.entity)
    assert "banana" not in anchored
    response, _ = process_utterance("do we have any banana?", ctx, house.kb, house.spm)
    assert response == "No."


def test_where_is_the_cat(house, ctx):
    response, _ = process_utterance("Where is the cat?", ctx, house.kb, house.spm)
    assert response == "The cat is on the fridge."


def test_attribute_search_renders_defining_readout(queen):
    ctx = make_context(queen)
    response, _ = process_utterance("What color is the apple?", ctx, queen.kb, queen.spm)
    assert response == "Apple's color is red."


def test_search_miss_is_dont_know(house, ctx):
    response, _ = process_utterance("What color is the cat?", ctx, house.kb, house.spm)
    assert response == "I don't know."


def test_verification_leaves_kb_identical(house, ctx):
    before = kbstore.dumps(house)
    process_utterance("do we have any apple?", ctx, house.kb, house.spm)
    process_utterance("Where is the cat?", ctx, house.kb, house.spm)
    assert kbstore.dumps(house) == before


def test_infeasible_action_refused(house, ctx):
    response, _ = process_utterance("Give me twelve apples.", ctx, house.kb, house.spm)
    assert response == "Sorry, I can't."
    assert house.kb.open_attribute("apple", "spatial-position").quantity == 3


def test_empty_and_unclassifiable_get_clarification(house, ctx):
    assert process_utterance("", ctx, house.kb, house.spm)[0] == "I don't understand."
    assert process_utterance("blah blah.", ctx, house.kb, house.spm)[0] == "I don't understand."


def test_assertion_mutates_kb(house, ctx):
    response, _ = process_utterance("The apple is sweet.", ctx, house.kb, house.spm)
    assert response == "OK."
    assert house.kb.open_attribute("apple", "taste").value == "sweet"


def test_verify_drm_attribute(house, ctx):
    process_utterance("The apple is sweet.", ctx, house.kb, house.spm)
    assert process_utterance("Is the apple sweet?", ctx, house.kb, house.spm)[0] == "Yes."
    assert process_utterance("Is the apple bitter?", ctx, house.kb, house.spm)[0] == "No."


def test_determinism():
    # two replays over fresh loads give identical transcripts and stores
    import tests.conftest as cf

    results = []
    for _ in range(2):
        bundle = kbstore.load(cf.HOUSE_KB)
        ctx = make_context(bundle)
        transcript = [
            process_utterance(t, ctx, bundle.kb, bundle.spm)[0]
            for t in ["Nana, do we have any apple?", "Give me an apple.", "Where is the cat?"]
        ]
        results.append((transcript, kbstore.dumps(bundle)))
    assert results[0] == results[1]


def test_stepping_clock():
    clock = stepping_clock(utc(2021, 10, 1, 17, 5))
    assert clock() == utc(2021, 10, 1, 17, 5)
    assert clock() == utc(2021, 10, 1, 17, 6)
