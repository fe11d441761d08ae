"""Replay the two-turn household dialogue and dump the apple record history.

Run from the repo root:  python scripts/replay_dialogue.py
"""

from pathlib import Path

from chunkmind import kbstore
from chunkmind.dialogue import process_utterance
from chunkmind.memory import format_ts
from chunkmind.service import make_context

KB = Path(__file__).resolve().parents[1] / "src" / "chunkmind" / "data" / "house.kb.json"

TURNS = [
    "Nana, do we have any apple?",
    "Give me an apple.",
    "do we have any apple?",
    "Where is the cat?",
]


def main():
    bundle = kbstore.load(KB)
    ctx = make_context(bundle)
    for turn in TURNS:
        response, _ = process_utterance(turn, ctx, bundle.kb, bundle.spm)
        print(f"{ctx.speaker:>6}: {turn}")
        print(f"{ctx.addressee:>6}: {response}")
    print("\napple / spatial-position record history:")
    for rec in bundle.kb.sheets["apple"].records_for("spatial-position"):
        tts = "current time" if rec.is_open else format_ts(rec.tts)
        print(f"  qty {rec.quantity}  CTS {format_ts(rec.cts)}  TTS {tts}")


if __name__ == "__main__":
    main()
