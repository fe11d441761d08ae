"""Command-line entry points: repl, corpus replay, readouts, transforms,
SPM inspection, and the HTTP service."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from chunkmind import kbstore
from chunkmind.dialogue import process_utterance
from chunkmind.lexicon import classify, seed_lexicon, segment
from chunkmind.readout import read_defining, read_set
from chunkmind.service import create_app, default_kb_path, make_context
from chunkmind.spm import Direction
from chunkmind.tasks import classify_sentence, to_search, to_verification


def _load(kb_path):
    path = Path(kb_path) if kb_path else default_kb_path()
    return kbstore.load(path), path


kb_option = click.option("--kb", "kb_path", default=None, help="knowledge base file (.kb.json)")


@click.group()
def main():
    """Rule-based dialogue engine over memory graphs and spatial maps."""


@main.command()
@kb_option
@click.option("--speaker", default=None)
@click.option("--addressee", default=None)
@click.option("--save-on-exit", is_flag=True, default=False)
def repl(kb_path, speaker, addressee, save_on_exit):
    """Interactive dialogue loop (one utterance per line)."""
    bundle, path = _load(kb_path)
    ctx = make_context(bundle, speaker, addressee)
    click.echo(f"{ctx.speaker} -> {ctx.addressee}; KB {path}. Empty line quits.")
    while True:
        try:
            line = input(f"{ctx.speaker}> ").strip()
        except EOFError:
            break
        if not line:
            break
        response, _ = process_utterance(line, ctx, bundle.kb, bundle.spm)
        click.echo(f"{ctx.addressee}: {response}")
    if save_on_exit:
        kbstore.save(bundle, path)
        click.echo(f"saved {path}")


@main.group()
def corpus():
    """Transcript replay."""


@corpus.command("run")
@click.argument("transcript", type=click.Path(exists=True))
@kb_option
def corpus_run(transcript, kb_path):
    """Replay alternating utterance/expected-response lines and diff."""
    bundle, _ = _load(kb_path)
    ctx = make_context(bundle)
    lines = [
        ln.strip()
        for ln in Path(transcript).read_text("utf-8").splitlines()
        if ln.strip() and not ln.strip().startswith("#")
    ]
    failures = 0
    for utterance, expected in zip(lines[0::2], lines[1::2]):
        response, _ = process_utterance(utterance, ctx, bundle.kb, bundle.spm)
        mark = "ok" if response == expected else "DIFF"
        if response != expected:
            failures += 1
            click.echo(f"[{mark}] {utterance!r}: expected {expected!r}, got {response!r}")
        else:
            click.echo(f"[{mark}] {utterance!r} -> {response!r}")
    if failures:
        click.echo(f"{failures} mismatch(es)")
        sys.exit(1)


@main.command("readout")
@click.argument("node")
@click.option("--mode", type=click.Choice(["drm", "srm"]), default="drm")
@click.option("--depth", type=click.Choice(["space", "subset"]), default="space")
@kb_option
def readout_cmd(node, mode, depth, kb_path):
    """Print one generated sentence per line for a node."""
    bundle, _ = _load(kb_path)
    if mode == "drm":
        outs = read_defining(bundle.kb, node)
    else:
        outs = read_set(bundle.kb, node, depth=depth)
    for ro in outs:
        click.echo(ro.sentence)


@main.command("transform")
@click.option("--to", "target", required=True, help="verify | search:<slot>")
@click.argument("sentence")
@kb_option
def transform_cmd(target, sentence, kb_path):
    """Transform a description into a verification or search sentence."""
    lex = seed_lexicon()
    chunks = classify(segment(sentence), lex)
    ts = classify_sentence(chunks)
    if target == "verify":
        out = to_verification(ts)
    elif target.startswith("search"):
        _, _, slot = target.partition(":")
        if not slot:
            raise click.UsageError("search needs a slot: --to search:<index-or-word>")
        try:
            index = int(slot)
        except ValueError:
            index = ts.find(slot)
        kb = None
        if kb_path:
            kb = kbstore.load(kb_path).kb
        out = to_search(ts, index, lex, kb=kb)
    else:
        raise click.UsageError(f"unknown transform target {target!r}")
    click.echo(out.text())


@main.group("spm")
def spm_group():
    """Spatial projection map inspection."""


@spm_group.command("show")
@kb_option
def spm_show(kb_path):
    """Render each layer's adjacency matrices and the scope tree."""
    bundle, _ = _load(kb_path)
    spm = bundle.spm
    headers = ["Left side", "Right side", "Front side", "Back side", "Upside", "Downside"]
    dirs = [
        Direction.LEFT,
        Direction.RIGHT,
        Direction.FRONT,
        Direction.BACK,
        Direction.UP,
        Direction.DOWN,
    ]
    for layer in reversed(spm.layers()):
        click.echo(f"Layer {layer}")
        for gi, comp in enumerate(spm.subgraphs(layer), start=1):
            click.echo(f"  subgraph {gi}")
            width = max([len(v) for v in comp] + [8])
            head = "    " + "V \\ E".ljust(width) + " | " + " | ".join(h.ljust(10) for h in headers)
            click.echo(head)
            for v in comp:
                cells = [(spm.matrix[v][d] or "Φ").ljust(10) for d in dirs]
                click.echo("    " + v.ljust(width) + " | " + " | ".join(cells))
    if spm.parent:
        click.echo("Scope tree")
        for child, parent in sorted(spm.parent.items()):
            click.echo(f"  {parent} > {child}")


@main.command()
@kb_option
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8600, type=int, envvar="CHUNKMIND_PORT")
def serve(kb_path, host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(create_app(kb_path), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
