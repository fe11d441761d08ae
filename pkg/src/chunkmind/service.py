"""Thin HTTP facade over the dialogue pipeline and KB inspection.

Sessions are in-memory; each owns one KB bundle and a deterministic turn
clock seeded from the bundle's ``session_start`` context default. GET
endpoints are read-only snapshots.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from chunkmind import kbstore
from chunkmind.dialogue import DialogueContext, process_utterance, stepping_clock
from chunkmind.kbstore import KbBundle
from chunkmind.memory import SpatialValue, format_ts, parse_ts
from chunkmind.spm import Direction


def default_kb_path() -> Path:
    import chunkmind

    return Path(chunkmind.__file__).parent / "data" / "house.kb.json"


class UtteranceIn(BaseModel):
    text: str


class SessionIn(BaseModel):
    kb_path: Optional[str] = None
    speaker: Optional[str] = None
    addressee: Optional[str] = None


@dataclass
class Session:
    id: str
    bundle: KbBundle
    ctx: DialogueContext
    transcript: list[dict] = field(default_factory=list)


def make_context(bundle: KbBundle, speaker=None, addressee=None) -> DialogueContext:
    context = bundle.context
    start_raw = context.get("session_start")
    start = parse_ts(start_raw) if start_raw else datetime.now(timezone.utc)
    return DialogueContext(
        speaker=speaker or context.get("speaker", "user"),
        addressee=addressee or context.get("addressee", "engine"),
        owner=context.get("owner", speaker or context.get("speaker", "user")),
        owner_root=context.get("owner_root"),
        clock=stepping_clock(start),
    )


def _open_quantities(bundle: KbBundle) -> dict:
    state = {}
    for entity, sheet in bundle.kb.sheets.items():
        for rec in sheet.records:
            if rec.is_open:
                state[(entity, rec.space)] = (rec.quantity, rec.cts)
    return state


def create_app(kb_path: Optional[str | Path] = None) -> FastAPI:
    app = FastAPI(title="chunkmind service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    sessions: dict[str, Session] = {}
    app.state.sessions = sessions
    base_path = Path(kb_path) if kb_path else default_kb_path()

    def get_session(sid: str) -> Session:
        session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid!r}")
        return session

    @app.post("/session")
    def create_session(body: Optional[SessionIn] = None):
        body = body or SessionIn()
        path = Path(body.kb_path) if body.kb_path else base_path
        try:
            bundle = kbstore.load(path)
        except kbstore.KbStoreError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        ctx = make_context(bundle, body.speaker, body.addressee)
        sid = uuid.uuid4().hex[:12]
        sessions[sid] = Session(sid, bundle, ctx)
        return {
            "session_id": sid,
            "speaker": ctx.speaker,
            "addressee": ctx.addressee,
            "kb": str(path),
        }

    @app.post("/session/{sid}/utterance")
    def post_utterance(sid: str, body: UtteranceIn):
        session = get_session(sid)
        if not body.text.strip():
            raise HTTPException(status_code=422, detail="empty utterance")
        before = _open_quantities(session.bundle)
        at = session.ctx.now()
        response, _ = process_utterance(
            body.text, session.ctx, session.bundle.kb, session.bundle.spm, at=at
        )
        after = _open_quantities(session.bundle)
        delta = []
        for key, (qty, cts) in sorted(after.items()):
            if key in before and before[key] == (qty, cts):
                continue
            entity, space = key
            old = before.get(key)
            delta.append(
                {
                    "entity": entity,
                    "space": space,
                    "old_quantity": old[0] if old else None,
                    "new_quantity": qty,
                    "at": format_ts(cts),
                }
            )
        session.transcript.append(
            {"utterance": body.text, "response": response, "timestamp": format_ts(at)}
        )
        return {"response": response, "kb_delta": delta}

    @app.get("/session/{sid}/graph")
    def get_graph(sid: str):
        session = get_session(sid)
        kb = session.bundle.kb
        solid, dashed = kb.all_edges()
        return {
            "center": kb.center,
            "vice_centers": kb.vice_centers,
            "nodes": [
                {"id": e.id, "name": e.name, "proper": e.proper}
                for e in kb.entities.values()
            ],
            "edges": [
                {"from": e.src, "to": e.dst, "space": e.space, "style": "solid"} for e in solid
            ]
            + [
                {"from": e.src, "to": e.dst, "space": e.space, "style": "dashed"} for e in dashed
            ],
        }

    @app.get("/session/{sid}/spm")
    def get_spm(sid: str):
        session = get_session(sid)
        spm = session.bundle.spm
        layers = []
        for layer in spm.layers():
            vertices = spm.vertices_in(layer)
            layers.append(
                {
                    "layer": layer,
                    "vertices": vertices,
                    "matrix": {
                        v: {d.value: spm.matrix[v][d] for d in Direction} for v in vertices
                    },
                }
            )
        tree = [{"child": c, "parent": p} for c, p in sorted(spm.parent.items())]
        return {"layers": layers, "tree": tree}

    @app.get("/session/{sid}/entity/{name}")
    def get_entity(sid: str, name: str):
        session = get_session(sid)
        kb = session.bundle.kb
        node = name if name in kb.entities else None
        if node is None:
            lowered = {kb.display(n).lower(): n for n in kb.entities}
            node = lowered.get(name.lower())
        if node is None:
            raise HTTPException(status_code=404, detail=f"unknown entity {name!r}")
        sheet = kb.sheets.get(node)
        records = []
        if sheet is not None:
            for r in sorted(sheet.records, key=lambda r: (r.space, r.cts)):
                value = (
                    {"relation": r.value.relation, "sapp": r.value.sapp}
                    if isinstance(r.value, SpatialValue)
                    else r.value
                )
                records.append(
                    {
                        "space": r.space,
                        "value": value,
                        "quantity": r.quantity,
                        "cts": format_ts(r.cts),
                        "tts": "OPEN" if r.is_open else format_ts(r.tts),
                    }
                )
        ent = kb.entities[node]
        return {"id": ent.id, "name": ent.name, "proper": ent.proper, "records": records}

    @app.get("/session/{sid}/transcript")
    def get_transcript(sid: str):
        return {"transcript": get_session(sid).transcript}

    return app


app = create_app()
