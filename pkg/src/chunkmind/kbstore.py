"""Load/save the whole knowledge base as canonical JSON.

The on-disk document carries entities, both edge families, record sheets,
the spatial map, measurement models, and context defaults. Loading
revalidates every structural invariant by replaying the construction ops;
saving is canonical (sorted keys, sorted rows) so equal stores serialize
byte-identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from chunkmind.memory import (
    AttributeRecord,
    KbError,
    KnowledgeBase,
    SpatialValue,
    format_ts,
    parse_ts,
)
from chunkmind.measurement import DistributionModel, MeasurementError
from chunkmind.spm import Direction, SpatialMap, SpmError

FORMAT_VERSION = "1"
OPEN_SENTINEL = "OPEN"

# canonical direction kept per symmetric pair: the lexicographically
# smaller vertex is the row subject
_CANONICAL_ORDER = [d.value for d in Direction]


class KbStoreError(Exception):
    pass


class ParseError(KbStoreError):
    pass


class ValidationError(KbStoreError):
    pass


class IoError(KbStoreError):
    pass


@dataclass
class KbBundle:
    kb: KnowledgeBase
    spm: SpatialMap
    models: dict[str, DistributionModel] = field(default_factory=dict)
    context: dict = field(default_factory=dict)


def load(path: str | Path) -> KbBundle:
    path = Path(path)
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise IoError(f"{path}: {exc}") from exc
    return loads(text, source=str(path))


def loads(text: str, source: str = "<string>") -> KbBundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return from_document(doc, source=source)


def from_document(doc: dict, source: str = "<doc>") -> KbBundle:
    if not isinstance(doc, dict):
        raise ValidationError(f"{source}: document must be an object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise ValidationError(f"{source}: unsupported format version {version!r}")

    kb = KnowledgeBase()
    declared: set[str] = set()
    for i, row in enumerate(doc.get("entities", [])):
        try:
            node = row["id"]
            kb.ensure_entity(node, name=row.get("name", node), proper=bool(row.get("proper")))
            declared.add(node)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"{source}: entities[{i}]: {exc}") from exc

    def check_node(where: str, node):
        if node not in declared:
            raise ValidationError(f"{source}: {where}: undeclared entity {node!r}")

    spm = SpatialMap()
    sapps = sorted(
        doc.get("spm", {}).get("sapps", []), key=lambda r: (-r.get("layer", 0), r.get("id", ""))
    )
    for i, row in enumerate(sapps):
        where = f"spm.sapps[{i}]"
        try:
            check_node(where, row["id"])
            if row.get("parent") is not None:
                check_node(where, row["parent"])
            spm.add_sapp(row["id"], int(row["layer"]), row.get("parent"))
        except (KeyError, TypeError, ValueError, SpmError) as exc:
            raise ValidationError(f"{source}: {where}: {exc}") from exc
    for i, row in enumerate(doc.get("spm", {}).get("directions", [])):
        where = f"spm.directions[{i}]"
        try:
            spm.set_direction(row["subject"], Direction(row["direction"]), row["object"])
        except (KeyError, TypeError, ValueError, SpmError) as exc:
            raise ValidationError(f"{source}: {where}: {exc}") from exc

    for i, row in enumerate(doc.get("solid_edges", [])):
        where = f"solid_edges[{i}]"
        try:
            check_node(where, row["parent"])
            check_node(where, row["child"])
            kb.assert_inclusion(row["parent"], row["space"], row["child"])
        except (KeyError, TypeError, KbError) as exc:
            raise ValidationError(f"{source}: {where}: {exc}") from exc
    for i, row in enumerate(doc.get("dashed_edges", [])):
        where = f"dashed_edges[{i}]"
        try:
            check_node(where, row["from"])
            check_node(where, row["to"])
            kb.assert_virtual(row["from"], row["space"], row["to"])
        except (KeyError, TypeError, KbError) as exc:
            raise ValidationError(f"{source}: {where}: {exc}") from exc

    center = doc.get("center")
    if center is not None:
        check_node("center", center)
    kb.center = center
    kb.vice_centers = list(doc.get("vice_centers", []))
    for node in kb.vice_centers:
        check_node("vice_centers", node)

    for i, sheet_row in enumerate(doc.get("sheets", [])):
        where = f"sheets[{i}]"
        try:
            entity = sheet_row["entity"]
            check_node(where, entity)
            records = [
                _record_from(row, declared, spm, f"{source}: {where}.records[{j}]")
                for j, row in enumerate(sheet_row.get("records", []))
            ]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"{source}: {where}: {exc}") from exc
        _check_intervals(records, f"{source}: {where}")
        kb.sheet(entity).records.extend(records)

    models: dict[str, DistributionModel] = {}
    for i, row in enumerate(doc.get("measurement_models", [])):
        where = f"measurement_models[{i}]"
        try:
            bands = {int(k): list(v) for k, v in row["bands"].items()}
            model = DistributionModel(
                space=row["space"],
                mu=float(row["mu"]),
                sigma=float(row["sigma"]),
                band_words=bands,
                cutoffs=tuple(row.get("cutoffs", (1.0, 2.0, 3.0))),
            )
        except (KeyError, TypeError, ValueError, MeasurementError) as exc:
            raise ValidationError(f"{source}: {where}: {exc}") from exc
        models[model.space] = model

    context = dict(doc.get("context", {}))
    return KbBundle(kb, spm, models, context)


def _record_from(row: dict, declared: set[str], spm: SpatialMap, where: str) -> AttributeRecord:
    try:
        value = row["value"]
        if isinstance(value, dict):
            sapp = value["sapp"]
            if sapp not in declared:
                raise ValidationError(f"{where}: undeclared SAPP {sapp!r}")
            if sapp not in spm.layer_of:
                raise ValidationError(f"{where}: {sapp!r} is not an SPM vertex")
            value = SpatialValue(value["relation"], sapp)
        tts = row.get("tts", OPEN_SENTINEL)
        return AttributeRecord(
            space=row["space"],
            value=value,
            cts=parse_ts(row["cts"]),
            quantity=row.get("quantity"),
            tts=None if tts == OPEN_SENTINEL else parse_ts(tts),
        )
    except (KeyError, TypeError, ValueError, KbError) as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _check_intervals(records: list[AttributeRecord], where: str) -> None:
    by_space: dict[str, list[AttributeRecord]] = {}
    for r in records:
        by_space.setdefault(r.space, []).append(r)
    for space, rows in by_space.items():
        rows = sorted(rows, key=lambda r: r.cts)
        opens = [r for r in rows if r.is_open]
        if len(opens) > 1:
            raise ValidationError(f"{where}: {space}: more than one open record")
        for prev, nxt in zip(rows, rows[1:]):
            if prev.is_open or prev.tts > nxt.cts:
                raise ValidationError(f"{where}: {space}: overlapping record intervals")


# -- saving -------------------------------------------------------------------


def to_document(bundle: KbBundle) -> dict:
    kb, spm = bundle.kb, bundle.spm
    entities = []
    for node in sorted(kb.entities):
        ent = kb.entities[node]
        row: dict = {"id": ent.id, "name": ent.name}
        if ent.proper:
            row["proper"] = True
        entities.append(row)

    solid, dashed = kb.all_edges()
    solid_rows = sorted(
        ({"parent": e.src, "space": e.space, "child": e.dst} for e in solid),
        key=lambda r: (r["parent"], r["space"], r["child"]),
    )
    dashed_rows = sorted(
        ({"from": e.src, "space": e.space, "to": e.dst} for e in dashed),
        key=lambda r: (r["from"], r["space"], r["to"]),
    )

    sheets = []
    for entity in sorted(kb.sheets):
        records = sorted(kb.sheets[entity].records, key=lambda r: (r.space, r.cts))
        if not records:
            continue
        rows = []
        for r in records:
            row = {"space": r.space, "cts": format_ts(r.cts)}
            row["tts"] = OPEN_SENTINEL if r.is_open else format_ts(r.tts)
            if isinstance(r.value, SpatialValue):
                row["value"] = {"relation": r.value.relation, "sapp": r.value.sapp}
            else:
                row["value"] = r.value
            if r.quantity is not None:
                row["quantity"] = r.quantity
            rows.append(row)
        sheets.append({"entity": entity, "records": rows})

    sapp_rows = []
    for sapp in sorted(spm.layer_of, key=lambda v: (spm.layer_of[v], v)):
        row = {"id": sapp, "layer": spm.layer_of[sapp]}
        if sapp in spm.parent:
            row["parent"] = spm.parent[sapp]
        sapp_rows.append(row)
    direction_rows = []
    seen_pairs = set()
    for v in spm.layer_of:
        for d in Direction:
            other = spm.matrix[v][d]
            if other is None:
                continue
            pair = tuple(sorted((v, other)))
            if pair in seen_pairs:
                continue
            seen_pairs.add(pair)
            subject = pair[0]
            direction = d if subject == v else d.inverse
            direction_rows.append(
                {"subject": subject, "direction": direction.value, "object": pair[1]}
            )
    direction_rows.sort(key=lambda r: (r["subject"], _CANONICAL_ORDER.index(r["direction"])))

    model_rows = []
    for space in sorted(bundle.models):
        m = bundle.models[space]
        model_rows.append(
            {
                "space": m.space,
                "mu": m.mu,
                "sigma": m.sigma,
                "cutoffs": list(m.cutoffs),
                "bands": {str(k): list(v) for k, v in sorted(m.band_words.items())},
            }
        )

    doc = {
        "version": FORMAT_VERSION,
        "entities": entities,
        "center": kb.center,
        "vice_centers": sorted(kb.vice_centers),
        "solid_edges": solid_rows,
        "dashed_edges": dashed_rows,
        "sheets": sheets,
        "spm": {"sapps": sapp_rows, "directions": direction_rows},
        "measurement_models": model_rows,
        "context": dict(bundle.context),
    }
    return doc


def dumps(bundle: KbBundle) -> str:
    return json.dumps(to_document(bundle), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save(bundle: KbBundle, path: str | Path) -> None:
    try:
        Path(path).write_text(dumps(bundle), "utf-8")
    except OSError as exc:
        raise IoError(f"{path}: {exc}") from exc
