// Pure HTML/SVG string renderers for the console panes. Keeping these as
// string functions makes them testable without a DOM.

import { EntityDoc, GraphDoc, SpmDoc, TranscriptTurn } from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function shortTime(iso: string): string {
  // "2021-10-01T17:06:00Z" -> "2021-10-01 17:06"
  const m = iso.match(/^(\d{4}-\d{2}-\d{2})T(\d{2}:\d{2})/);
  return m ? `${m[1]} ${m[2]}` : iso;
}

export function renderChat(transcript: TranscriptTurn[], speaker: string, addressee: string): string {
  const rows = transcript.flatMap((turn) => [
    `<div class="turn user"><span class="who">${escapeHtml(speaker)}</span>${escapeHtml(turn.utterance)}</div>`,
    `<div class="turn engine"><span class="who">${escapeHtml(addressee)}</span>${escapeHtml(turn.response)}</div>`,
  ]);
  return rows.join("\n");
}

export function renderGraph(doc: GraphDoc, width = 520, height = 380): string {
  const nodes = doc.nodes;
  const pos = new Map<string, { x: number; y: number }>();
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 50;
  const ring = nodes.filter((n) => n.id !== doc.center);
  ring.forEach((n, i) => {
    const angle = (2 * Math.PI * i) / Math.max(ring.length, 1);
    pos.set(n.id, { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  });
  if (doc.center) {
    pos.set(doc.center, { x: cx, y: cy });
  }

  const edges = doc.edges
    .map((e) => {
      const a = pos.get(e.from);
      const b = pos.get(e.to);
      if (!a || !b) return "";
      const dash = e.style === "dashed" ? ' stroke-dasharray="6 4"' : "";
      const cls = e.style === "dashed" ? "edge dashed" : "edge solid";
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      return (
        `<line class="${cls}" x1="${a.x.toFixed(1)}" y1="${a.y.toFixed(1)}"` +
        ` x2="${b.x.toFixed(1)}" y2="${b.y.toFixed(1)}" stroke="#555"${dash}` +
        ` marker-end="url(#arrow)"></line>` +
        `<text class="edge-label" x="${mx.toFixed(1)}" y="${(my - 4).toFixed(1)}">${escapeHtml(e.space)}</text>`
      );
    })
    .join("\n");

  const circles = nodes
    .map((n) => {
      const p = pos.get(n.id)!;
      const center = n.id === doc.center;
      const vice = doc.vice_centers.includes(n.id);
      const cls = center ? "node center" : vice ? "node vice" : "node";
      const r = center ? 26 : 18;
      return (
        `<g class="${cls}" data-entity="${escapeHtml(n.id)}">` +
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="${r}"></circle>` +
        `<text x="${p.x.toFixed(1)}" y="${(p.y + 4).toFixed(1)}" text-anchor="middle">${escapeHtml(n.name)}</text></g>`
      );
    })
    .join("\n");

  return (
    `<svg viewBox="0 0 ${width} ${height}" xmlns="http://www.w3.org/2000/svg">` +
    `<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">` +
    `<path d="M0,0 L7,3 L0,6 z" fill="#555"></path></marker></defs>` +
    `${edges}\n${circles}</svg>`
  );
}

const DIRECTION_COLUMNS = [
  ["left", "Left side"],
  ["right", "Right side"],
  ["front", "Front side"],
  ["back", "Back side"],
  ["up", "Upside"],
  ["down", "Downside"],
] as const;

export function renderSpmLayer(doc: SpmDoc, layer: number): string {
  const found = doc.layers.find((l) => l.layer === layer);
  if (!found) {
    return `<p class="empty">no layer ${layer}</p>`;
  }
  const head = DIRECTION_COLUMNS.map(([, label]) => `<th>${label}</th>`).join("");
  const rows = found.vertices
    .map((v) => {
      const cells = DIRECTION_COLUMNS.map(([key]) => {
        const neighbor = found.matrix[v]?.[key];
        return `<td>${neighbor ? escapeHtml(neighbor) : "Φ"}</td>`;
      }).join("");
      return `<tr><th>${escapeHtml(v)}</th>${cells}</tr>`;
    })
    .join("\n");
  return `<table class="spm-grid"><thead><tr><th>V \\ E</th>${head}</tr></thead><tbody>${rows}</tbody></table>`;
}

export function renderScopeTree(doc: SpmDoc): string {
  const children = new Map<string, string[]>();
  const isChild = new Set<string>();
  for (const { child, parent } of doc.tree) {
    if (!children.has(parent)) children.set(parent, []);
    children.get(parent)!.push(child);
    isChild.add(child);
  }
  const roots = [...children.keys()].filter((p) => !isChild.has(p)).sort();
  const renderNode = (node: string): string => {
    const kids = (children.get(node) ?? []).sort();
    const sub = kids.length ? `<ul>${kids.map(renderNode).join("")}</ul>` : "";
    return `<li>${escapeHtml(node)}${sub}</li>`;
  };
  return `<ul class="scope-tree">${roots.map(renderNode).join("")}</ul>`;
}

export function renderTimeline(doc: EntityDoc): string {
  if (!doc.records.length) {
    return `<p class="empty">${escapeHtml(doc.name)}: no records</p>`;
  }
  const rows = doc.records
    .map((r) => {
      const open = r.tts === "OPEN";
      const end = open ? "now" : shortTime(r.tts);
      const qty = r.quantity == null ? "" : ` · qty ${r.quantity}`;
      const value =
        typeof r.value === "object" && r.value !== null
          ? Object.values(r.value as Record<string, string>).join(" ")
          : String(r.value);
      return (
        `<div class="record${open ? " open" : ""}">` +
        `<span class="bar"></span>` +
        `<span class="label">${escapeHtml(r.space)} = ${escapeHtml(value)}${qty}</span>` +
        `<span class="span">${shortTime(r.cts)} → ${end}</span></div>`
      );
    })
    .join("\n");
  return `<h3>${escapeHtml(doc.name)}</h3>\n${rows}`;
}
