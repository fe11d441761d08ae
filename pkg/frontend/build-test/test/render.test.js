import assert from "node:assert/strict";
import { test } from "node:test";
import { escapeHtml, renderChat, renderGraph, renderScopeTree, renderSpmLayer, renderTimeline, shortTime, } from "../src/render.js";
const graph = {
    center: "queen",
    vice_centers: ["charles"],
    nodes: [
        { id: "queen", name: "Queen Elizabeth", proper: true },
        { id: "charles", name: "Charles", proper: true },
        { id: "cat", name: "cat", proper: false },
    ],
    edges: [
        { from: "queen", to: "cat", space: "pet", style: "solid" },
        { from: "queen", to: "charles", space: "son", style: "dashed" },
    ],
};
test("graph render distinguishes dashed from solid edges", () => {
    const svg = renderGraph(graph);
    const lines = svg.match(/<line[^>]*>/g) ?? [];
    assert.equal(lines.length, 2);
    const dashed = lines.filter((l) => l.includes("stroke-dasharray"));
    const solid = lines.filter((l) => !l.includes("stroke-dasharray"));
    assert.equal(dashed.length, 1);
    assert.equal(solid.length, 1);
    assert.ok(dashed[0].includes('class="edge dashed"'));
});
test("graph render highlights the center node", () => {
    const svg = renderGraph(graph);
    assert.ok(svg.includes('class="node center" data-entity="queen"'));
    assert.ok(svg.includes('class="node vice" data-entity="charles"'));
});
test("chat render shows both sides and escapes markup", () => {
    const html = renderChat([{ utterance: "<b>hi</b>", response: "Yes.", timestamp: "t" }], "jack", "nana");
    assert.ok(html.includes("&lt;b&gt;hi&lt;/b&gt;"));
    assert.ok(html.includes("Yes."));
    assert.ok(html.includes("jack") && html.includes("nana"));
});
const spm = {
    layers: [
        {
            layer: 0,
            vertices: ["table", "fridge", "sofa"],
            matrix: {
                table: { left: null, right: null, front: null, back: "sofa", up: null, down: null },
                fridge: { left: "sofa", right: null, front: null, back: null, up: null, down: null },
                sofa: { left: null, right: "fridge", front: "table", back: null, up: null, down: null },
            },
        },
    ],
    tree: [
        { child: "table", parent: "house" },
        { child: "fridge", parent: "house" },
        { child: "sofa", parent: "house" },
        { child: "house", parent: "community" },
    ],
};
test("spm grid shows neighbors and empty cells", () => {
    const html = renderSpmLayer(spm, 0);
    assert.ok(html.includes("<th>table</th>"));
    assert.ok(html.includes("<td>sofa</td>"));
    assert.ok(html.includes("Φ"));
});
test("scope tree nests children under parents", () => {
    const html = renderScopeTree(spm);
    const community = html.indexOf("community");
    const house = html.indexOf("house", community);
    const fridge = html.indexOf("fridge", house);
    assert.ok(community >= 0 && house > community && fridge > house);
});
const apple = {
    id: "apple",
    name: "apple",
    proper: false,
    records: [
        {
            space: "spatial-position",
            value: { relation: "in", sapp: "fridge" },
            quantity: 3,
            cts: "2021-09-29T11:00:00Z",
            tts: "2021-10-01T17:06:00Z",
        },
        {
            space: "spatial-position",
            value: { relation: "in", sapp: "fridge" },
            quantity: 2,
            cts: "2021-10-01T17:06:00Z",
            tts: "OPEN",
        },
    ],
};
test("timeline shows record boundary and open record", () => {
    const html = renderTimeline(apple);
    assert.ok(html.includes("17:06"), "boundary timestamp must be visible");
    assert.ok(html.includes("qty 3") && html.includes("qty 2"));
    assert.ok(html.includes("now"));
    assert.ok(html.includes('class="record open"'));
});
test("short time formatting", () => {
    assert.equal(shortTime("2021-10-01T17:06:00Z"), "2021-10-01 17:06");
    assert.equal(shortTime("junk"), "junk");
});
test("escapeHtml covers the metacharacters", () => {
    assert.equal(escapeHtml(`<a href="x">&`), "&lt;a href=&quot;x&quot;&gt;&amp;");
});
