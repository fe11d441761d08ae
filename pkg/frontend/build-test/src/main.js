import { ApiClient } from "./api.js";
import { renderChat, renderGraph, renderScopeTree, renderSpmLayer, renderTimeline } from "./render.js";
import { openSession, sendTurn, syncTranscript } from "./state.js";
const params = new URLSearchParams(location.search);
const api = new ApiClient(params.get("api") ?? "http://127.0.0.1:8600");
const el = (id) => document.getElementById(id);
let state;
let currentEntity = null;
async function refreshChat() {
    el("chat").innerHTML = renderChat(state.transcript, state.session.speaker, state.session.addressee);
    el("chat").scrollTop = el("chat").scrollHeight;
}
async function refreshGraph() {
    const graph = await api.getGraph(state.session.session_id);
    el("graph").innerHTML = renderGraph(graph);
    for (const node of el("graph").querySelectorAll("g.node")) {
        node.addEventListener("click", () => {
            void showEntity(node.dataset.entity);
        });
    }
}
async function refreshSpm() {
    const spm = await api.getSpm(state.session.session_id);
    const selector = el("layer");
    if (!selector.options.length) {
        for (const layer of spm.layers.map((l) => l.layer).sort((a, b) => b - a)) {
            const option = document.createElement("option");
            option.value = String(layer);
            option.textContent = `layer ${layer}`;
            selector.appendChild(option);
        }
    }
    const layer = Number(selector.value || spm.layers[0]?.layer || 0);
    el("spm-grid").innerHTML = renderSpmLayer(spm, layer);
    el("scope-tree").innerHTML = renderScopeTree(spm);
}
async function showEntity(name) {
    currentEntity = name;
    try {
        const doc = await api.getEntity(state.session.session_id, name);
        el("timeline").innerHTML = renderTimeline(doc);
    }
    catch (err) {
        el("timeline").innerHTML = `<p class="error">${String(err)}</p>`;
    }
}
async function onSend() {
    const input = el("utterance");
    const text = input.value.trim();
    if (!text)
        return;
    el("send-error").textContent = "";
    try {
        const outcome = await sendTurn(api, state, text);
        input.value = ""; // only cleared on success; errors keep the text
        await refreshChat();
        if (outcome.delta.length) {
            await refreshGraph();
            const entity = currentEntity ?? outcome.refreshEntities[0];
            if (entity)
                await showEntity(entity);
        }
    }
    catch {
        el("send-error").textContent = state.lastError ?? "request failed";
    }
}
async function boot() {
    try {
        state = await openSession(api);
    }
    catch (err) {
        el("send-error").textContent = `cannot reach service at ${api.base}: ${String(err)}`;
        return;
    }
    el("session-info").textContent =
        `${state.session.speaker} → ${state.session.addressee} (${state.session.session_id})`;
    await syncTranscript(api, state);
    await refreshChat();
    await refreshGraph();
    await refreshSpm();
    el("send").addEventListener("click", () => void onSend());
    el("utterance").addEventListener("keydown", (ev) => {
        if (ev.key === "Enter")
            void onSend();
    });
    el("layer").addEventListener("change", () => void refreshSpm());
    el("entity-lookup").addEventListener("keydown", (ev) => {
        if (ev.key === "Enter") {
            void showEntity(el("entity-lookup").value.trim());
        }
    });
}
void boot();
