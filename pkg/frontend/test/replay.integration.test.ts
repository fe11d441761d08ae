// Drives the real Python service through the console's client stack:
// the two-turn household dialogue must match the engine's own transcript,
// and the record timeline must show the 17:06 boundary.

import assert from "node:assert/strict";
import { spawn } from "node:child_process";
import { test } from "node:test";

import { ApiClient } from "../src/api.js";
import { renderChat, renderTimeline } from "../src/render.js";
import { openSession, sendTurn } from "../src/state.js";

const PORT = 8689;
const BASE = `http://127.0.0.1:${PORT}`;

async function serviceUp(timeoutMs = 20000): Promise<boolean> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${BASE}/session`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: "{}",
      });
      if (res.ok) return true;
    } catch {
      await new Promise((r) => setTimeout(r, 300));
    }
  }
  return false;
}

test("console replay equals the service transcript", async (t) => {
  const server = spawn("python3", ["-m", "chunkmind.cli", "serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  t.after(() => {
    server.kill();
  });
  server.on("error", () => {});

  if (!(await serviceUp())) {
    server.kill();
    t.skip("chunkmind service not reachable (is the package installed?)");
    return;
  }

  const api = new ApiClient(BASE);
  const state = await openSession(api);

  const first = await sendTurn(api, state, "Nana, do we have any apple?");
  assert.equal(first.response, "Yes.");
  assert.deepEqual(first.delta, []);

  const second = await sendTurn(api, state, "Give me an apple.");
  assert.equal(second.response, "Sure.");
  assert.equal(second.delta.length, 1);
  assert.equal(second.delta[0].new_quantity, 2);

  // the console transcript must equal GET /transcript verbatim
  const serverTranscript = await api.getTranscript(state.session.session_id);
  assert.deepEqual(state.transcript, serverTranscript);
  assert.deepEqual(
    serverTranscript.map((turn) => turn.response),
    ["Yes.", "Sure."],
  );

  const chat = renderChat(state.transcript, state.session.speaker, state.session.addressee);
  assert.ok(chat.includes("Yes.") && chat.includes("Sure."));

  // the apple timeline pane shows the record boundary
  const apple = await api.getEntity(state.session.session_id, "apple");
  const timeline = renderTimeline(apple);
  assert.ok(timeline.includes("17:06"), "timeline must show the 17:06 boundary");
  assert.ok(timeline.includes("qty 3") && timeline.includes("qty 2"));
});
