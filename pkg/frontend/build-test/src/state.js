// Session state kept by the console. The transcript is always re-synced
// from the server after a turn, so the two can never diverge.
export async function openSession(api) {
    const session = await api.createSession();
    return { session, transcript: [], lastError: null };
}
export async function syncTranscript(api, state) {
    state.transcript = await api.getTranscript(state.session.session_id);
}
export async function sendTurn(api, state, text) {
    try {
        const result = await api.sendUtterance(state.session.session_id, text);
        await syncTranscript(api, state);
        state.lastError = null;
        return {
            response: result.response,
            delta: result.kb_delta,
            refreshEntities: [...new Set(result.kb_delta.map((d) => d.entity))],
        };
    }
    catch (err) {
        state.lastError = err instanceof Error ? err.message : String(err);
        throw err;
    }
}
