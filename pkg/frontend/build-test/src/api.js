// Typed client for the chunkmind HTTP service. The console holds no KB
// logic; everything rendered comes from these endpoints.
export class ApiError extends Error {
    constructor(status, message) {
        super(message);
        this.status = status;
    }
}
export class ApiClient {
    constructor(base, fetchFn) {
        this.base = base;
        this.fetchFn = fetchFn ?? ((url, init) => globalThis.fetch(url, init));
    }
    async request(path, init) {
        const res = await this.fetchFn(this.base + path, init);
        if (!res.ok) {
            throw new ApiError(res.status, `${res.status}: ${await res.text()}`);
        }
        return (await res.json());
    }
    createSession(body = {}) {
        return this.request("/session", {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        });
    }
    sendUtterance(sessionId, text) {
        return this.request(`/session/${sessionId}/utterance`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ text }),
        });
    }
    getGraph(sessionId) {
        return this.request(`/session/${sessionId}/graph`);
    }
    getSpm(sessionId) {
        return this.request(`/session/${sessionId}/spm`);
    }
    getEntity(sessionId, name) {
        return this.request(`/session/${sessionId}/entity/${encodeURIComponent(name)}`);
    }
    async getTranscript(sessionId) {
        const doc = await this.request(`/session/${sessionId}/transcript`);
        return doc.transcript;
    }
}
