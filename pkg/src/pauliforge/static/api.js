/** Thin typed client for the session service JSON API.
 *
 * The fetch implementation is injectable so tests can run against a mocked
 * transport; everything else is plain request/response plumbing with shape
 * checks on the way in.
 */
export class ServiceError extends Error {
    constructor(status, body) {
        super(`${body.code}: ${body.message}`);
        this.status = status;
        this.body = body;
        this.name = "ServiceError";
    }
}
function isRecord(x) {
    return typeof x === "object" && x !== null && !Array.isArray(x);
}
function need(cond, what) {
    if (!cond) {
        throw new Error(`malformed service response: ${what}`);
    }
}
function checkStats(x) {
    need(isRecord(x), "stats object");
    const s = x;
    for (const key of ["depth", "t_depth", "gate_count"]) {
        need(typeof s[key] === "number", `numeric stats.${key}`);
    }
    need(isRecord(s.counts), "stats.counts");
    return s;
}
function checkCircuit(x) {
    need(isRecord(x), "circuit object");
    const c = x;
    need(typeof c.prc === "string", "circuit.prc text");
    need(typeof c.n === "number", "circuit.n");
    need(Array.isArray(c.stages) && c.stages.every((v) => typeof v === "number"), "circuit.stages");
    return c;
}
function checkState(x) {
    need(isRecord(x), "session state");
    const s = x;
    return {
        stats: checkStats(s.stats),
        circuit: checkCircuit(s.circuit),
        equivalent: s.equivalent === true,
    };
}
export class ApiClient {
    constructor(base, fetchImpl = (url, init) => fetch(url, init)) {
        this.base = base;
        this.fetchImpl = fetchImpl;
    }
    async request(path, init) {
        const response = await this.fetchImpl(`${this.base}${path}`, init);
        const body = await response.json();
        if (!response.ok) {
            const err = isRecord(body) && typeof body.code === "string"
                ? body
                : { code: "unknown", message: JSON.stringify(body) };
            throw new ServiceError(response.status, err);
        }
        return body;
    }
    post(path, payload) {
        return this.request(path, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(payload ?? {}),
        });
    }
    async openSession(circuit) {
        const body = await this.post("/sessions", { circuit });
        need(isRecord(body) && typeof body.id === "string", "session id");
        const rec = body;
        return { id: rec.id, ...checkState(body) };
    }
    async moves(id) {
        const body = await this.request(`/sessions/${id}/moves`);
        need(Array.isArray(body), "move list");
        return body;
    }
    async apply(id, step) {
        return checkState(await this.post(`/sessions/${id}/apply`, step));
    }
    async undo(id) {
        return checkState(await this.post(`/sessions/${id}/undo`));
    }
    async redo(id) {
        return checkState(await this.post(`/sessions/${id}/redo`));
    }
    async builtins() {
        const body = await this.request("/builtins");
        need(isRecord(body), "builtins map");
        return body;
    }
    async scripts() {
        const body = await this.request("/scripts");
        need(Array.isArray(body), "script list");
        return body;
    }
    async script(name) {
        const body = await this.request(`/scripts/${name}`);
        need(isRecord(body) && typeof body.initial === "string" && Array.isArray(body.steps), "script payload");
        return body;
    }
}
