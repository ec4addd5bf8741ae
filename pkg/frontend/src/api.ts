/** Typed client for the storymood session API. */

import type {
  Diagnostic,
  EmotionalMap,
  HistoryEntry,
  OccurrenceBody,
  ScenarioDocument,
  StateDiff,
} from "./types.js";

export interface SessionCreated {
  ok: true;
  sessionId: string;
  map: EmotionalMap;
}

export interface SessionRejected {
  ok: false;
  diagnostics: Diagnostic[];
}

export type CreateSessionResult = SessionCreated | SessionRejected;

export interface OccurrenceResult {
  stateDiff: StateDiff;
  map: EmotionalMap;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
  }
}

export interface StorymoodApi {
  health(): Promise<{ status: string }>;
  createSession(doc: ScenarioDocument): Promise<CreateSessionResult>;
  postOccurrence(sessionId: string, body: OccurrenceBody): Promise<OccurrenceResult>;
  undo(sessionId: string): Promise<OccurrenceResult>;
  state(sessionId: string): Promise<EmotionalMap>;
  history(sessionId: string): Promise<HistoryEntry[]>;
  listScenarios(): Promise<{ name: string }[]>;
  getScenario(name: string): Promise<ScenarioDocument>;
}

type FetchLike = typeof fetch;

export class HttpApi implements StorymoodApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    return this.fetchImpl(`${this.baseUrl}${path}`, init);
  }

  private async expectJson<T>(response: Response): Promise<T> {
    if (!response.ok) {
      let detail = response.statusText;
      try {
        const body = (await response.json()) as { detail?: unknown };
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        // keep the status text
      }
      throw new ApiError(response.status, detail);
    }
    return (await response.json()) as T;
  }

  async health(): Promise<{ status: string }> {
    return this.expectJson(await this.request("/api/health"));
  }

  async createSession(doc: ScenarioDocument): Promise<CreateSessionResult> {
    const response = await this.request("/api/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
    if (response.status === 400) {
      const body = (await response.json()) as { diagnostics: Diagnostic[] };
      return { ok: false, diagnostics: body.diagnostics };
    }
    const body = await this.expectJson<{ session_id: string; emotional_map: EmotionalMap }>(
      response,
    );
    return { ok: true, sessionId: body.session_id, map: body.emotional_map };
  }

  private async occurrenceResponse(response: Response): Promise<OccurrenceResult> {
    const body = await this.expectJson<{ state_diff: StateDiff; emotional_map: EmotionalMap }>(
      response,
    );
    return { stateDiff: body.state_diff, map: body.emotional_map };
  }

  async postOccurrence(sessionId: string, occurrence: OccurrenceBody): Promise<OccurrenceResult> {
    const response = await this.request(`/api/sessions/${sessionId}/occurrences`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(occurrence),
    });
    return this.occurrenceResponse(response);
  }

  async undo(sessionId: string): Promise<OccurrenceResult> {
    const response = await this.request(`/api/sessions/${sessionId}/undo`, { method: "POST" });
    return this.occurrenceResponse(response);
  }

  async state(sessionId: string): Promise<EmotionalMap> {
    return this.expectJson(await this.request(`/api/sessions/${sessionId}/state`));
  }

  async history(sessionId: string): Promise<HistoryEntry[]> {
    return this.expectJson(await this.request(`/api/sessions/${sessionId}/history`));
  }

  async listScenarios(): Promise<{ name: string }[]> {
    return this.expectJson(await this.request("/api/scenarios"));
  }

  async getScenario(name: string): Promise<ScenarioDocument> {
    return this.expectJson(await this.request(`/api/scenarios/${name}`));
  }
}
