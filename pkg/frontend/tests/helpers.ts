/** Shared fakes and builders for the UI tests. */

import type {
  CreateSessionResult,
  OccurrenceResult,
  StorymoodApi,
} from "../src/api.js";
import type {
  AgentMapEntry,
  EmotionalMap,
  EmotionNumbers,
  HistoryEntry,
  OccurrenceBody,
  ScenarioDocument,
  StateDiff,
} from "../src/types.js";

export function numbers(happiness = 0, anger = 0, pride = 0): EmotionNumbers {
  return { happiness, anger, pride };
}

export function agentEntry(overrides: Partial<AgentMapEntry> = {}): AgentMapEntry {
  return {
    name: "Agent",
    avatar: { hair_style: "short", hair_color: "black", glasses: false },
    emotions: numbers(),
    primary: { kind: "happiness", value: 0, label: "neutrality", face_index: 5 },
    faces: numbers(5, 0, 5),
    ...overrides,
  };
}

export function emptyMap(): EmotionalMap {
  return {
    agents: {},
    affections: [],
    catalogs: { events: [], objects: [], actions: [] },
  };
}

export class FakeApi implements StorymoodApi {
  calls: Array<{ method: string; args: unknown[] }> = [];
  mapDoc: EmotionalMap = emptyMap();
  historyDoc: HistoryEntry[] = [];
  nextOccurrenceResult: OccurrenceResult | null = null;
  failNextOccurrence: Error | null = null;

  private record(method: string, ...args: unknown[]) {
    this.calls.push({ method, args });
  }

  async health() {
    return { status: "ok" };
  }

  async createSession(doc: ScenarioDocument): Promise<CreateSessionResult> {
    this.record("createSession", doc);
    return { ok: true, sessionId: "fake-session", map: this.mapDoc };
  }

  async postOccurrence(sessionId: string, body: OccurrenceBody): Promise<OccurrenceResult> {
    this.record("postOccurrence", sessionId, body);
    if (this.failNextOccurrence) {
      const error = this.failNextOccurrence;
      this.failNextOccurrence = null;
      throw error;
    }
    if (!this.nextOccurrenceResult) throw new Error("no canned occurrence result");
    return this.nextOccurrenceResult;
  }

  async undo(sessionId: string): Promise<OccurrenceResult> {
    this.record("undo", sessionId);
    if (!this.nextOccurrenceResult) throw new Error("no canned occurrence result");
    return this.nextOccurrenceResult;
  }

  async state(sessionId: string): Promise<EmotionalMap> {
    this.record("state", sessionId);
    return this.mapDoc;
  }

  async history(sessionId: string): Promise<HistoryEntry[]> {
    this.record("history", sessionId);
    return this.historyDoc;
  }

  async listScenarios(): Promise<{ name: string }[]> {
    return [];
  }

  async getScenario(): Promise<ScenarioDocument> {
    throw new Error("no scenarios in the fake");
  }
}

export function diffFor(
  seq: number,
  occurrence: OccurrenceBody,
  agents: Record<string, { before: EmotionNumbers; delta: EmotionNumbers; after: EmotionNumbers }>,
): StateDiff {
  return { seq, occurrence, agents };
}

export async function waitFor(
  predicate: () => boolean,
  timeoutMs = 10_000,
  label = "condition",
): Promise<void> {
  const start = Date.now();
  while (!predicate()) {
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${label}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

export function click(element: Element | null): void {
  if (!element) throw new Error("element to click not found");
  (element as HTMLElement).dispatchEvent(new MouseEvent("click", { bubbles: true }));
}
