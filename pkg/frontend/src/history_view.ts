/** History timeline: ordered occurrences with per-agent pre-clamp deltas,
 * an undo button, and a scrubber that shows the state as of any entry.
 *
 * Historical states are pure data selection from server snapshots: the
 * state after entry k is the pre-state snapshot of entry k+1, and the state
 * after the head entry is the current map. Faces for snapshots use the
 * engine's index formulas; no emotion value is ever computed here.
 */

import type { StorymoodApi } from "./api.js";
import { faceGlyph, faceIndex } from "./faces.js";
import {
  EMOTION_KINDS,
  occurrenceText,
  type EmotionalMap,
  type EmotionNumbers,
  type HistoryEntry,
} from "./types.js";

export interface HistoryCallbacks {
  onUndo?(): void;
}

const signed = (value: number) => (value > 0 ? `+${value}` : String(value));

export class HistoryView {
  private sessionId: string | null = null;
  private entries: HistoryEntry[] = [];
  private currentMap: EmotionalMap | null = null;
  private selected: number | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: StorymoodApi,
    private readonly callbacks: HistoryCallbacks = {},
  ) {}

  setSession(sessionId: string): void {
    this.sessionId = sessionId;
    this.entries = [];
    this.currentMap = null;
    this.selected = null;
    this.render();
  }

  async refresh(currentMap: EmotionalMap): Promise<void> {
    this.currentMap = currentMap;
    this.selected = null;
    if (this.sessionId) {
      this.entries = await this.api.history(this.sessionId);
    }
    this.render();
  }

  /** Emotions after entry *index*: the next entry's pre-state snapshot, or
   * the current map for the head entry. */
  stateAfter(index: number): Record<string, EmotionNumbers> | null {
    if (index + 1 < this.entries.length) {
      return this.entries[index + 1].pre_state;
    }
    if (!this.currentMap) return null;
    const emotions: Record<string, EmotionNumbers> = {};
    for (const [agentId, entry] of Object.entries(this.currentMap.agents)) {
      emotions[agentId] = entry.emotions;
    }
    return emotions;
  }

  /** Confirm the held head state still matches the server. */
  async verifyHead(): Promise<boolean> {
    if (!this.sessionId || !this.currentMap) return false;
    const fresh = await this.api.state(this.sessionId);
    const ok = JSON.stringify(fresh.agents) === JSON.stringify(this.currentMap.agents);
    const marker = this.root.querySelector("[data-sync]");
    if (marker) marker.setAttribute("data-sync", ok ? "ok" : "stale");
    return ok;
  }

  render(): void {
    this.root.innerHTML = "";
    const heading = document.createElement("h2");
    heading.textContent = "History";
    const sync = document.createElement("span");
    sync.setAttribute("data-sync", "ok");
    heading.append(sync);
    this.root.append(heading);

    const undo = document.createElement("button");
    undo.setAttribute("data-undo", "");
    undo.textContent = "Undo last occurrence";
    if (this.entries.length === 0) undo.setAttribute("hidden", "");
    undo.addEventListener("click", () => this.callbacks.onUndo?.());
    this.root.append(undo);

    const list = document.createElement("ol");
    list.setAttribute("data-entries", "");
    this.entries.forEach((entry, index) => {
      const item = document.createElement("li");
      item.setAttribute("data-history-entry", String(entry.seq));

      const select = document.createElement("button");
      select.setAttribute("data-select-entry", String(index));
      select.textContent = `${entry.seq}. ${occurrenceText(entry.occurrence)}`;
      select.addEventListener("click", () => {
        this.selected = index;
        this.render();
      });
      item.append(select);

      const chips = document.createElement("span");
      chips.className = "chips";
      for (const [agentId, delta] of Object.entries(entry.deltas)) {
        for (const kind of EMOTION_KINDS) {
          if (delta[kind] === 0) continue;
          const chip = document.createElement("span");
          chip.className = "chip";
          chip.setAttribute("data-delta", `${agentId}:${kind}`);
          chip.textContent = `${agentId} ${kind} ${signed(delta[kind])}`;
          chips.append(chip);
        }
      }
      item.append(chips);
      list.append(item);
    });
    this.root.append(list);

    if (this.selected !== null) {
      this.root.append(this.renderSnapshot(this.selected));
    }
  }

  private renderSnapshot(index: number): HTMLElement {
    const panel = document.createElement("div");
    panel.setAttribute("data-historical", String(index));
    panel.className = "historical";
    const title = document.createElement("h4");
    title.textContent = `State after step ${this.entries[index].seq}`;
    panel.append(title);
    const state = this.stateAfter(index);
    if (!state) return panel;
    const table = document.createElement("table");
    for (const [agentId, emotions] of Object.entries(state)) {
      const row = document.createElement("tr");
      const name = document.createElement("th");
      name.textContent = agentId;
      row.append(name);
      for (const kind of EMOTION_KINDS) {
        const cell = document.createElement("td");
        const index_ = faceIndex(kind, emotions[kind]);
        cell.setAttribute("data-hist-value", `${agentId}:${kind}`);
        cell.setAttribute("data-face-index", String(index_));
        cell.textContent = `${faceGlyph(kind, index_)} ${signed(emotions[kind])}`;
        row.append(cell);
      }
      table.append(row);
    }
    panel.append(table);
    return panel;
  }
}
