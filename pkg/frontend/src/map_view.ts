/** Emotional map: one card per agent with a large primary-emotion face,
 * the two other emotions small, satellite mini-faces of the other agents
 * with pairwise affection glyphs, and the catalog panel that triggers
 * occurrences.
 *
 * Every number shown here comes from a service response: the map document
 * supplies values, face indices, and glyph classes; the state diff supplies
 * the delta badges. Nothing is recomputed client side.
 */

import { ApiError, type OccurrenceResult, type StorymoodApi } from "./api.js";
import { affectionGlyph, faceGlyph } from "./faces.js";
import {
  EMOTION_KINDS,
  type EmotionalMap,
  type EmotionKindName,
  type OccurrenceBody,
  type StateDiff,
} from "./types.js";

export interface MapViewCallbacks {
  onUpdate?(map: EmotionalMap, diff: StateDiff): void;
}

const signed = (value: number) => (value > 0 ? `+${value}` : String(value));

export class MapView {
  private sessionId: string | null = null;
  private map: EmotionalMap | null = null;
  private lastDiff: StateDiff | null = null;
  private selectedAgent: string | null = null;
  private pendingActionId: string | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: StorymoodApi,
    private readonly callbacks: MapViewCallbacks = {},
  ) {}

  setSession(sessionId: string, map: EmotionalMap): void {
    this.sessionId = sessionId;
    this.map = map;
    this.lastDiff = null;
    this.selectedAgent = null;
    this.pendingActionId = null;
    this.render();
  }

  update(result: OccurrenceResult): void {
    this.map = result.map;
    this.lastDiff = result.stateDiff;
    this.pendingActionId = null;
    this.render();
    this.callbacks.onUpdate?.(result.map, result.stateDiff);
  }

  currentMap(): EmotionalMap | null {
    return this.map;
  }

  private async post(body: OccurrenceBody): Promise<void> {
    if (!this.sessionId) return;
    try {
      this.update(await this.api.postOccurrence(this.sessionId, body));
    } catch (error) {
      this.showError(error instanceof ApiError ? error.detail : String(error));
    }
  }

  private showError(message: string): void {
    const box = this.root.querySelector("[data-error]");
    if (box) {
      box.textContent = message;
      box.removeAttribute("hidden");
    }
  }

  render(): void {
    this.root.innerHTML = "";
    if (!this.map) {
      this.root.append(this.text("p", "No session yet. Design a scenario first."));
      return;
    }
    const layout = document.createElement("div");
    layout.className = "map-layout";
    layout.append(this.renderAgents(this.map), this.renderCatalogs(this.map));
    const error = document.createElement("div");
    error.setAttribute("data-error", "");
    error.setAttribute("hidden", "");
    error.className = "error";
    this.root.append(layout, error);
  }

  private text(tag: string, content: string): HTMLElement {
    const node = document.createElement(tag);
    node.textContent = content;
    return node;
  }

  private renderAgents(map: EmotionalMap): HTMLElement {
    const panel = document.createElement("div");
    panel.className = "agents";
    panel.setAttribute("data-agents", "");
    for (const [agentId, entry] of Object.entries(map.agents)) {
      const card = document.createElement("div");
      card.className = "agent-card" + (agentId === this.selectedAgent ? " selected" : "");
      card.setAttribute("data-agent-card", agentId);
      card.addEventListener("click", () => {
        this.selectedAgent = agentId;
        this.pendingActionId = null;
        this.render();
      });

      card.append(this.text("h3", entry.name));

      const large = document.createElement("div");
      large.className = "large-face";
      large.setAttribute("data-face", "large");
      large.setAttribute("data-face-kind", entry.primary.kind);
      large.setAttribute("data-face-index", String(entry.primary.face_index));
      large.textContent = faceGlyph(entry.primary.kind, entry.primary.face_index);
      const caption = document.createElement("span");
      caption.className = "face-caption";
      caption.setAttribute("data-primary-value", String(entry.primary.value));
      caption.textContent = `${entry.primary.kind} ${signed(entry.primary.value)} (${entry.primary.label})`;
      card.append(large, caption);

      const smalls = document.createElement("div");
      smalls.className = "small-faces";
      for (const kind of EMOTION_KINDS) {
        if (kind === entry.primary.kind) continue;
        smalls.append(this.renderSmallFace(kind, entry.faces[kind], entry.emotions[kind]));
      }
      card.append(smalls);
      card.append(this.renderSatellites(map, agentId));

      if (this.lastDiff) {
        const diff = this.lastDiff.agents[agentId];
        if (diff) {
          for (const kind of EMOTION_KINDS) {
            const delta = diff.delta[kind];
            if (delta === 0) continue;
            const badge = document.createElement("span");
            badge.className = "badge badge-pop";
            badge.setAttribute("data-badge", `${agentId}:${kind}`);
            badge.textContent = signed(delta);
            badge.title = `${kind} ${signed(delta)}`;
            card.append(badge);
          }
        }
      }
      panel.append(card);
    }
    return panel;
  }

  private renderSmallFace(kind: EmotionKindName, faceIdx: number, value: number): HTMLElement {
    const face = document.createElement("span");
    face.className = "small-face";
    face.setAttribute("data-face", `small-${kind}`);
    face.setAttribute("data-face-index", String(faceIdx));
    face.textContent = faceGlyph(kind, faceIdx);
    const amount = document.createElement("em");
    amount.setAttribute("data-value", String(value));
    amount.textContent = ` ${signed(value)}`;
    face.append(amount);
    face.title = kind;
    return face;
  }

  private renderSatellites(map: EmotionalMap, centralId: string): HTMLElement {
    const ring = document.createElement("div");
    ring.className = "satellites";
    for (const [otherId, other] of Object.entries(map.agents)) {
      if (otherId === centralId) continue;
      const entry = map.affections.find(
        (a) => a.from === otherId && a.to === centralId,
      );
      const satellite = document.createElement("span");
      satellite.className = "satellite";
      satellite.setAttribute("data-satellite", otherId);

      const mini = document.createElement("span");
      mini.className = "mini-face";
      mini.setAttribute("data-face", "mini");
      mini.setAttribute("data-face-index", String(other.primary.face_index));
      mini.textContent = faceGlyph(other.primary.kind, other.primary.face_index);
      mini.title = `${other.name}: ${other.primary.label}`;
      satellite.append(mini);

      if (entry) {
        const glyph = document.createElement("span");
        glyph.className = `affection-glyph ${entry.glyph_class}`;
        glyph.setAttribute("data-affection-glyph", `${otherId}:${centralId}`);
        glyph.setAttribute("data-value", String(entry.value));
        glyph.textContent = `${affectionGlyph(entry.glyph_index)}${signed(entry.value)}`;
        glyph.title = `${otherId} → ${centralId}: ${signed(entry.value)}`;
        satellite.append(glyph);
      }
      ring.append(satellite);
    }
    return ring;
  }

  private renderCatalogs(map: EmotionalMap): HTMLElement {
    const panel = document.createElement("div");
    panel.className = "catalog-panel";
    panel.setAttribute("data-catalogs", "");
    const hint = this.text(
      "p",
      this.selectedAgent
        ? `Selected: ${this.selectedAgent}`
        : "Select an agent, then trigger an occurrence.",
    );
    hint.setAttribute("data-selection-hint", "");
    panel.append(hint);

    const sections: Array<[keyof EmotionalMap["catalogs"], string, string]> = [
      ["events", "Events", "event"],
      ["objects", "Objects", "object"],
      ["actions", "Actions", "action"],
    ];
    for (const [key, title, kind] of sections) {
      panel.append(this.text("h3", title));
      for (const item of map.catalogs[key]) {
        const button = document.createElement("button");
        button.setAttribute("data-catalog-item", `${kind}:${item.id}`);
        button.className = "catalog-item";
        const value = document.createElement("em");
        value.setAttribute("data-value", String(item.value));
        value.textContent = ` ${signed(item.value)}`;
        button.textContent = item.name;
        button.append(value);
        button.addEventListener("click", (event) => {
          event.stopPropagation();
          this.triggerCatalogItem(kind, item.id);
        });
        panel.append(button);
      }
    }

    const chooser = document.createElement("div");
    chooser.className = "action-target";
    chooser.setAttribute("data-action-target-chooser", "");
    if (this.pendingActionId && this.selectedAgent) {
      chooser.append(this.text("p", `${this.selectedAgent} performs ${this.pendingActionId} on:`));
      for (const agentId of Object.keys(map.agents)) {
        const target = document.createElement("button");
        target.setAttribute("data-action-target", agentId);
        target.textContent = map.agents[agentId].name;
        target.addEventListener("click", (event) => {
          event.stopPropagation();
          const body: OccurrenceBody = {
            kind: "action",
            action_id: this.pendingActionId as string,
            by: this.selectedAgent as string,
            on: agentId,
          };
          void this.post(body);
        });
        chooser.append(target);
      }
    } else {
      chooser.setAttribute("hidden", "");
    }
    panel.append(chooser);
    return panel;
  }

  private triggerCatalogItem(kind: string, itemId: string): void {
    if (!this.selectedAgent) {
      this.showError("select an agent first");
      return;
    }
    if (kind === "event") {
      void this.post({ kind: "event", event_id: itemId, to: this.selectedAgent });
    } else if (kind === "object") {
      void this.post({ kind: "object", object_id: itemId, to: this.selectedAgent });
    } else {
      // Actions involve two agents: the selected one performs, the target
      // is chosen from the prompt rendered below the catalog.
      this.pendingActionId = itemId;
      this.render();
    }
  }
}
