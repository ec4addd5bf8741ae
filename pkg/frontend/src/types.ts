/** Wire formats of the storymood HTTP API, mirrored field by field. */

export type EmotionKindName = "happiness" | "anger" | "pride";

export const EMOTION_KINDS: readonly EmotionKindName[] = ["happiness", "anger", "pride"];

/** One number per emotion; also reused for face indices and deltas. */
export type EmotionNumbers = Record<EmotionKindName, number>;

export interface Avatar {
  hair_style: string;
  hair_color: string;
  glasses: boolean;
}

export interface PrimaryLabel {
  kind: EmotionKindName;
  value: number;
  label: string;
  face_index: number;
}

export interface AgentMapEntry {
  name: string;
  avatar: Avatar;
  emotions: EmotionNumbers;
  primary: PrimaryLabel;
  faces: EmotionNumbers;
}

export interface AffectionEntry {
  from: string;
  to: string;
  value: number;
  glyph_index: number;
  glyph_class: string;
}

export interface CatalogItem {
  id: string;
  name: string;
  value: number;
}

export interface Catalogs {
  events: CatalogItem[];
  objects: CatalogItem[];
  actions: CatalogItem[];
}

export type CatalogKindName = keyof Catalogs;

export interface EmotionalMap {
  agents: Record<string, AgentMapEntry>;
  affections: AffectionEntry[];
  catalogs: Catalogs;
}

export type OccurrenceBody =
  | { kind: "event"; event_id: string; to: string }
  | { kind: "object"; object_id: string; to: string }
  | { kind: "action"; action_id: string; by: string; on: string }
  | { kind: "affection"; from: string; to: string; value: number };

export interface AgentDiff {
  before: EmotionNumbers;
  delta: EmotionNumbers;
  after: EmotionNumbers;
}

export interface StateDiff {
  seq: number;
  occurrence: OccurrenceBody;
  agents: Record<string, AgentDiff>;
}

export interface HistoryEntry {
  seq: number;
  occurrence: OccurrenceBody;
  deltas: Record<string, EmotionNumbers>;
  pre_state: Record<string, EmotionNumbers>;
}

export interface Diagnostic {
  severity: string;
  line: number;
  column: number;
  code: string;
  message: string;
}

export interface ScenarioAgent {
  id: string;
  name: string;
  avatar: Avatar;
}

export interface ScenarioAffection {
  from: string;
  to: string;
  value: number;
}

export interface ScenarioDocument {
  version: 1;
  agents: ScenarioAgent[];
  affections: ScenarioAffection[];
  events: CatalogItem[];
  objects: CatalogItem[];
  actions: CatalogItem[];
}

/** A readable one-liner for an occurrence, used by the timeline. */
export function occurrenceText(occurrence: OccurrenceBody): string {
  switch (occurrence.kind) {
    case "event":
      return `event ${occurrence.event_id} to ${occurrence.to}`;
    case "object":
      return `object ${occurrence.object_id} to ${occurrence.to}`;
    case "action":
      return `action ${occurrence.action_id} by ${occurrence.by} on ${occurrence.on}`;
    case "affection":
      return `affection ${occurrence.from} -> ${occurrence.to} = ${occurrence.value}`;
  }
}
