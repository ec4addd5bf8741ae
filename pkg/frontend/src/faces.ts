/** Face and glyph assets.
 *
 * Indexing matches the engine: 11 happiness faces and 11 pride faces
 * addressed by value + 5, and 6 anger faces addressed by the value itself.
 * These formulas are the only client-side mapping from a value to an asset;
 * the values themselves always come from service responses.
 */

import type { EmotionKindName } from "./types.js";

export const HAPPINESS_FACES: readonly string[] = [
  "\u{1F62D}", // -5 distress
  "\u{1F622}",
  "\u{1F61E}",
  "\u{1F641}",
  "\u{1F615}",
  "\u{1F610}", // 0 neutrality
  "\u{1F642}",
  "\u{1F60A}",
  "\u{1F604}",
  "\u{1F601}",
  "\u{1F929}", // +5 euphoria
];

export const ANGER_FACES: readonly string[] = [
  "\u{1F60C}", // 0 calm
  "\u{1F644}",
  "\u{1F612}",
  "\u{1F620}",
  "\u{1F621}",
  "\u{1F92C}", // 5 rage
];

export const PRIDE_FACES: readonly string[] = [
  "\u{1F648}", // -5 shame
  "\u{1F633}",
  "\u{1F614}",
  "\u{1F615}",
  "\u{1F636}",
  "\u{1F610}", // 0 neutrality
  "\u{1F642}",
  "\u{1F60C}",
  "\u{1F60E}",
  "\u{1F913}",
  "\u{1F981}", // +5 pride
];

/** One glyph per affection integer, addressed by glyph index 0..10. */
export const AFFECTION_GLYPHS: readonly string[] = [
  "⚔️", // -5 total hatred
  "\u{1F494}",
  "\u{1F47F}",
  "\u{1F620}",
  "\u{1F611}",
  "\u{1F610}", // 0 indifference
  "\u{1F642}",
  "\u{1F60A}",
  "\u{1F49B}",
  "❤️",
  "\u{1F496}", // +5 unconditional love
];

export const FACE_SETS: Record<EmotionKindName, readonly string[]> = {
  happiness: HAPPINESS_FACES,
  anger: ANGER_FACES,
  pride: PRIDE_FACES,
};

/** Face index for a value, by the engine's formulas. */
export function faceIndex(kind: EmotionKindName, value: number): number {
  return kind === "anger" ? value : value + 5;
}

export function faceGlyph(kind: EmotionKindName, index: number): string {
  return FACE_SETS[kind][index] ?? "?";
}

export function affectionGlyph(glyphIndex: number): string {
  return AFFECTION_GLYPHS[glyphIndex] ?? "?";
}
