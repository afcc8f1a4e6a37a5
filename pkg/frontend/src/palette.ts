/**
 * Label colors and layer legality.
 *
 * The color map covers every label either layer can carry — analogous
 * roles share a hue across layers (party roles blue, aims and
 * functions red, deontics and modals purple, objects and properties
 * green) so a reviewer switching layers keeps their bearings.  Which
 * labels are legal for a statement is decided purely by the
 * vocabulary payload the server sends, never by this file.
 */

import type { LabelVocabularies } from "./types.js";

/** One fixed color per label the annotation layers define. */
export const LABEL_COLORS: Record<string, string> = {
  // Regulative layer.
  A: "#1565c0",
  "A-prop": "#5e92f3",
  D: "#7b1fa2",
  I: "#c62828",
  "B-dir": "#2e7d32",
  "B-ind": "#00897b",
  "B-prop": "#7cb342",
  // Constitutive layer.
  E: "#1565c0",
  "E-prop": "#5e92f3",
  F: "#c62828",
  M: "#7b1fa2",
  P: "#2e7d32",
  "P-prop": "#7cb342",
  // Shared.
  CTX: "#ef6c00",
  NONE: "#90a4ae",
};

/** Color for labels the map does not know (defensive only). */
export const FALLBACK_COLOR = "#757575";

export function labelColor(label: string): string {
  return LABEL_COLORS[label] ?? FALLBACK_COLOR;
}

/**
 * The labels a statement of the given type may carry, in the order
 * the server lists them.  Unknown types get an empty palette, which
 * makes every edit illegal rather than guessing a layer.
 */
export function layerLabels(
  vocab: LabelVocabularies,
  stype: string,
): string[] {
  if (stype === "regulative") return [...vocab.regulative];
  if (stype === "constitutive") return [...vocab.constitutive];
  return [];
}

/** Client-side guard: is `label` legal for a statement of `stype`? */
export function isLegalLabel(
  vocab: LabelVocabularies,
  stype: string,
  label: string,
): boolean {
  return layerLabels(vocab, stype).includes(label);
}
