/**
 * Visibility-versus-centrality scatter.
 *
 * `buildScatterView` lays out the points; `renderScatterSvg` turns the
 * view into an SVG string.  Point coordinates are the payload values
 * untouched — the only arithmetic here is the affine map from data
 * space to pixels.  Both functions are pure, so the plot is exactly a
 * function of the last payload received.
 */

import { escapeHtml } from "./html.js";
import type { ScatterPoint } from "./types.js";

export const ACTOR_COLOR = "#1f77b4";
export const OBJECT_COLOR = "#2ca02c";
export const NEUTRAL_COLOR = "#757575";

export const EMPTY_MESSAGE =
  "No measures yet. Run the pipeline or recompute to populate the plot.";

/** Color for an entity kind as the payload spells it. */
export function kindColor(kind: string): string {
  const normalized = kind.toLowerCase();
  if (normalized === "actor") return ACTOR_COLOR;
  if (normalized === "object") return OBJECT_COLOR;
  return NEUTRAL_COLOR;
}

/** Plot geometry; defaults fit the sidebar panel. */
export interface ScatterConfig {
  width: number;
  height: number;
  margin: number;
}

export const DEFAULT_CONFIG: ScatterConfig = {
  width: 460,
  height: 460,
  margin: 48,
};

/** One placed point: data coordinates plus their pixel position. */
export interface PlacedPoint {
  entity: string;
  kind: string;
  /** Data coordinates, verbatim from the payload. */
  x: number;
  y: number;
  /** Pixel coordinates inside the SVG. */
  px: number;
  py: number;
  color: string;
}

/** Everything the plot renders. */
export interface ScatterView {
  empty: boolean;
  points: PlacedPoint[];
  /** Square data domain `[0, domain]` shared by both axes. */
  domain: number;
  /** Dashed guide along y = x, in pixel coordinates. */
  diagonal: { x1: number; y1: number; x2: number; y2: number };
  config: ScatterConfig;
}

/**
 * Lay out scatter rows.
 *
 * Both axes share the domain `[0, max value]` so the y = x guide is
 * meaningful; an all-zero payload falls back to a unit domain, which
 * pins every point to the plot origin.
 */
export function buildScatterView(
  rows: ScatterPoint[],
  config: ScatterConfig = DEFAULT_CONFIG,
): ScatterView {
  const { width, height, margin } = config;
  const innerWidth = width - 2 * margin;
  const innerHeight = height - 2 * margin;
  const top = Math.max(
    0,
    ...rows.map((row) => row.visibility),
    ...rows.map((row) => row.centrality),
  );
  const domain = top > 0 ? top : 1;
  const toPx = (value: number) => margin + (value / domain) * innerWidth;
  const toPy = (value: number) =>
    height - margin - (value / domain) * innerHeight;
  const points = rows.map((row) => ({
    entity: row.entity,
    kind: row.kind,
    x: row.visibility,
    y: row.centrality,
    px: toPx(row.visibility),
    py: toPy(row.centrality),
    color: kindColor(row.kind),
  }));
  return {
    empty: rows.length === 0,
    points,
    domain,
    diagonal: { x1: toPx(0), y1: toPy(0), x2: toPx(domain), y2: toPy(domain) },
    config,
  };
}

function axisTicks(domain: number): number[] {
  return [0, domain / 2, domain];
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  if (Number.isInteger(value)) return String(value);
  return value.toFixed(2);
}

/**
 * Render the view as an SVG string: axes with three ticks each, the
 * dashed diagonal guide, one circle per entity (hover shows the
 * entity's name via a `<title>` child), and a kind legend.  An empty
 * view renders the empty-state message instead.
 */
export function renderScatterSvg(view: ScatterView): string {
  const { width, height, margin } = view.config;
  const parts: string[] = [];
  parts.push(
    `<svg class="scatter" viewBox="0 0 ${width} ${height}" ` +
      `width="${width}" height="${height}" role="img" ` +
      `aria-label="visibility versus centrality">`,
  );
  if (view.empty) {
    parts.push(
      `<text class="empty-state" x="${width / 2}" y="${height / 2}" ` +
        `text-anchor="middle">${escapeHtml(EMPTY_MESSAGE)}</text>`,
    );
    parts.push("</svg>");
    return parts.join("");
  }
  const x0 = margin;
  const x1 = width - margin;
  const y0 = height - margin;
  const y1 = margin;
  // Axes.
  parts.push(
    `<line class="axis" x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}"/>`,
    `<line class="axis" x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}"/>`,
  );
  for (const tick of axisTicks(view.domain)) {
    const px = x0 + (tick / view.domain) * (x1 - x0);
    const py = y0 - (tick / view.domain) * (y0 - y1);
    parts.push(
      `<text class="tick" x="${px}" y="${y0 + 16}" text-anchor="middle">` +
        `${formatTick(tick)}</text>`,
      `<text class="tick" x="${x0 - 8}" y="${py + 4}" text-anchor="end">` +
        `${formatTick(tick)}</text>`,
    );
  }
  parts.push(
    `<text class="axis-label" x="${(x0 + x1) / 2}" y="${height - 8}" ` +
      `text-anchor="middle">visibility</text>`,
    `<text class="axis-label" x="14" y="${(y0 + y1) / 2}" ` +
      `text-anchor="middle" transform="rotate(-90 14 ${(y0 + y1) / 2})">` +
      `centrality</text>`,
  );
  // Guide along y = x.
  const d = view.diagonal;
  parts.push(
    `<line class="diagonal" x1="${d.x1}" y1="${d.y1}" x2="${d.x2}" ` +
      `y2="${d.y2}" stroke-dasharray="5 5"/>`,
  );
  for (const point of view.points) {
    parts.push(
      `<circle class="entity-point" data-kind="${escapeHtml(point.kind)}" ` +
        `cx="${point.px}" cy="${point.py}" r="6" fill="${point.color}">` +
        `<title>${escapeHtml(point.entity)}</title></circle>`,
    );
  }
  // Legend.
  const legendY = margin / 2;
  parts.push(
    `<circle cx="${x1 - 150}" cy="${legendY}" r="6" fill="${ACTOR_COLOR}"/>`,
    `<text class="legend" x="${x1 - 138}" y="${legendY + 4}">actors</text>`,
    `<circle cx="${x1 - 70}" cy="${legendY}" r="6" fill="${OBJECT_COLOR}"/>`,
    `<text class="legend" x="${x1 - 58}" y="${legendY + 4}">objects</text>`,
  );
  parts.push("</svg>");
  return parts.join("");
}
