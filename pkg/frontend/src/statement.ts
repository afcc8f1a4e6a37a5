/**
 * Statement view construction and label editing.
 *
 * Everything here is a pure function: views are built from server
 * payloads, edits produce a new view plus the correction body to
 * persist, and nothing mutates its inputs.  The controller decides
 * when to send the correction and whether to keep or revert the
 * optimistic view.
 */

import { isLegalLabel, labelColor } from "./palette.js";
import type {
  Correction,
  LabelVocabularies,
  StatementRecord,
  TokenInfo,
} from "./types.js";

/** One rendered token: surface form plus its effective label. */
export interface TokenView {
  index: number;
  surface: string;
  label: string;
  color: string;
}

/** Everything the statement panel renders. */
export interface StatementView {
  id: string;
  document: string;
  stype: string;
  status: string;
  note: string;
  /** True once a reviewer correction is stored on the server. */
  corrected: boolean;
  flags: string[];
  tokens: TokenView[];
}

/** Outcome of an attempted edit. */
export type EditResult =
  | { ok: true; view: StatementView; correction: Correction }
  | { ok: false; reason: string };

const STATUS_AUTO = "auto";

function tokenViews(
  tokens: TokenInfo[],
  labels: Record<string, string>,
): TokenView[] {
  return tokens.map((token) => {
    const label = labels[String(token.index)] ?? "NONE";
    return {
      index: token.index,
      surface: token.surface,
      label,
      color: labelColor(label),
    };
  });
}

/**
 * Build the view for one statement payload.
 *
 * The PUT response omits the token list, so callers may pass the
 * tokens kept from the original fetch; the payload's own list wins
 * when present.
 */
export function buildStatementView(
  record: StatementRecord,
  tokens?: TokenInfo[],
): StatementView {
  const tokenList = record.tokens ?? tokens ?? [];
  return {
    id: record.statement,
    document: record.document,
    stype: record.stype,
    status: record.status,
    note: record.note,
    corrected: record.status !== STATUS_AUTO,
    flags: [...record.flags],
    tokens: tokenViews(tokenList, record.effective_labels),
  };
}

/**
 * Relabel the tokens in the inclusive index range `[start, end]`.
 *
 * Illegal labels for the statement's type are rejected here, before
 * any request leaves the browser.  A successful edit returns the
 * optimistic view (labels applied locally) and the correction body
 * holding exactly the changed token indices.
 */
export function editLabels(
  view: StatementView,
  vocab: LabelVocabularies,
  start: number,
  end: number,
  label: string,
): EditResult {
  if (!isLegalLabel(vocab, view.stype, label)) {
    return {
      ok: false,
      reason: `"${label}" is not a legal label for a ${view.stype} statement`,
    };
  }
  if (start > end) {
    return { ok: false, reason: "empty token range" };
  }
  const inRange = view.tokens.some(
    (token) => token.index >= start && token.index <= end,
  );
  if (!inRange) {
    return { ok: false, reason: "token range is outside the statement" };
  }
  const labels: Record<string, string> = {};
  const tokens = view.tokens.map((token) => {
    if (token.index < start || token.index > end) return token;
    labels[String(token.index)] = label;
    return { ...token, label, color: labelColor(label) };
  });
  return {
    ok: true,
    view: { ...view, tokens },
    correction: { labels },
  };
}

/**
 * Switch the statement's layer.
 *
 * The server resets labels not named in the correction to NONE when
 * the type changes, so the body carries just the new type and the
 * refreshed view comes from the server's answer.
 */
export function changeStype(
  view: StatementView,
  vocab: LabelVocabularies,
  stype: string,
): EditResult {
  if (!(stype in vocab)) {
    return { ok: false, reason: `unknown statement type "${stype}"` };
  }
  if (stype === view.stype) {
    return { ok: false, reason: "statement already has this type" };
  }
  return { ok: true, view: { ...view, stype }, correction: { stype } };
}

/**
 * Rebuild the view from a server acknowledgement, keeping the token
 * surfaces from the current view (the PUT response has none).  The
 * review-status badge flips here and only here: `corrected` reflects
 * the status the server reports, not the optimistic edit.
 */
export function mergeServerRecord(
  view: StatementView,
  record: StatementRecord,
): StatementView {
  const tokens: TokenInfo[] = view.tokens.map((token) => ({
    index: token.index,
    surface: token.surface,
  }));
  return buildStatementView(record, tokens);
}
