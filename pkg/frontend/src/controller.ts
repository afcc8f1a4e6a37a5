/**
 * Application state and the review loop, with no DOM attached.
 *
 * The controller owns every interaction the page offers: loading
 * documents and statements, applying label and type corrections with
 * optimistic local updates (reverted if the server refuses), saving
 * reviewer notes, and refreshing the measures scatter.  The DOM layer
 * renders whatever state the controller holds and calls back into it;
 * tests drive the controller directly.
 */

import { ApiClient, ApiError } from "./api.js";
import { layerLabels } from "./palette.js";
import {
  buildStatementView,
  changeStype,
  editLabels,
  mergeServerRecord,
  type StatementView,
} from "./statement.js";
import { buildScatterView, type ScatterView } from "./scatter.js";
import type {
  DocumentSummary,
  LabelVocabularies,
  SearchHit,
} from "./types.js";

/** Transient status line shown above the statement list. */
export interface Message {
  kind: "info" | "error";
  text: string;
}

const EMPTY_VOCAB: LabelVocabularies = { regulative: [], constitutive: [] };

export class ReviewController {
  private readonly api: ApiClient;

  vocab: LabelVocabularies = EMPTY_VOCAB;
  documents: DocumentSummary[] = [];
  documentId: string | null = null;
  /** Statement views for the open document, in server order. */
  statementIds: string[] = [];
  views = new Map<string, StatementView>();
  scatter: ScatterView = buildScatterView([]);
  message: Message | null = null;
  searchHits: SearchHit[] = [];

  /** Render hook; the DOM layer assigns it. */
  onChange: (() => void) | null = null;

  constructor(api: ApiClient) {
    this.api = api;
  }

  private notify(): void {
    this.onChange?.();
  }

  private setMessage(kind: Message["kind"], text: string): void {
    this.message = { kind, text };
  }

  /** Load vocabularies, documents, the first document, and the plot. */
  async init(): Promise<void> {
    this.vocab = await this.api.labels();
    this.documents = await this.api.documents();
    const first = this.documents[0];
    if (first !== undefined) {
      await this.openDocument(first.id);
    }
    await this.refreshScatter(false);
    this.notify();
  }

  /** Fetch and display one document's statements. */
  async openDocument(documentId: string): Promise<void> {
    const payload = await this.api.statements(documentId);
    this.documentId = documentId;
    this.statementIds = [];
    this.views.clear();
    for (const record of payload.statements) {
      this.statementIds.push(record.statement);
      this.views.set(record.statement, buildStatementView(record));
    }
    this.notify();
  }

  /** The labels legal for one statement, from the server vocabulary. */
  paletteFor(statementId: string): string[] {
    const view = this.views.get(statementId);
    if (view === undefined) return [];
    return layerLabels(this.vocab, view.stype);
  }

  /**
   * Relabel a token range.
   *
   * Illegal labels never leave the browser.  Legal ones update the
   * view immediately, then persist; the review-status badge changes
   * only when the server acknowledges, and a refused correction puts
   * the previous view back and surfaces the server's message.
   */
  async applyEdit(
    statementId: string,
    start: number,
    end: number,
    label: string,
  ): Promise<boolean> {
    const view = this.views.get(statementId);
    if (view === undefined) return false;
    const result = editLabels(view, this.vocab, start, end, label);
    if (!result.ok) {
      this.setMessage("error", result.reason);
      this.notify();
      return false;
    }
    return this.persist(statementId, view, result.view, result.correction);
  }

  /** Switch a statement's layer (the server resets its labels). */
  async applyStype(statementId: string, stype: string): Promise<boolean> {
    const view = this.views.get(statementId);
    if (view === undefined) return false;
    const result = changeStype(view, this.vocab, stype);
    if (!result.ok) {
      this.setMessage("error", result.reason);
      this.notify();
      return false;
    }
    return this.persist(statementId, view, result.view, result.correction);
  }

  /** Store a reviewer note. */
  async saveNote(statementId: string, note: string): Promise<boolean> {
    const view = this.views.get(statementId);
    if (view === undefined) return false;
    return this.persist(statementId, view, { ...view, note }, { note });
  }

  private async persist(
    statementId: string,
    previous: StatementView,
    optimistic: StatementView,
    correction: Parameters<ApiClient["correct"]>[1],
  ): Promise<boolean> {
    this.views.set(statementId, optimistic);
    this.notify();
    try {
      const record = await this.api.correct(statementId, correction);
      this.views.set(statementId, mergeServerRecord(optimistic, record));
      this.setMessage("info", `stored correction for ${statementId}`);
      this.notify();
      return true;
    } catch (error) {
      this.views.set(statementId, previous);
      if (error instanceof ApiError) {
        const offending = error.offending;
        const suffix =
          offending.length > 0 ? ` (refused: ${offending.join(", ")})` : "";
        this.setMessage("error", `${error.message}${suffix}`);
      } else {
        this.setMessage("error", String(error));
      }
      this.notify();
      return false;
    }
  }

  /**
   * Refresh the scatter, optionally asking the server to recompute
   * the measures over the reviewed annotations first.
   */
  async refreshScatter(recompute = true): Promise<void> {
    if (recompute) {
      await this.api.recompute();
    }
    const rows = await this.api.scatter();
    this.scatter = buildScatterView(rows);
    this.notify();
  }

  /** Rank documents for a query. */
  async runSearch(query: string): Promise<void> {
    this.searchHits = await this.api.search(query);
    this.notify();
  }
}
