/**
 * DOM layer: renders the controller's state and routes UI events back
 * into it.
 *
 * Rendering rebuilds the page from state on every change — there is
 * no retained widget state besides the reviewer's token selection, so
 * what is on screen is always a direct function of the last server
 * payloads the controller holds.
 */

import { escapeHtml } from "./html.js";
import { renderScatterSvg } from "./scatter.js";
import type { ReviewController } from "./controller.js";
import type { StatementView, TokenView } from "./statement.js";

/** The reviewer's current token-range selection. */
interface Selection {
  statementId: string;
  start: number;
  end: number;
}

export class ReviewApp {
  private readonly root: HTMLElement;
  private readonly controller: ReviewController;
  private selection: Selection | null = null;

  constructor(root: HTMLElement, controller: ReviewController) {
    this.root = root;
    this.controller = controller;
    controller.onChange = () => this.render();
    this.root.addEventListener("click", (event) => this.onClick(event));
    this.root.addEventListener("change", (event) => this.onChange(event));
    this.render();
  }

  // ----- event routing ------------------------------------------------

  private onClick(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (target === null) return;
    const token = target.closest<HTMLElement>("[data-token]");
    if (token !== null) {
      this.selectToken(
        token.dataset.statement ?? "",
        Number(token.dataset.token),
      );
      return;
    }
    const label = target.closest<HTMLElement>("[data-apply-label]");
    if (label !== null) {
      void this.applySelected(label.dataset.applyLabel ?? "");
      return;
    }
    const note = target.closest<HTMLElement>("[data-save-note]");
    if (note !== null) {
      void this.saveNote(note.dataset.saveNote ?? "");
      return;
    }
    const hit = target.closest<HTMLElement>("[data-open-document]");
    if (hit !== null) {
      void this.controller.openDocument(hit.dataset.openDocument ?? "");
      return;
    }
    if (target.closest("[data-recompute]") !== null) {
      void this.controller.refreshScatter(true);
      return;
    }
    if (target.closest("[data-run-search]") !== null) {
      void this.runSearch();
    }
  }

  private onChange(event: Event): void {
    const target = event.target as HTMLElement | null;
    if (target === null) return;
    if (target.matches("[data-document-select]")) {
      void this.controller.openDocument((target as HTMLSelectElement).value);
      return;
    }
    if (target.matches("[data-stype-select]")) {
      const select = target as HTMLSelectElement;
      void this.controller.applyStype(
        select.dataset.statement ?? "",
        select.value,
      );
    }
  }

  private selectToken(statementId: string, index: number): void {
    const current = this.selection;
    if (current === null || current.statementId !== statementId) {
      this.selection = { statementId, start: index, end: index };
    } else if (current.start === index && current.end === index) {
      this.selection = null;
    } else {
      this.selection = {
        statementId,
        start: Math.min(current.start, index),
        end: Math.max(current.end, index),
      };
    }
    this.render();
  }

  private async applySelected(label: string): Promise<void> {
    const selection = this.selection;
    if (selection === null) return;
    const done = await this.controller.applyEdit(
      selection.statementId,
      selection.start,
      selection.end,
      label,
    );
    if (done) {
      this.selection = null;
      this.render();
    }
  }

  private async saveNote(statementId: string): Promise<void> {
    const field = this.root.querySelector<HTMLTextAreaElement>(
      `textarea[data-note="${CSS.escape(statementId)}"]`,
    );
    if (field !== null) {
      await this.controller.saveNote(statementId, field.value);
    }
  }

  private async runSearch(): Promise<void> {
    const field = this.root.querySelector<HTMLInputElement>(
      "input[data-search-query]",
    );
    if (field !== null && field.value.trim() !== "") {
      await this.controller.runSearch(field.value.trim());
    }
  }

  // ----- rendering ----------------------------------------------------

  private render(): void {
    const c = this.controller;
    this.root.innerHTML = `
      <header class="topbar">
        <h1>Annotation review</h1>
        ${this.renderDocumentPicker()}
        <button type="button" data-recompute>Recompute measures</button>
      </header>
      ${this.renderMessage()}
      <main class="layout">
        <section class="statements">${this.renderStatements()}</section>
        <aside class="sidebar">
          <h2>Visibility vs. centrality</h2>
          ${renderScatterSvg(c.scatter)}
          ${this.renderSearch()}
        </aside>
      </main>`;
  }

  private renderDocumentPicker(): string {
    const c = this.controller;
    if (c.documents.length === 0) {
      return `<span class="muted">no documents</span>`;
    }
    const options = c.documents
      .map((doc) => {
        const selected = doc.id === c.documentId ? " selected" : "";
        return `<option value="${escapeHtml(doc.id)}"${selected}>
          ${escapeHtml(doc.id)} (${doc.sentences} sentences)</option>`;
      })
      .join("");
    return `<select data-document-select>${options}</select>`;
  }

  private renderMessage(): string {
    const message = this.controller.message;
    if (message === null) return "";
    return `<p class="message ${message.kind}">${escapeHtml(message.text)}</p>`;
  }

  private renderStatements(): string {
    const c = this.controller;
    if (c.statementIds.length === 0) {
      return `<p class="muted">No statements to review.</p>`;
    }
    return c.statementIds
      .map((id) => {
        const view = c.views.get(id);
        return view === undefined ? "" : this.renderStatement(view);
      })
      .join("");
  }

  private renderStatement(view: StatementView): string {
    const badgeClass = view.corrected ? "badge corrected" : "badge auto";
    const flags =
      view.flags.length > 0
        ? `<span class="flags">${escapeHtml(view.flags.join(", "))}</span>`
        : "";
    return `
      <article class="statement" data-statement-card="${escapeHtml(view.id)}">
        <header>
          <span class="statement-id">${escapeHtml(view.id)}</span>
          ${this.renderStypeSelect(view)}
          <span class="${badgeClass}">${escapeHtml(view.status)}</span>
          ${flags}
        </header>
        <p class="tokens">${view.tokens
          .map((token) => this.renderToken(view.id, token))
          .join(" ")}</p>
        ${this.renderPalette(view)}
        <div class="note-row">
          <textarea data-note="${escapeHtml(view.id)}"
            placeholder="reviewer note">${escapeHtml(view.note)}</textarea>
          <button type="button" data-save-note="${escapeHtml(view.id)}">
            Save note</button>
        </div>
      </article>`;
  }

  private renderStypeSelect(view: StatementView): string {
    const options = ["regulative", "constitutive"]
      .map((stype) => {
        const selected = stype === view.stype ? " selected" : "";
        return `<option value="${stype}"${selected}>${stype}</option>`;
      })
      .join("");
    return `<select data-stype-select data-statement="${escapeHtml(view.id)}">
      ${options}</select>`;
  }

  private renderToken(statementId: string, token: TokenView): string {
    const selection = this.selection;
    const selected =
      selection !== null &&
      selection.statementId === statementId &&
      token.index >= selection.start &&
      token.index <= selection.end;
    const classes = selected ? "token selected" : "token";
    return `<span class="${classes}" data-token="${token.index}"
      data-statement="${escapeHtml(statementId)}"
      style="border-color:${token.color}"
      title="${escapeHtml(token.label)}">${escapeHtml(token.surface)}<sub>
      ${escapeHtml(token.label)}</sub></span>`;
  }

  private renderPalette(view: StatementView): string {
    const selection = this.selection;
    const active =
      selection !== null && selection.statementId === view.id
        ? `tokens ${selection.start}–${selection.end}`
        : "select tokens first";
    const buttons = this.controller
      .paletteFor(view.id)
      .map(
        (label) =>
          `<button type="button" class="palette" data-apply-label=` +
          `"${escapeHtml(label)}">${escapeHtml(label)}</button>`,
      )
      .join("");
    return `<div class="palette-row">
      <span class="muted">${escapeHtml(active)}</span>${buttons}</div>`;
  }

  private renderSearch(): string {
    const hits = this.controller.searchHits
      .map(
        (hit) =>
          `<li><a href="#" data-open-document="${escapeHtml(hit.id)}">
            ${escapeHtml(hit.id)}</a> <span class="muted">
            ${hit.score.toFixed(3)}</span></li>`,
      )
      .join("");
    return `
      <h2>Search</h2>
      <div class="search-row">
        <input type="text" data-search-query placeholder="query">
        <button type="button" data-run-search>Search</button>
      </div>
      <ul class="hits">${hits}</ul>`;
  }
}
