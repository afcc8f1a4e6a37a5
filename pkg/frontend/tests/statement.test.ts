import { describe, expect, it } from "vitest";

import { labelColor } from "../src/palette.js";
import {
  buildStatementView,
  changeStype,
  editLabels,
  mergeServerRecord,
} from "../src/statement.js";
import type { StatementRecord } from "../src/types.js";
import { statementRecord, tokens, VOCAB } from "./fixtures.js";

const SURFACES = [
  "The",
  "Secretariat",
  "shall",
  "review",
  "the",
  "report",
  "through",
  "the",
  "Committee",
  ".",
];

const LABELS: Record<string, string> = {
  "1": "A",
  "2": "A",
  "3": "D",
  "4": "I",
  "5": "B-dir",
  "6": "B-dir",
  "7": "CTX",
  "8": "CTX",
  "9": "CTX",
  "10": "NONE",
};

function record(): StatementRecord {
  return statementRecord({
    statement: "conv/s0",
    stype: "regulative",
    labels: { ...LABELS },
    tokens: tokens(SURFACES),
  });
}

describe("building the statement view", () => {
  it("joins token surfaces with their effective labels", () => {
    const view = buildStatementView(record());
    expect(view.id).toBe("conv/s0");
    expect(view.tokens).toHaveLength(10);
    expect(view.tokens[1]).toEqual({
      index: 2,
      surface: "Secretariat",
      label: "A",
      color: labelColor("A"),
    });
    expect(view.tokens[8]?.label).toBe("CTX");
  });

  it("defaults unlabeled positions to NONE", () => {
    const payload = record();
    delete payload.effective_labels["10"];
    const view = buildStatementView(payload);
    expect(view.tokens[9]?.label).toBe("NONE");
  });

  it("reads the badge from the server status", () => {
    expect(buildStatementView(record()).corrected).toBe(false);
    const reviewed = { ...record(), status: "expert-corrected" };
    expect(buildStatementView(reviewed).corrected).toBe(true);
  });

  it("prefers the payload token list but accepts a kept one", () => {
    const bare = record();
    delete bare.tokens;
    expect(buildStatementView(bare).tokens).toHaveLength(0);
    expect(buildStatementView(bare, tokens(SURFACES)).tokens).toHaveLength(10);
  });
});

describe("editing labels", () => {
  it("applies a legal label across the token range", () => {
    const view = buildStatementView(record());
    const result = editLabels(view, VOCAB, 8, 9, "B-ind");
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.view.tokens[7]?.label).toBe("B-ind");
    expect(result.view.tokens[8]?.label).toBe("B-ind");
    expect(result.view.tokens[8]?.color).toBe(labelColor("B-ind"));
    expect(result.correction).toEqual({
      labels: { "8": "B-ind", "9": "B-ind" },
    });
  });

  it("leaves tokens outside the range alone", () => {
    const view = buildStatementView(record());
    const result = editLabels(view, VOCAB, 9, 9, "B-ind");
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.view.tokens[6]?.label).toBe("CTX");
    expect(result.view.tokens[7]?.label).toBe("CTX");
    expect(result.correction).toEqual({ labels: { "9": "B-ind" } });
  });

  it("does not mutate the original view", () => {
    const view = buildStatementView(record());
    editLabels(view, VOCAB, 9, 9, "B-ind");
    expect(view.tokens[8]?.label).toBe("CTX");
  });

  it("rejects a constitutive label on a regulative statement", () => {
    const view = buildStatementView(record());
    const result = editLabels(view, VOCAB, 9, 9, "E");
    expect(result.ok).toBe(false);
    if (result.ok) return;
    expect(result.reason).toContain('"E"');
    expect(result.reason).toContain("regulative");
  });

  it("rejects empty and out-of-statement ranges", () => {
    const view = buildStatementView(record());
    expect(editLabels(view, VOCAB, 9, 8, "B-ind").ok).toBe(false);
    expect(editLabels(view, VOCAB, 40, 45, "B-ind").ok).toBe(false);
  });
});

describe("changing the statement type", () => {
  it("produces a correction carrying only the new type", () => {
    const view = buildStatementView(record());
    const result = changeStype(view, VOCAB, "constitutive");
    expect(result.ok).toBe(true);
    if (!result.ok) return;
    expect(result.view.stype).toBe("constitutive");
    expect(result.correction).toEqual({ stype: "constitutive" });
  });

  it("rejects unknown types and no-op switches", () => {
    const view = buildStatementView(record());
    expect(changeStype(view, VOCAB, "imperative").ok).toBe(false);
    expect(changeStype(view, VOCAB, "regulative").ok).toBe(false);
  });
});

describe("merging the server acknowledgement", () => {
  it("flips the badge and relabels from the server's answer", () => {
    const view = buildStatementView(record());
    const edited = editLabels(view, VOCAB, 9, 9, "B-ind");
    expect(edited.ok).toBe(true);
    if (!edited.ok) return;

    // PUT responses carry no token list; labels come back merged.
    const ack: StatementRecord = {
      ...record(),
      status: "expert-corrected",
      note: "checked against the source text",
      corrected_labels: { "9": "B-ind" },
      effective_labels: { ...LABELS, "9": "B-ind" },
    };
    delete ack.tokens;

    const merged = mergeServerRecord(edited.view, ack);
    expect(merged.corrected).toBe(true);
    expect(merged.status).toBe("expert-corrected");
    expect(merged.note).toBe("checked against the source text");
    expect(merged.tokens.map((token) => token.surface)).toEqual(SURFACES);
    expect(merged.tokens[8]?.label).toBe("B-ind");
  });
});
