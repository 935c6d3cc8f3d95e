/**
 * Canned service responses for component tests: the 3-nugget
 * comparison fixture and a small refinement session with one flagged
 * citation, shaped exactly like the session records the API returns.
 */

import type { FetchLike } from "../src/api.js";
import type {
  Bank,
  Importance,
  RefinementReport,
  SessionRecord,
  TranscriptDetail,
} from "../src/types.js";

export const SUMMARY_A = "The witness stated her name. The policy lapsed in March.";
export const SUMMARY_B = "The policy lapsed around March, the record shows.";

const SENTENCE_A2_START = SUMMARY_A.indexOf("The policy");

function threeNuggetBank(): Bank {
  return {
    transcript_id: "t-fixture",
    nuggets: [
      { id: "n1", text: "The witness stated her full name.", citations: ["1:2"], importance: "unlabeled" },
      { id: "n2", text: "The policy lapsed in March.", citations: ["2:5-2:6"], importance: "unlabeled" },
      { id: "n3", text: "The claim was denied twice.", citations: ["3:1"], importance: "unlabeled" },
    ],
  };
}

/**
 * Comparison session for the worked 3-nugget example: A has n1 fully
 * and n2 partially, B has only n2 partially; n3 is missing from both.
 * Partition: matched={n2}, unique_a={n1}, unique_b={}, missing={n3}.
 */
export function threeNuggetSession(): SessionRecord {
  return {
    id: "sess-3nugget",
    kind: "comparison",
    status: "ready",
    error: null,
    transcript_id: "t-fixture",
    summaries: [
      { role: "a", id: "sa", text: SUMMARY_A },
      { role: "b", id: "sb", text: SUMMARY_B },
    ],
    bank: threeNuggetBank(),
    summary_docs: {},
    alignments: {
      a: {
        transcript_id: "t-fixture",
        summary_id: "sa",
        alignments: {
          n1: { score: 2, matched_segment: [0, SENTENCE_A2_START - 1], explanation: "" },
          n2: { score: 1, matched_segment: [SENTENCE_A2_START, SUMMARY_A.length], explanation: "missing: march" },
          n3: { score: 0, matched_segment: null, explanation: "missing: claim, denied" },
        },
      },
      b: {
        transcript_id: "t-fixture",
        summary_id: "sb",
        alignments: {
          n1: { score: 0, matched_segment: null, explanation: "missing: witness, name" },
          n2: { score: 1, matched_segment: [0, 31], explanation: "missing: in" },
          n3: { score: 0, matched_segment: null, explanation: "missing: claim, denied" },
        },
      },
    },
    verdicts: null,
    comparison: {
      transcript_id: "t-fixture",
      matched: ["n2"],
      unique_a: ["n1"],
      unique_b: [],
      missing: ["n3"],
      alignments_a: {
        n1: { score: 2, matched_segment: [0, SENTENCE_A2_START - 1], explanation: "" },
        n2: { score: 1, matched_segment: [SENTENCE_A2_START, SUMMARY_A.length], explanation: "missing: march" },
        n3: { score: 0, matched_segment: null, explanation: "missing: claim, denied" },
      },
      alignments_b: {
        n1: { score: 0, matched_segment: null, explanation: "missing: witness, name" },
        n2: { score: 1, matched_segment: [0, 31], explanation: "missing: in" },
        n3: { score: 0, matched_segment: null, explanation: "missing: claim, denied" },
      },
      stats: {
        counts: { matched: 1, unique_a: 1, unique_b: 0, missing: 1 },
        coverage_a: 0.5,
        coverage_b: 1 / 6,
      },
    },
    refinement: null,
    created_at: "2026-08-01T10:00:00Z",
    updated_at: "2026-08-01T10:00:05Z",
  };
}

/** Variant where B also fully contains n3, so unique_b is non-empty. */
export function fourGroupSession(): SessionRecord {
  const record = threeNuggetSession();
  const comparison = record.comparison!;
  const segment: [number, number] = [32, SUMMARY_B.length];
  comparison.alignments_b.n3 = { score: 2, matched_segment: segment, explanation: "" };
  record.alignments.b!.alignments.n3 = comparison.alignments_b.n3;
  comparison.unique_b = ["n3"];
  comparison.missing = [];
  comparison.stats.counts.unique_b = 1;
  comparison.stats.counts.missing = 0;
  comparison.stats.coverage_b = 0.5;
  return record;
}

// --- refinement fixture ---------------------------------------------------

const SENT_1 = "The deponent works in claims.";
const SENT_2 = "The policy was valued at $10 million. (2:14)";
const SENT_3 = "The claim was denied.";
export const REFINE_TEXT = `${SENT_1} ${SENT_2} ${SENT_3}`;

const SEG2_START = REFINE_TEXT.indexOf(SENT_2);
const SEG3_START = REFINE_TEXT.indexOf(SENT_3);

function refinementBank(): Bank {
  return {
    transcript_id: "t-fixture",
    nuggets: [
      { id: "n1", text: "The policy was a life insurance policy valued at ten million dollars.", citations: ["2:14"], importance: "unlabeled" },
      { id: "n2", text: "The beneficiary was paid by wire transfer.", citations: ["3:2"], importance: "unlabeled" },
      { id: "n3", text: "The adjuster inspected the property.", citations: ["1:2"], importance: "unlabeled" },
    ],
  };
}

function refinementReport(): RefinementReport {
  return {
    transcript_id: "t-fixture",
    summary_id: "sr",
    omissions: [
      { nugget_id: "n3", score: 1, explanation: "missing: property" },
      { nugget_id: "n2", score: 0, explanation: "" },
    ],
    flagged_segments: [
      {
        segment_index: 2,
        start: SEG2_START,
        end: SEG2_START + SENT_2.length,
        verdict: {
          accurate: true,
          covered: true,
          sufficient: false,
          rationale: "content tokens missing from span: life, insurance",
        },
        bad_refs: [],
        suggestion_kind: "add_citation",
        suggestion: "Cite an additional span covering: life, insurance.",
      },
    ],
    discrepancies: [
      {
        segment_index: 2,
        start: SEG2_START,
        end: SEG2_START + SENT_2.length,
        nugget_id: "n1",
        note: "missing: life, insurance",
      },
    ],
  };
}

export function refinementSession(): SessionRecord {
  return {
    id: "sess-refine",
    kind: "refinement",
    status: "ready",
    error: null,
    transcript_id: "t-fixture",
    summaries: [{ role: "a", id: "sr", text: REFINE_TEXT }],
    bank: refinementBank(),
    summary_docs: {
      a: {
        id: "sr",
        text: REFINE_TEXT,
        segments: [
          {
            index: 1,
            start: 0,
            end: SENT_1.length,
            text: SENT_1,
            claim_text: SENT_1,
            citations: [],
            bad_refs: [],
          },
          {
            index: 2,
            start: SEG2_START,
            end: SEG2_START + SENT_2.length,
            text: SENT_2,
            claim_text: "The policy was valued at $10 million.",
            citations: ["2:14"],
            bad_refs: [],
          },
          {
            index: 3,
            start: SEG3_START,
            end: SEG3_START + SENT_3.length,
            text: SENT_3,
            claim_text: SENT_3,
            citations: [],
            bad_refs: [],
          },
        ],
      },
    },
    alignments: {
      a: {
        transcript_id: "t-fixture",
        summary_id: "sr",
        alignments: {
          n1: { score: 2, matched_segment: [SEG2_START, SEG2_START + SENT_2.length], explanation: "" },
          n2: { score: 0, matched_segment: null, explanation: "" },
          n3: { score: 1, matched_segment: [0, SENT_1.length], explanation: "missing: property" },
        },
      },
    },
    verdicts: {
      transcript_id: "t-fixture",
      summary_id: "sr",
      segments: {
        "2": [
          {
            accurate: true,
            covered: true,
            sufficient: false,
            rationale: "content tokens missing from span: life, insurance",
          },
        ],
      },
    },
    comparison: null,
    refinement: refinementReport(),
    created_at: "2026-08-01T11:00:00Z",
    updated_at: "2026-08-01T11:00:04Z",
  };
}

/** The same session after the server recomputed reports for a PATCH. */
export function patchedSession(nuggetId: string, importance: Importance): SessionRecord {
  const record = refinementSession();
  const nugget = record.bank!.nuggets.find((candidate) => candidate.id === nuggetId)!;
  nugget.importance = importance;
  const report = record.refinement!;
  if (importance === "non-relevant") {
    report.omissions = report.omissions.filter((omission) => omission.nugget_id !== nuggetId);
  } else if (importance === "vital") {
    report.omissions.sort((x, y) => {
      const rank = (id: string) => (id === nuggetId ? 0 : 1);
      return rank(x.nugget_id) - rank(y.nugget_id);
    });
  }
  return record;
}

export function emptyReportSession(): SessionRecord {
  const record = refinementSession();
  record.refinement = {
    transcript_id: "t-fixture",
    summary_id: "sr",
    omissions: [],
    flagged_segments: [],
    discrepancies: [],
  };
  record.verdicts!.segments = {
    "2": [{ accurate: true, covered: true, sufficient: true, rationale: "fine" }],
  };
  return record;
}

export function fixtureTranscript(): TranscriptDetail {
  const page2Lines = [];
  for (let line = 1; line <= 14; line++) {
    page2Lines.push({
      number: line,
      turn: line % 2 === 1 ? ("question" as const) : ("answer" as const),
      text:
        line === 14
          ? "A. The policy was a term life insurance policy valued at ten million dollars."
          : `Q. Filler line number ${line}.`,
    });
  }
  return {
    id: "t-fixture",
    title: "Whitfield v. Meridian",
    deponent: "Robert Hale",
    total_lines: 17,
    pages: [
      {
        number: 1,
        lines: [
          { number: 1, turn: "question", text: "Q. State your name." },
          { number: 2, turn: "answer", text: "A. Jane Doe." },
          { number: 3, turn: "answer", text: "A. The adjuster inspected the property myself." },
        ],
      },
      { number: 2, lines: page2Lines },
    ],
  };
}

// --- recording fetch stub -------------------------------------------------

export interface RecordedCall {
  method: string;
  url: string;
  body: unknown;
}

export type RouteHandler = (call: RecordedCall) => unknown;

/**
 * FetchLike that records every call and answers from a handler. The
 * handler returns a JSON-serializable body, or [status, body] for
 * error responses.
 */
export function recordingFetch(handler: RouteHandler): { fetch: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];
  const fetch: FetchLike = async (url, init) => {
    const call: RecordedCall = {
      method: init?.method ?? "GET",
      url,
      body: init?.body ? JSON.parse(init.body as string) : null,
    };
    calls.push(call);
    const result = handler(call);
    let status = 200;
    let payload = result;
    if (Array.isArray(result) && result.length === 2 && typeof result[0] === "number") {
      [status, payload] = result as [number, unknown];
    }
    const response = {
      ok: status >= 200 && status < 300,
      status,
      statusText: `status ${status}`,
      json: async () => payload,
    };
    return response as unknown as Response;
  };
  return { fetch, calls };
}
