/**
 * Highlight computation for summary text. Alignment segments from the
 * report are turned into non-overlapping text runs so the summary can
 * be rendered as a flat sequence of text nodes and <mark> elements
 * without ever duplicating or dropping characters.
 */

import type { Alignment, ComparisonReport } from "./types.js";
import type { NuggetGroup } from "./state.js";

export interface HighlightSpan {
  nuggetId: string;
  start: number;
  end: number;
  /** true when the nugget is only partially present (score 1) */
  partial: boolean;
  group: Exclude<NuggetGroup, "missing">;
}

/** Matched-segment spans for one summary, in text order. */
export function summaryHighlights(report: ComparisonReport, role: "a" | "b"): HighlightSpan[] {
  const alignments: Record<string, Alignment> =
    role === "a" ? report.alignments_a : report.alignments_b;
  const present: Array<[string[], Exclude<NuggetGroup, "missing">]> = [
    [report.matched, "matched"],
    role === "a" ? [report.unique_a, "unique_a"] : [report.unique_b, "unique_b"],
  ];
  const spans: HighlightSpan[] = [];
  for (const [ids, group] of present) {
    for (const nuggetId of ids) {
      const alignment = alignments[nuggetId];
      if (!alignment || alignment.score === 0 || !alignment.matched_segment) continue;
      const [start, end] = alignment.matched_segment;
      spans.push({ nuggetId, start, end, partial: alignment.score === 1, group });
    }
  }
  spans.sort((x, y) => x.start - y.start || x.end - y.end);
  return spans;
}

export interface TextRun {
  start: number;
  end: number;
  /** spans covering this run, in span order; empty for plain text */
  spans: HighlightSpan[];
}

/**
 * Split [0, textLength) at every span boundary. Overlapping spans end
 * up sharing runs rather than nesting, so each run lists every nugget
 * that covers it.
 */
export function decompose(textLength: number, spans: HighlightSpan[]): TextRun[] {
  const cuts = new Set<number>([0, textLength]);
  for (const span of spans) {
    cuts.add(Math.max(0, Math.min(span.start, textLength)));
    cuts.add(Math.max(0, Math.min(span.end, textLength)));
  }
  const ordered = [...cuts].sort((a, b) => a - b);
  const runs: TextRun[] = [];
  for (let i = 0; i + 1 < ordered.length; i++) {
    const [lo, hi] = [ordered[i], ordered[i + 1]];
    if (lo >= hi) continue;
    const covering = spans.filter((span) => span.start < hi && span.end > lo);
    const previous = runs[runs.length - 1];
    if (previous && sameSpans(previous.spans, covering)) {
      previous.end = hi;
    } else {
      runs.push({ start: lo, end: hi, spans: covering });
    }
  }
  return runs;
}

function sameSpans(a: HighlightSpan[], b: HighlightSpan[]): boolean {
  return a.length === b.length && a.every((span, i) => span === b[i]);
}
