/**
 * JSON shapes returned by the review service. These mirror the API
 * responses field for field; nothing here is derived client-side.
 */

export type Importance = "unlabeled" | "vital" | "okay" | "non-relevant";

export interface Nugget {
  id: string;
  text: string;
  citations: string[];
  importance: Importance;
}

export interface Bank {
  transcript_id: string;
  nuggets: Nugget[];
}

export interface Alignment {
  score: 0 | 1 | 2;
  matched_segment: [number, number] | null;
  explanation: string;
}

export interface AlignmentMap {
  transcript_id: string;
  summary_id: string;
  alignments: Record<string, Alignment>;
}

export interface ComparisonStats {
  counts: { matched: number; unique_a: number; unique_b: number; missing: number };
  coverage_a: number;
  coverage_b: number;
}

export interface ComparisonReport {
  transcript_id: string;
  matched: string[];
  unique_a: string[];
  unique_b: string[];
  missing: string[];
  alignments_a: Record<string, Alignment>;
  alignments_b: Record<string, Alignment>;
  stats: ComparisonStats;
}

export interface Verdict {
  accurate: boolean;
  covered: boolean;
  sufficient: boolean;
  rationale: string;
}

export interface VerdictMap {
  transcript_id: string;
  summary_id: string;
  segments: Record<string, Verdict[]>;
}

export interface SummarySegment {
  index: number;
  start: number;
  end: number;
  text: string;
  claim_text: string;
  citations: string[];
  bad_refs: string[];
}

export interface SummaryDoc {
  id: string;
  text: string;
  segments: SummarySegment[];
}

export interface Omission {
  nugget_id: string;
  score: 0 | 1;
  explanation: string;
}

export interface FlaggedSegment {
  segment_index: number;
  start: number;
  end: number;
  verdict: Verdict | null;
  bad_refs: string[];
  suggestion_kind: string;
  suggestion: string;
}

export interface Discrepancy {
  segment_index: number;
  start: number;
  end: number;
  nugget_id: string;
  note: string;
}

export interface RefinementReport {
  transcript_id: string;
  summary_id: string;
  omissions: Omission[];
  flagged_segments: FlaggedSegment[];
  discrepancies: Discrepancy[];
}

export type SessionStatus = "pending" | "running" | "ready" | "failed";
export type SessionKind = "comparison" | "refinement";
export type SummaryRole = "a" | "b";

export interface SessionSummary {
  role: SummaryRole;
  id: string;
  text: string;
}

export interface SessionRecord {
  id: string;
  kind: SessionKind;
  status: SessionStatus;
  error: string | null;
  transcript_id: string;
  summaries: SessionSummary[];
  bank: Bank | null;
  summary_docs: Partial<Record<SummaryRole, SummaryDoc>>;
  alignments: Partial<Record<SummaryRole, AlignmentMap>>;
  verdicts: VerdictMap | null;
  comparison: ComparisonReport | null;
  refinement: RefinementReport | null;
  created_at: string;
  updated_at: string;
}

export interface TranscriptLine {
  number: number;
  turn: "question" | "answer" | "other";
  text: string;
}

export interface TranscriptPage {
  number: number;
  lines: TranscriptLine[];
}

export interface TranscriptDetail {
  id: string;
  title: string | null;
  deponent: string | null;
  total_lines: number;
  pages: TranscriptPage[];
}

export interface TranscriptListItem {
  id: string;
  title: string | null;
  deponent: string | null;
  pages: number;
  total_lines: number;
}

export interface SpanText {
  ref: string;
  text: string;
}
