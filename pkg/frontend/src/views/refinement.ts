/**
 * Three-pane refinement view: deposition text on the left, the
 * summary in the middle with flagged sentences underlined and citation
 * verdict badges inline, and the evaluation report (omissions with
 * editable importance, flagged citations, wording discrepancies) on
 * the right. Importance edits PATCH the session and re-render from the
 * server's recomputed report; nothing is re-judged.
 */

import { ApiClient } from "../api.js";
import { el, scrollTo } from "../dom.js";
import { SlideOver } from "../slideover.js";
import type {
  FlaggedSegment,
  Importance,
  SessionRecord,
  TranscriptDetail,
  Verdict,
} from "../types.js";

const IMPORTANCE_CHOICES: Importance[] = ["unlabeled", "vital", "okay", "non-relevant"];

interface Ref {
  startPage: number;
  startLine: number;
  endPage: number;
  endLine: number;
}

/** Parse "12:5" or "12:5-12:18"; returns null for anything else. */
export function parseRef(ref: string): Ref | null {
  const match = /^(\d+):(\d+)(?:-(\d+):(\d+))?$/.exec(ref.trim());
  if (!match) return null;
  const [startPage, startLine] = [Number(match[1]), Number(match[2])];
  const endPage = match[3] ? Number(match[3]) : startPage;
  const endLine = match[4] ? Number(match[4]) : startLine;
  return { startPage, startLine, endPage, endLine };
}

function verdictBadges(verdict: Verdict): HTMLElement {
  const badge = (label: string, ok: boolean) =>
    el("span", { class: `badge badge-${label} ${ok ? "ok" : "bad"}` }, `${label} ${ok ? "✓" : "✗"}`);
  return el(
    "span",
    { class: "badges" },
    badge("accurate", verdict.accurate),
    badge("covered", verdict.covered),
    badge("sufficient", verdict.sufficient),
  );
}

export function refinementView(
  record: SessionRecord,
  transcript: TranscriptDetail,
  api: ApiClient,
  refresh: () => Promise<void>,
): HTMLElement {
  const report = record.refinement;
  const bank = record.bank;
  const doc = record.summary_docs.a;
  if (!report || !bank || !doc) throw new Error("refinement view needs a ready refinement session");

  const slideOver = new SlideOver();
  const flaggedByIndex = new Map<number, FlaggedSegment>(
    report.flagged_segments.map((flagged) => [flagged.segment_index, flagged]),
  );

  const container = el("div", { class: "view refinement-view" });
  const toggle = el("button", { class: "hc-toggle", type: "button" }, "high contrast");
  toggle.addEventListener("click", () => document.body.classList.toggle("hc"));
  container.append(
    el(
      "header",
      { class: "toolbar" },
      el("h1", {}, `Summary refinement: ${record.transcript_id}`),
      el(
        "div",
        { class: "stats" },
        el("span", {}, "omissions ", el("b", {}, String(report.omissions.length))),
        el("span", {}, "flagged ", el("b", {}, String(report.flagged_segments.length))),
        el("span", {}, "discrepancies ", el("b", {}, String(report.discrepancies.length))),
      ),
      toggle,
    ),
  );
  const layout = el("div", { class: "layout refinement" });
  container.append(layout, slideOver.element);

  // --- deposition pane -----------------------------------------------------

  const depositionPane = el("section", { class: "pane deposition" }, el("h2", {}, "Deposition"));
  for (const page of transcript.pages) {
    depositionPane.append(el("div", { class: "page-head" }, `page ${page.number}`));
    for (const line of page.lines) {
      depositionPane.append(
        el(
          "div",
          { class: "line", "data-page": String(page.number), "data-line": String(line.number) },
          el("span", { class: "no" }, `${page.number}:${line.number}`),
          el("span", { class: "text" }, line.text),
        ),
      );
    }
  }

  const citeLines = (ref: Ref | null) => {
    let first: HTMLElement | null = null;
    for (const lineEl of depositionPane.querySelectorAll<HTMLElement>(".line")) {
      const page = Number(lineEl.dataset.page);
      const line = Number(lineEl.dataset.line);
      const within =
        ref !== null &&
        (page > ref.startPage || (page === ref.startPage && line >= ref.startLine)) &&
        (page < ref.endPage || (page === ref.endPage && line <= ref.endLine));
      lineEl.classList.toggle("cited", within);
      if (within && !first) first = lineEl;
    }
    if (first) scrollTo(first);
  };

  // --- summary pane ----------------------------------------------------------

  const summaryPane = el("section", { class: "pane summary" }, el("h2", {}, "Summary"));
  const summaryBody = el("div", { class: "summary-text" });
  let cursor = 0;
  for (const segment of doc.segments) {
    if (segment.start > cursor) summaryBody.append(doc.text.slice(cursor, segment.start));
    const flagged = flaggedByIndex.get(segment.index);
    const span = el(
      "span",
      {
        class: flagged ? "segment flagged" : "segment",
        "data-segment-index": String(segment.index),
      },
      doc.text.slice(segment.start, segment.end),
    );
    if (flagged) {
      span.addEventListener("click", () => {
        for (const other of summaryBody.querySelectorAll(".segment.selected")) {
          other.classList.remove("selected");
        }
        span.classList.add("selected");
        citeLines(parseRef(segment.citations[0] ?? flagged.bad_refs[0] ?? ""));
      });
    }
    summaryBody.append(span);
    if (flagged?.verdict) summaryBody.append(verdictBadges(flagged.verdict));
    cursor = segment.end;
  }
  if (cursor < doc.text.length) summaryBody.append(doc.text.slice(cursor));
  summaryPane.append(summaryBody);

  // --- evaluation pane ---------------------------------------------------------

  const evaluationPane = el("section", { class: "pane evaluation" }, el("h2", {}, "Evaluation"));
  const isEmpty =
    !report.omissions.length && !report.flagged_segments.length && !report.discrepancies.length;
  if (isEmpty) {
    evaluationPane.append(el("p", { class: "empty-state" }, "No issues found."));
  }

  if (report.omissions.length) {
    evaluationPane.append(el("h2", {}, "Omitted facts"));
    const list = el("ul", { class: "omissions" });
    for (const omission of report.omissions) {
      const nugget = bank.nuggets.find((candidate) => candidate.id === omission.nugget_id);
      if (!nugget) continue;
      const select = el("select", { "data-nugget-id": nugget.id });
      for (const choice of IMPORTANCE_CHOICES) {
        const option = el("option", { value: choice }, choice);
        if (choice === nugget.importance) option.setAttribute("selected", "");
        select.append(option);
      }
      select.addEventListener("change", () => {
        api
          .patchImportance(record.id, nugget.id, select.value as Importance)
          .then(() => refresh())
          .catch((error) => {
            select.value = nugget.importance;
            console.error("importance update failed:", error);
          });
      });
      list.append(
        el(
          "li",
          { "data-nugget-id": nugget.id },
          el("div", {}, nugget.text, select),
          el(
            "div",
            { class: "cites" },
            omission.score === 1 ? "partially covered" : "absent",
            omission.explanation ? ` (${omission.explanation})` : "",
            " · cited at ",
            ...nugget.citations.map((ref) => {
              const button = el("button", { class: "cite", type: "button" }, ref);
              button.addEventListener("click", () => {
                api
                  .getSpan(record.transcript_id, ref)
                  .then((span) => slideOver.open(span.ref, span.text))
                  .catch((error) => slideOver.open(ref, `could not load span: ${error.message}`));
              });
              return button;
            }),
          ),
        ),
      );
    }
    evaluationPane.append(list);
  }

  if (report.flagged_segments.length) {
    evaluationPane.append(el("h2", {}, "Flagged citations"));
    const list = el("ul", { class: "issues" });
    for (const flagged of report.flagged_segments) {
      list.append(
        el(
          "li",
          { "data-segment-index": String(flagged.segment_index) },
          el("div", {}, `segment ${flagged.segment_index}`, flagged.verdict ? verdictBadges(flagged.verdict) : ""),
          el("div", { class: "suggestion" }, flagged.suggestion),
        ),
      );
    }
    evaluationPane.append(list);
  }

  if (report.discrepancies.length) {
    evaluationPane.append(el("h2", {}, "Wording discrepancies"));
    const list = el("ul", { class: "issues discrepancies" });
    for (const item of report.discrepancies) {
      list.append(
        el(
          "li",
          { "data-segment-index": String(item.segment_index) },
          `segment ${item.segment_index} vs ${item.nugget_id}: ${item.note}`,
        ),
      );
    }
    evaluationPane.append(list);
  }

  layout.append(depositionPane, summaryPane, evaluationPane);
  return container;
}
