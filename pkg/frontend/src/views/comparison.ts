/**
 * Side-by-side comparison view: nugget bank on the left, the two
 * summaries beside it with their matched segments highlighted per the
 * legend (matched green, unique-to-A blue, unique-to-B yellow, partial
 * presence hatched). Hovering or clicking any highlight scrolls the
 * bank to that nugget and lights up the counterpart segment in the
 * other summary; citations open the deposition span in a slide-over.
 */

import { ApiClient } from "../api.js";
import { el, scrollTo } from "../dom.js";
import { decompose, summaryHighlights } from "../highlight.js";
import { SlideOver } from "../slideover.js";
import { groupOf, type ViewState } from "../state.js";
import type { ComparisonReport, Nugget, SessionRecord, SummaryRole } from "../types.js";

function pct(fraction: number): string {
  return (fraction * 100).toFixed(1) + "%";
}

function statsHeader(record: SessionRecord, report: ComparisonReport): HTMLElement {
  const { counts, coverage_a, coverage_b } = report.stats;
  const stat = (label: string, value: string) => el("span", {}, `${label} `, el("b", {}, value));
  const toggle = el("button", { class: "hc-toggle", type: "button" }, "high contrast");
  toggle.addEventListener("click", () => document.body.classList.toggle("hc"));
  return el(
    "header",
    { class: "toolbar" },
    el("h1", {}, `Summary comparison: ${record.transcript_id}`),
    el(
      "div",
      { class: "stats" },
      stat("matched", String(counts.matched)),
      stat("unique A", String(counts.unique_a)),
      stat("unique B", String(counts.unique_b)),
      stat("missing", String(counts.missing)),
      stat("coverage A", pct(coverage_a)),
      stat("coverage B", pct(coverage_b)),
    ),
    toggle,
  );
}

export function comparisonView(record: SessionRecord, api: ApiClient, state: ViewState): HTMLElement {
  const report = record.comparison;
  const bank = record.bank;
  if (!report || !bank) throw new Error("comparison view needs a ready comparison session");

  const slideOver = new SlideOver();
  const container = el("div", { class: "view comparison-view" });
  container.append(statsHeader(record, report));

  const layout = el("div", { class: "layout comparison" });
  container.append(layout, slideOver.element);

  // --- interactions -----------------------------------------------------

  const applyActive = () => {
    const active = state.hoverNugget ?? state.selectedNugget;
    for (const mark of container.querySelectorAll<HTMLElement>("mark[data-nugget-ids]")) {
      const ids = (mark.dataset.nuggetIds ?? "").split(" ");
      mark.classList.toggle("active", active !== null && ids.includes(active));
    }
    let activeEntry: HTMLElement | null = null;
    for (const item of container.querySelectorAll<HTMLElement>("li[data-nugget-id]")) {
      const isActive = active !== null && item.dataset.nuggetId === active;
      item.classList.toggle("active", isActive);
      if (isActive) activeEntry = item;
    }
    if (activeEntry) scrollTo(activeEntry);
  };

  const setHover = (nuggetId: string | null) => {
    state.hoverNugget = nuggetId;
    applyActive();
  };
  const setSelected = (nuggetId: string | null) => {
    state.selectedNugget = nuggetId;
    applyActive();
  };

  const citationButton = (ref: string) => {
    const button = el("button", { class: "cite", type: "button" }, ref);
    button.addEventListener("click", () => {
      api
        .getSpan(record.transcript_id, ref)
        .then((span) => slideOver.open(span.ref, span.text))
        .catch((error) => slideOver.open(ref, `could not load span: ${error.message}`));
    });
    return button;
  };

  // --- bank panel ---------------------------------------------------------

  const bankEntry = (nugget: Nugget) => {
    const group = groupOf(nugget.id, report) ?? "missing";
    const scoreA = report.alignments_a[nugget.id]?.score ?? 0;
    const scoreB = report.alignments_b[nugget.id]?.score ?? 0;
    const item = el(
      "li",
      { class: group, "data-nugget-id": nugget.id },
      el("div", {}, nugget.text, " ", el("span", { class: "importance" }, `A:${scoreA} B:${scoreB}`)),
      el("div", { class: "cites" }, ...nugget.citations.map(citationButton)),
    );
    item.addEventListener("click", () => setSelected(nugget.id));
    return item;
  };

  const inBank = new Set([...report.matched, ...report.unique_a, ...report.unique_b]);
  const covered = bank.nuggets.filter((nugget) => inBank.has(nugget.id));
  const missing = bank.nuggets.filter((nugget) => report.missing.includes(nugget.id));

  const bankPane = el(
    "section",
    { class: "pane bank-pane" },
    el("h2", {}, "Nugget bank"),
    el("ul", { class: "bank" }, ...covered.map(bankEntry)),
    el("h2", {}, "Potential additions"),
    missing.length
      ? el("ul", { class: "bank additions" }, ...missing.map(bankEntry))
      : el("p", { class: "empty-state" }, "nothing missing from both summaries"),
  );
  layout.append(bankPane);

  // --- summary panes --------------------------------------------------------

  const summaryPane = (role: SummaryRole) => {
    const summary = record.summaries.find((s) => s.role === role);
    if (!summary) throw new Error(`session has no summary ${role}`);
    const coverage = role === "a" ? report.stats.coverage_a : report.stats.coverage_b;
    const body = el("div", { class: "summary-text" });
    const spans = summaryHighlights(report, role);
    for (const run of decompose(summary.text.length, spans)) {
      const text = summary.text.slice(run.start, run.end);
      if (!run.spans.length) {
        body.append(text);
        continue;
      }
      const primary = run.spans[0];
      const classes = [primary.group, primary.partial ? "partial" : ""].filter(Boolean);
      const mark = el("mark", {
        class: classes.join(" "),
        "data-nugget-ids": run.spans.map((span) => span.nuggetId).join(" "),
      });
      mark.textContent = text;
      mark.addEventListener("mouseenter", () => setHover(run.spans[0].nuggetId));
      mark.addEventListener("mouseleave", () => setHover(null));
      mark.addEventListener("click", () => setSelected(run.spans[0].nuggetId));
      body.append(mark);
    }
    return el(
      "section",
      { class: "pane summary-pane", "data-role": role },
      el("h2", {}, `Summary ${role.toUpperCase()}, coverage ${pct(coverage)}`),
      body,
    );
  };

  layout.append(summaryPane("a"), summaryPane("b"));
  applyActive();
  return container;
}
