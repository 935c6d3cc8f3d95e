/** Placeholder view for sessions that are not ready yet (or failed). */

import { el } from "../dom.js";
import type { SessionRecord } from "../types.js";

export function statusView(record: SessionRecord): HTMLElement {
  const container = el("div", { class: "status-view", "data-status": record.status });
  container.append(el("h1", {}, `Session ${record.id}`));
  if (record.status === "failed") {
    container.append(
      el("p", {}, "This session failed:"),
      el("p", { class: "error" }, record.error ?? "no error recorded"),
    );
  } else {
    container.append(el("p", {}, `Status: ${record.status}… judging in progress, this page refreshes itself.`));
  }
  return container;
}
