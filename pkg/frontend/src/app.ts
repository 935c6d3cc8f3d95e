/**
 * Entry point: a tiny hash router. "#/sessions/<id>" shows that
 * session (comparison or refinement view once ready, a status page
 * while judging runs, polling every couple of seconds); anything else
 * shows the landing page with the stored transcripts.
 */

import { ApiClient } from "./api.js";
import { el } from "./dom.js";
import { POLL_MS, freshState, type ViewState } from "./state.js";
import type { SessionRecord } from "./types.js";
import { comparisonView } from "./views/comparison.js";
import { refinementView } from "./views/refinement.js";
import { statusView } from "./views/status.js";

export class App {
  private state: ViewState = freshState();
  private pollTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private root: HTMLElement,
    private api: ApiClient = new ApiClient(),
  ) {}

  start(): void {
    window.addEventListener("hashchange", () => void this.route());
    void this.route();
  }

  async route(): Promise<void> {
    if (this.pollTimer !== null) {
      clearTimeout(this.pollTimer);
      this.pollTimer = null;
    }
    const match = /^#\/sessions\/(.+)$/.exec(window.location.hash);
    if (match) {
      await this.showSession(decodeURIComponent(match[1]));
    } else {
      await this.showLanding();
    }
  }

  private mount(view: HTMLElement): void {
    this.root.replaceChildren(view);
  }

  private async showSession(sessionId: string): Promise<void> {
    if (this.state.sessionId !== sessionId) {
      this.state = freshState();
      this.state.sessionId = sessionId;
    }
    let record: SessionRecord;
    try {
      record = await this.api.getSession(sessionId);
    } catch (error) {
      this.mount(
        el(
          "div",
          { class: "status-view" },
          el("h1", {}, "Could not load session"),
          el("p", { class: "error" }, error instanceof Error ? error.message : String(error)),
        ),
      );
      return;
    }
    await this.render(record);
    if (record.status === "pending" || record.status === "running") {
      this.pollTimer = setTimeout(() => void this.showSession(sessionId), POLL_MS);
    }
  }

  private async render(record: SessionRecord): Promise<void> {
    if (record.status !== "ready") {
      this.mount(statusView(record));
      return;
    }
    if (record.kind === "comparison") {
      this.mount(comparisonView(record, this.api, this.state));
      return;
    }
    const transcript = await this.api.getTranscript(record.transcript_id);
    const refresh = async () => {
      const updated = await this.api.getSession(record.id);
      await this.render(updated);
    };
    this.mount(refinementView(record, transcript, this.api, refresh));
  }

  private async showLanding(): Promise<void> {
    const input = el("input", { type: "text", placeholder: "sess-…" });
    const open = el("button", { type: "button" }, "open session");
    open.addEventListener("click", () => {
      if (input instanceof HTMLInputElement && input.value.trim()) {
        window.location.hash = `#/sessions/${encodeURIComponent(input.value.trim())}`;
      }
    });
    const table = el(
      "table",
      {},
      el(
        "tr",
        {},
        el("th", {}, "transcript"),
        el("th", {}, "title"),
        el("th", {}, "deponent"),
        el("th", {}, "pages"),
      ),
    );
    this.mount(
      el(
        "div",
        { class: "landing" },
        el("h1", {}, "Deposition summary review"),
        el("p", {}, "Open a session by id:"),
        el("p", {}, input, " ", open),
        el("h2", {}, "Stored transcripts"),
        table,
      ),
    );
    try {
      const { transcripts } = await this.api.listTranscripts();
      for (const item of transcripts) {
        table.append(
          el(
            "tr",
            {},
            el("td", {}, item.id),
            el("td", {}, item.title ?? "-"),
            el("td", {}, item.deponent ?? "-"),
            el("td", {}, `${item.pages} (${item.total_lines} lines)`),
          ),
        );
      }
    } catch {
      table.append(el("tr", {}, el("td", {}, "service unreachable")));
    }
  }
}

const rootEl = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootEl) {
  new App(rootEl).start();
}
