/** Slide-over panel showing the deposition text behind a citation. */

import { el } from "./dom.js";

export class SlideOver {
  readonly element: HTMLElement;
  private refEl: HTMLElement;
  private textEl: HTMLElement;

  constructor() {
    this.refEl = el("div", { class: "ref" });
    this.textEl = el("div", { class: "text" });
    const close = el("button", { class: "close", type: "button" }, "close");
    close.addEventListener("click", () => this.close());
    this.element = el("aside", { class: "slide-over" }, close, this.refEl, this.textEl);
  }

  open(ref: string, text: string): void {
    this.refEl.textContent = ref;
    this.textEl.textContent = text;
    this.element.classList.add("open");
  }

  close(): void {
    this.element.classList.remove("open");
  }
}
