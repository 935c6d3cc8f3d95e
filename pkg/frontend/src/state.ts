/** Shared view state and the color legend for nugget groups. */

export type NuggetGroup = "matched" | "unique_a" | "unique_b" | "missing";

/** Base palette; the high-contrast alternative lives in CSS under body.hc. */
export const LEGEND: Record<NuggetGroup, string> = {
  matched: "green",
  unique_a: "blue",
  unique_b: "yellow",
  missing: "none",
};

/** Poll cadence for sessions that are still pending or running. */
export const POLL_MS = 2000;

export interface ViewState {
  sessionId: string | null;
  selectedNugget: string | null;
  hoverNugget: string | null;
}

export function freshState(): ViewState {
  return { sessionId: null, selectedNugget: null, hoverNugget: null };
}

/** Group a nugget id by which partition set of the report contains it. */
export function groupOf(
  nuggetId: string,
  report: { matched: string[]; unique_a: string[]; unique_b: string[]; missing: string[] },
): NuggetGroup | null {
  if (report.matched.includes(nuggetId)) return "matched";
  if (report.unique_a.includes(nuggetId)) return "unique_a";
  if (report.unique_b.includes(nuggetId)) return "unique_b";
  if (report.missing.includes(nuggetId)) return "missing";
  return null;
}
