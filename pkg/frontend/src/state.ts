// Pure helpers deriving render data from API responses.

import type { AdviceView, SessionView } from "./api.js";

export const TERMINAL_STATUSES = new Set([
  "verdict_correct",
  "verdict_incorrect",
  "hypothesis_violated",
]);

export function isRunning(state: SessionView): boolean {
  return state.status === "running";
}

export function bannerFor(state: SessionView): { status: string; text: string } | null {
  if (state.status === "verdict_correct") {
    return { status: state.status, text: "CORRECT: the box matches only correct candidates" };
  }
  if (state.status === "verdict_incorrect") {
    return { status: state.status, text: "INCORRECT: the box matches only incorrect candidates" };
  }
  if (state.status === "hypothesis_violated") {
    const pair = state.violation ? ` (saw ${state.violation[1]} after ${state.violation[0]})` : "";
    return {
      status: state.status,
      text: `HYPOTHESIS VIOLATED: the box matches no candidate at all${pair}`,
    };
  }
  return null;
}

export function recommendedInput(advice: AdviceView | null): string | null {
  const top = advice?.ranked[0];
  return top ? top.input : null;
}

// Outputs the tester can report for an input: those some surviving candidate
// can actually produce, and the rest of the alphabet as model-breaking picks.
export function splitOutputs(
  state: SessionView,
  input: string,
): { producible: string[]; other: string[] } {
  const producible = state.producible[input] ?? [];
  const known = new Set(producible);
  return { producible, other: state.outputs.filter((o) => !known.has(o)) };
}

export function formatScore(score: number | null): string {
  return score === null ? "never decides" : score.toFixed(score === Math.floor(score) ? 0 : 2);
}

export function ratioLabel(state: SessionView): string {
  const { correct, incorrect } = state.consistent;
  const value = state.heuristic_value;
  const shown = value === null ? "-" : value.toFixed(3);
  return `${correct.length} correct / ${incorrect.length} incorrect (balance ${shown})`;
}
