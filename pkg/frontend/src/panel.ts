// The live session panel: surviving candidates in two columns, the advised
// next test highlighted, output buttons to report what the box actually did.

import { ApiClient, ApiError, type AdviceView, type SessionView } from "./api.js";
import { bannerFor, formatScore, isRunning, ratioLabel, splitOutputs } from "./state.js";

export class SessionPanel {
  private state: SessionView | null = null;
  private advice: AdviceView | null = null;
  private feasibility: string = "";
  private selectedInput: string | null = null;
  private notice: string = "";

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private onStateChange: (state: SessionView) => void = () => {},
  ) {}

  get session(): SessionView | null {
    return this.state;
  }

  async open(scenarioId: string): Promise<void> {
    this.state = await this.api.createSession(scenarioId);
    this.selectedInput = null;
    this.notice = "";
    await this.refreshDerived();
    this.render();
    this.onStateChange(this.state);
  }

  /** Record what the box did for an input; used by buttons and walk mode. */
  async observe(input: string, output: string): Promise<void> {
    if (!this.state) return;
    try {
      this.state = await this.api.observe(this.state.session_id, input, output);
      this.notice = "";
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        this.notice = "session finished: no more observations can be recorded";
      } else if (error instanceof ApiError) {
        this.notice = error.detail;
      } else {
        throw error;
      }
    }
    this.selectedInput = null;
    await this.refreshDerived();
    this.render();
    if (this.state) this.onStateChange(this.state);
  }

  private async refreshDerived(): Promise<void> {
    this.advice = null;
    this.feasibility = "";
    if (!this.state || !isRunning(this.state)) return;
    if (this.state.unused_inputs.length > 0) {
      this.advice = await this.api.advice(this.state.session_id);
    }
    const feasibility = await this.api.feasibility(this.state.session_id);
    this.feasibility =
      "infeasible" in feasibility
        ? "no sequence of remaining tests can force a verdict"
        : `worst case ${feasibility.min_tests} more test(s) to a verdict`;
  }

  selectInput(input: string): void {
    this.selectedInput = input;
    this.render();
  }

  render(): void {
    const root = this.root;
    root.textContent = "";
    if (!this.state) {
      root.append(el("p", { class: "hint" }, "load a scenario to start a session"));
      return;
    }
    const state = this.state;

    if (this.notice) {
      root.append(el("div", { class: "notice", "data-testid": "notice" }, this.notice));
    }

    const banner = bannerFor(state);
    if (banner) {
      root.append(
        el(
          "div",
          { class: `banner ${banner.status}`, "data-testid": "banner", "data-status": state.status },
          banner.text,
        ),
      );
    }

    root.append(el("div", { class: "ratio", "data-testid": "ratio" }, ratioLabel(state)));

    const columns = el("div", { class: "columns" });
    columns.append(
      candidateColumn("correct", state.consistent.correct),
      candidateColumn("incorrect", state.consistent.incorrect),
    );
    root.append(columns);

    if (this.feasibility) {
      root.append(el("div", { class: "feasibility", "data-testid": "feasibility" }, this.feasibility));
    }

    if (isRunning(state)) {
      root.append(this.renderControls(state));
    }

    const history = el("ol", { class: "history", "data-testid": "history" });
    for (const [input, output] of state.history) {
      history.append(el("li", {}, `${input} -> ${output}`));
    }
    root.append(el("h3", {}, "history"), history);
  }

  private renderControls(state: SessionView): HTMLElement {
    const wrap = el("div", { class: "controls" });
    const advice = this.advice;
    const recommended = advice?.ranked[0]?.input ?? null;

    wrap.append(el("h3", {}, "apply a test"));
    const inputRow = el("div", { class: "input-buttons" });
    for (const input of state.inputs) {
      const entry = advice?.ranked.find((r) => r.input === input);
      const attrs: Record<string, string> = { "data-input": input, type: "button" };
      const classes = ["input-btn"];
      if (input === recommended) classes.push("recommended");
      if (input === this.selectedInput) classes.push("selected");
      if (!state.unused_inputs.includes(input)) classes.push("repeat");
      attrs.class = classes.join(" ");
      const label = entry ? `${input} (${formatScore(entry.score)})` : input;
      const button = el("button", attrs, label) as HTMLButtonElement;
      button.addEventListener("click", () => this.selectInput(input));
      inputRow.append(button);
    }
    wrap.append(inputRow);
    if (recommended) {
      wrap.append(
        el(
          "div",
          { class: "advice-note", "data-testid": "advice-note" },
          `advised next test: ${recommended}${advice?.fallback ? " (heuristic fallback)" : ""}`,
        ),
      );
    }

    if (this.selectedInput) {
      const { producible, other } = splitOutputs(state, this.selectedInput);
      wrap.append(el("h3", {}, `what did the box do after ${this.selectedInput}?`));
      const outputRow = el("div", { class: "output-buttons" });
      for (const output of producible) {
        const button = el(
          "button",
          { "data-output": output, class: "output-btn", type: "button" },
          output,
        ) as HTMLButtonElement;
        button.addEventListener("click", () => void this.observe(this.selectedInput!, output));
        outputRow.append(button);
      }
      for (const output of other) {
        const button = el(
          "button",
          { "data-output": output, class: "output-btn other", type: "button" },
          `${output} (hypothesis violation)`,
        ) as HTMLButtonElement;
        button.addEventListener("click", () => void this.observe(this.selectedInput!, output));
        outputRow.append(button);
      }
      wrap.append(outputRow);
    }
    return wrap;
  }
}

function candidateColumn(kind: "correct" | "incorrect", names: string[]): HTMLElement {
  const column = el("div", { class: `column ${kind}`, "data-testid": `column-${kind}` });
  column.append(el("h3", {}, `${kind} (${names.length})`));
  const list = el("ul", {});
  for (const name of names) {
    list.append(el("li", { "data-name": name }, name));
  }
  column.append(list);
  return column;
}

export function el(
  tag: string,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}
