// Collapsible view of the optimal plan; in walk mode, clicking an output
// edge replays that step through the live session panel.

import { ApiClient, ApiError, type TreeNode } from "./api.js";
import { el } from "./panel.js";

export class StrategyExplorer {
  private walkMode = false;
  private tree: TreeNode | null = null;
  private depth: number | null = null;
  private error: string = "";

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private onWalk: (input: string, output: string) => void = () => {},
  ) {}

  async load(scenarioId: string, k?: number): Promise<void> {
    this.tree = null;
    this.error = "";
    try {
      const strategy = await this.api.strategy(scenarioId, k);
      this.tree = strategy.tree;
      this.depth = strategy.k;
    } catch (error) {
      if (error instanceof ApiError && error.code === "infeasible") {
        this.error = "infeasible: no adaptive strategy can force a verdict on this scenario";
      } else if (error instanceof ApiError) {
        this.error = error.detail;
      } else {
        throw error;
      }
    }
    this.render();
  }

  setWalkMode(on: boolean): void {
    this.walkMode = on;
    this.render();
  }

  render(): void {
    this.root.textContent = "";
    if (this.error) {
      this.root.append(el("div", { class: "explorer-error", "data-testid": "explorer-error" }, this.error));
      return;
    }
    if (!this.tree) {
      this.root.append(el("p", { class: "hint" }, "no strategy loaded"));
      return;
    }
    this.root.append(
      el("div", { class: "explorer-head" }, `optimal plan, worst case ${this.depth} test(s)`),
    );
    const toggle = el("label", { class: "walk-toggle" });
    const checkbox = el("input", { type: "checkbox", "data-testid": "walk-toggle" }) as HTMLInputElement;
    checkbox.checked = this.walkMode;
    checkbox.addEventListener("change", () => this.setWalkMode(checkbox.checked));
    toggle.append(checkbox, document.createTextNode(" walk mode (clicking an output replays it)"));
    this.root.append(toggle);
    this.root.append(this.renderNode(this.tree));
  }

  private renderNode(node: TreeNode): HTMLElement {
    if (node.type === "leaf") {
      const label = `${node.verdict.toUpperCase()} {${node.consistent.join(", ")}}`;
      return el("div", { class: `leaf ${node.verdict}`, "data-verdict": node.verdict }, label);
    }
    const details = el("details", { class: "branch", "data-input": node.input, open: "" });
    details.append(el("summary", {}, `apply ${node.input}`));
    const edges = el("ul", { class: "edges" });
    for (const [output, child] of Object.entries(node.children)) {
      const edge = el("li", { class: "edge", "data-edge": output });
      const label = el(
        "button",
        { class: "edge-label", type: "button", "data-walk-output": output },
        `if ${output}`,
      ) as HTMLButtonElement;
      label.addEventListener("click", () => {
        if (this.walkMode) {
          this.onWalk(node.input, output);
        }
      });
      edge.append(label, this.renderNode(child));
      edges.append(edge);
    }
    details.append(edges);
    return details;
  }
}
