// Bootstrap: scenario loading form, session panel, strategy explorer.

import { ApiClient } from "./api.js";
import { StrategyExplorer } from "./explorer.js";
import { SessionPanel, el } from "./panel.js";

export interface App {
  api: ApiClient;
  panel: SessionPanel;
  explorer: StrategyExplorer;
  loadScenario(document: unknown): Promise<string>;
}

export function initApp(root: HTMLElement, api: ApiClient = new ApiClient()): App {
  root.textContent = "";
  root.append(el("h1", {}, "adaptest session cockpit"));

  const loader = el("section", { class: "loader" });
  loader.append(el("h2", {}, "scenario"));
  const textarea = el("textarea", {
    class: "scenario-json",
    rows: "6",
    placeholder: "paste a scenario document (JSON) authored offline",
  }) as HTMLTextAreaElement;
  const loadButton = el("button", { type: "button", class: "load-btn" }, "load scenario") as HTMLButtonElement;
  const loadStatus = el("span", { class: "load-status", "data-testid": "load-status" });
  loader.append(textarea, loadButton, loadStatus);
  root.append(loader);

  const panelSection = el("section", { class: "panel-section" });
  panelSection.append(el("h2", {}, "session"));
  const panelRoot = el("div", { class: "panel", "data-testid": "panel" });
  panelSection.append(panelRoot);
  root.append(panelSection);

  const explorerSection = el("section", { class: "explorer-section" });
  explorerSection.append(el("h2", {}, "strategy explorer"));
  const explorerRoot = el("div", { class: "explorer", "data-testid": "explorer" });
  explorerSection.append(explorerRoot);
  root.append(explorerSection);

  const panel = new SessionPanel(panelRoot, api);
  const explorer = new StrategyExplorer(explorerRoot, api, (input, output) => {
    void panel.observe(input, output);
  });

  const app: App = {
    api,
    panel,
    explorer,
    async loadScenario(document: unknown): Promise<string> {
      const summary = await api.createScenario(document);
      loadStatus.textContent =
        `loaded ${summary.scenario_id}: ${summary.counts.functions} candidates ` +
        `(${summary.counts.correct} correct) over ${summary.counts.inputs} inputs`;
      await panel.open(summary.scenario_id);
      await explorer.load(summary.scenario_id);
      return summary.scenario_id;
    },
  };

  loadButton.addEventListener("click", () => {
    let parsed: unknown;
    try {
      parsed = JSON.parse(textarea.value);
    } catch {
      loadStatus.textContent = "not valid JSON";
      return;
    }
    void app.loadScenario(parsed).catch((error) => {
      loadStatus.textContent = String(error);
    });
  });

  return app;
}

// Browser entry point; tests import initApp and drive it directly.
if (typeof document !== "undefined" && document.getElementById("app")) {
  initApp(document.getElementById("app")!);
}
