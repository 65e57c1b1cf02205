// Page bootstrap: template picker + slot editor on the left, rule
// preview and policy dashboard on the right.

import { ApiClient } from "./api.js";
import { SessionController } from "./state.js";
import {
  renderEditor, renderPolicyGraph, renderQueryTable, renderRulePreview,
} from "./render.js";

const TEMPLATES = [
  "if-then", "after-then", "statement",
  "compliance-state", "intermediate-state", "policy-branch", "world-fact",
];

function query(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

export function boot(serviceUrl: string): void {
  const api = new ApiClient(serviceUrl);
  const controller = new SessionController(api);

  const picker = query("template-picker");
  for (const template of TEMPLATES) {
    const button = document.createElement("button");
    button.className = "template";
    button.textContent = template;
    button.addEventListener("click", () => void controller.start(template));
    picker.append(button);
  }

  const editor = query("editor");
  const preview = query("rule-preview");
  controller.onChange(() => {
    renderEditor(editor, controller);
    const submission = controller.view.submission;
    if (submission?.rules) renderRulePreview(preview, submission.rules);
  });

  const asofInput = query("asof") as HTMLInputElement;
  asofInput.value = new Date().toISOString().slice(0, 10);
  query("refresh-policy").addEventListener("click", () => {
    void refreshPolicy(api, asofInput.value);
  });
  void refreshPolicy(api, asofInput.value);
}

async function refreshPolicy(api: ApiClient, asof: string): Promise<void> {
  const graphPane = query("policy-graph");
  const tablePane = query("policy-table");
  try {
    renderPolicyGraph(graphPane, await api.policyGraph());
    renderQueryTable(tablePane, await api.policyQuery(asof));
  } catch {
    graphPane.textContent = "No policy built yet.";
    tablePane.textContent = "";
  }
}

declare global {
  interface Window { SKATE_SERVICE_URL?: string }
}

if (typeof document !== "undefined" && document.getElementById("editor")) {
  boot(window.SKATE_SERVICE_URL ?? "http://127.0.0.1:8040");
}
