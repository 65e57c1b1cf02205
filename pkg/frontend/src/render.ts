// DOM rendering. Everything shown comes from the EditorModel / layout
// projections; this module only creates elements and wires events.

import type { SessionController } from "./state.js";
import { buildEditorModel, type SlotRow } from "./viewmodel.js";
import { renderRules } from "./rulePreview.js";
import { layoutPolicyGraph } from "./policy.js";
import type { PolicyGraphDoc, QueryResponse, Rule } from "./types.js";
import { debounce } from "./debounce.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K, className?: string, text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderEditor(
  container: HTMLElement, controller: SessionController,
): void {
  const model = buildEditorModel(controller.view);
  container.textContent = "";

  if (!model.template) {
    container.append(el("p", "hint", "Pick a template to start an entry."));
    return;
  }

  const crumb = el("nav", "breadcrumbs");
  crumb.append(el("span", "crumb", model.template));
  for (const part of model.breadcrumbs) {
    crumb.append(el("span", "crumb-sep", "›"));
    crumb.append(el("span", "crumb", part));
  }
  container.append(crumb);

  if (model.errorMessage) {
    container.append(el("p", "error-banner", model.errorMessage));
  }

  const list = el("div", "slot-list");
  for (const row of model.rows) {
    list.append(renderSlotRow(row, model.optionsPath, controller));
  }
  container.append(list);

  if (model.options.length && model.optionsPath) {
    const dialog = el("div", "micro-dialogue");
    dialog.append(el("p", "hint",
      `Which sense of the trigger in "${model.optionsPath}"?`));
    for (const option of model.options) {
      const chip = el("button", "chip");
      chip.append(el("span", "chip-frame", option.frame));
      chip.append(el("span", "chip-gloss", option.gloss));
      if (option.example) chip.append(el("span", "chip-example", option.example));
      chip.addEventListener("click", () => {
        void controller.chooseSense(model.optionsPath as string, option.frame);
      });
      dialog.append(chip);
    }
    container.append(dialog);
  }

  if (model.suggestions.length) {
    const drop = el("div", "suggestions");
    drop.append(el("p", "hint", "Suggestions"));
    for (const text of model.suggestions) {
      const item = el("button", "suggestion", text);
      item.addEventListener("click", () => {
        const path = controller.view.activePath;
        if (path) void controller.sendText(path, text);
      });
      drop.append(item);
    }
    container.append(drop);
  }

  const submit = el("button", "submit", "Submit entry");
  submit.disabled = !model.canSubmit;
  submit.addEventListener("click", () => void controller.submit());
  container.append(submit);
  if (model.blockingPaths.length) {
    container.append(el("p", "hint blocking",
      `Required before submit: ${model.blockingPaths.join(", ")}`));
  }
}

function renderSlotRow(
  row: SlotRow, _optionsPath: string | null, controller: SessionController,
): HTMLElement {
  const wrap = el("div", "slot-row");
  wrap.style.marginLeft = `${row.depth * 24}px`;
  if (row.blocking) wrap.classList.add("required-blank");
  if (row.isActive) wrap.classList.add("active");
  if (row.hasError) wrap.classList.add("has-error");

  const label = el("label", "slot-label", row.name + (row.required ? " *" : ""));
  if (row.suggested) label.append(el("span", "badge", "suggested"));
  wrap.append(label);

  if (row.status === "structured") {
    wrap.append(el("span", "slot-frame", `${row.frame} · "${row.trigger}"`));
  } else {
    const input = el("input", "slot-input") as HTMLInputElement;
    input.value = row.text;
    input.placeholder = row.required ? "required" : "optional";
    const push = debounce((value: string) => {
      void controller.sendText(row.path, value);
    }, 300);
    input.addEventListener("input", () => push(input.value));
    input.addEventListener("focus", () => {
      controller.view.activePath = row.path;
      void controller.fetchSuggestions(row.path).catch(() => undefined);
    });
    wrap.append(input);
    if (row.status === "unstructured" && row.text) {
      const refine = el("button", "mini", "refine");
      refine.addEventListener("click", () => void controller.refine(row.path));
      const leave = el("button", "mini", "keep as text");
      leave.addEventListener("click", () => void controller.leave(row.path));
      wrap.append(refine, leave);
    }
  }
  if (!row.required) {
    const remove = el("button", "mini danger", "×");
    remove.addEventListener("click", () => void controller.removeSlot(row.path));
    wrap.append(remove);
  }
  return wrap;
}

export function renderRulePreview(container: HTMLElement, rules: Rule[]): void {
  container.textContent = "";
  container.append(el("h3", undefined, "Rules"));
  const pre = el("pre", "rule-text", renderRules(rules));
  container.append(pre);
}

export function renderPolicyGraph(
  container: HTMLElement, doc: PolicyGraphDoc,
): void {
  const layout = layoutPolicyGraph(doc);
  container.textContent = "";
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(layout.width));
  svg.setAttribute("height", String(layout.height));
  const byId = new Map(layout.nodes.map((n) => [n.id, n]));
  for (const edge of layout.edges) {
    const from = byId.get(edge.from);
    const to = byId.get(edge.to);
    if (!from || !to) continue;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(from.x + 130));
    line.setAttribute("y1", String(from.y + 16));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y + 16));
    line.setAttribute("class", "edge");
    svg.append(line);
  }
  for (const node of layout.nodes) {
    const group = document.createElementNS(SVG_NS, "g");
    const rect = document.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(node.x));
    rect.setAttribute("y", String(node.y));
    rect.setAttribute("width", "130");
    rect.setAttribute("height", "32");
    rect.setAttribute("rx", "6");
    rect.setAttribute("class", `node ${node.kind}`);
    const text = document.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(node.x + 65));
    text.setAttribute("y", String(node.y + 20));
    text.setAttribute("text-anchor", "middle");
    text.textContent = node.label;
    group.append(rect, text);
    svg.append(group);
  }
  container.append(svg);
}

export function renderQueryTable(
  container: HTMLElement, report: QueryResponse,
): void {
  container.textContent = "";
  const table = el("table", "query-table");
  const head = el("tr");
  for (const h of ["person", "state", "start", "end", "days remaining"]) {
    head.append(el("th", undefined, h));
  }
  table.append(head);
  for (const row of report.statuses) {
    const tr = el("tr");
    tr.append(el("td", undefined, row.person));
    tr.append(el("td", `state-${row.state}`, row.state));
    tr.append(el("td", undefined, row.start ?? "—"));
    tr.append(el("td", undefined, row.end ?? "—"));
    tr.append(el("td", "days", String(row.days_remaining)));
    table.append(tr);
  }
  container.append(table);
}
