// Pure projection of server state into what the page shows. Every
// field here is copied from a server response; snapshot tests pin the
// projection so the renderer cannot invent content.

import { requiredBlanks, type ViewState } from "./state.js";
import type { SenseOption, SlotState } from "./types.js";

export interface SlotRow {
  path: string;
  name: string;
  depth: number;
  required: boolean;
  status: string;
  text: string;
  frame: string | null;
  trigger: string | null;
  suggested: boolean;
  blocking: boolean;
  isActive: boolean;
  hasError: boolean;
}

export interface EditorModel {
  template: string | null;
  sessionStatus: string | null;
  rows: SlotRow[];
  breadcrumbs: string[];
  options: SenseOption[];
  optionsPath: string | null;
  suggestions: string[];
  blockingPaths: string[];
  canSubmit: boolean;
  errorMessage: string | null;
}

export function buildEditorModel(view: ViewState): EditorModel {
  const state = view.state;
  if (!state) {
    return {
      template: null, sessionStatus: null, rows: [], breadcrumbs: [],
      options: [], optionsPath: null, suggestions: [], blockingPaths: [],
      canSubmit: false, errorMessage: view.errorMessage,
    };
  }
  const blocking = requiredBlanks(state);
  const rows: SlotRow[] = [];

  const walk = (slots: SlotState[], prefix: string, depth: number) => {
    for (const slot of slots) {
      const path = prefix ? `${prefix}.${slot.name}` : slot.name;
      const optimistic = view.optimisticText?.path === path
        ? view.optimisticText.text : null;
      rows.push({
        path,
        name: slot.name,
        depth,
        required: slot.required,
        status: slot.status,
        text: optimistic ?? slot.text ?? "",
        frame: slot.instance?.frame ?? null,
        trigger: slot.instance?.trigger ?? null,
        suggested: slot.suggested ?? false,
        blocking: blocking.includes(path),
        isActive: view.activePath === path,
        hasError: view.errorPaths.includes(path),
      });
      if (slot.instance) walk(slot.instance.slots, path, depth + 1);
    }
  };
  walk(state.root.slots, "", 0);

  return {
    template: state.template,
    sessionStatus: state.status,
    rows,
    breadcrumbs: (view.activePath ?? "").split(".").filter(Boolean),
    options: view.pendingOptions,
    optionsPath: view.activePath,
    suggestions: view.suggestions.map((s) => s.text),
    blockingPaths: blocking,
    canSubmit: state.status === "editing" && blocking.length === 0,
    errorMessage: view.errorMessage,
  };
}
