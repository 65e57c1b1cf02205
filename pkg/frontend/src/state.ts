// Session view-state controller. The rendered state is always the last
// state the server acknowledged: mutations optimistically show the
// user's text, but a 409 (stale sequence) rolls the edit back and
// resynchronizes the expected sequence number.

import { ApiClient, ApiFailure } from "./api.js";
import type {
  SenseOption, SessionState, SlotState, SubmitResponse, Suggestion,
} from "./types.js";

export interface ViewState {
  session: string | null;
  state: SessionState | null;
  activePath: string | null;
  pendingOptions: SenseOption[];
  suggestions: Suggestion[];
  suggestionPrior: string;
  lastEventSeq: number;
  errorPaths: string[];
  errorMessage: string | null;
  submission: SubmitResponse | null;
  optimisticText: { path: string; text: string } | null;
}

export function emptyViewState(): ViewState {
  return {
    session: null,
    state: null,
    activePath: null,
    pendingOptions: [],
    suggestions: [],
    suggestionPrior: "",
    lastEventSeq: 0,
    errorPaths: [],
    errorMessage: null,
    submission: null,
    optimisticText: null,
  };
}

export function findSlot(state: SessionState, path: string): SlotState | null {
  const parts = path.split(".").filter(Boolean);
  let slots = state.root.slots;
  let found: SlotState | null = null;
  for (const name of parts) {
    found = slots.find((s) => s.name === name) ?? null;
    if (!found) return null;
    slots = found.instance?.slots ?? [];
  }
  return found;
}

export function requiredBlanks(state: SessionState): string[] {
  const out: string[] = [];
  const walk = (slots: SlotState[], prefix: string) => {
    for (const slot of slots) {
      const path = prefix ? `${prefix}.${slot.name}` : slot.name;
      if (slot.required && (slot.status === "empty" || slot.status === "pending_dialogue")) {
        out.push(path);
      }
      if (slot.instance) walk(slot.instance.slots, path);
    }
  };
  walk(state.root.slots, "");
  return out;
}

export class SessionController {
  readonly view: ViewState = emptyViewState();
  private listeners: (() => void)[] = [];

  constructor(private readonly api: ApiClient) {}

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private acknowledge(seq: number, state: SessionState): void {
    // the server state replaces local state wholesale; nothing rendered
    // is ever synthesized client-side
    this.view.state = state;
    this.view.lastEventSeq = seq;
    this.view.optimisticText = null;
    this.view.errorPaths = [];
    this.view.errorMessage = null;
  }

  async start(template: string): Promise<void> {
    const resp = await this.api.createSession(template);
    this.view.session = resp.session;
    this.acknowledge(resp.seq, resp.state);
    this.view.activePath = resp.state.focus;
    this.view.pendingOptions = [];
    this.view.suggestions = [];
    this.view.submission = null;
    this.emit();
  }

  private requireSession(): string {
    if (!this.view.session) throw new Error("no session started");
    return this.view.session;
  }

  private handleFailure(err: unknown): void {
    if (err instanceof ApiFailure) {
      if (err.status === 409 && err.body.expected_seq !== undefined) {
        // stale write: drop the optimistic edit, adopt the server's seq
        this.view.optimisticText = null;
        this.view.lastEventSeq = err.body.expected_seq;
        this.view.errorMessage = "edit conflicted; retry";
      } else {
        this.view.errorPaths = err.body.paths ?? [];
        this.view.errorMessage = err.body.detail ?? err.body.error;
      }
      this.emit();
      return;
    }
    throw err;
  }

  async sendText(path: string, text: string): Promise<void> {
    const session = this.requireSession();
    this.view.optimisticText = { path, text };
    this.view.activePath = path;
    this.emit();
    try {
      const resp = await this.api.slotText(session, path, text, this.view.lastEventSeq);
      this.acknowledge(resp.seq, resp.state);
      this.view.pendingOptions = resp.options ?? [];
      this.emit();
    } catch (err) {
      this.handleFailure(err);
    }
  }

  async chooseSense(path: string, frame: string): Promise<void> {
    const session = this.requireSession();
    try {
      const resp = await this.api.slotSense(session, path, frame, this.view.lastEventSeq);
      this.acknowledge(resp.seq, resp.state);
      this.view.pendingOptions = [];
      this.view.activePath = resp.state.focus;
      this.emit();
    } catch (err) {
      this.handleFailure(err);
    }
  }

  async refine(path: string): Promise<void> {
    const session = this.requireSession();
    try {
      const resp = await this.api.slotRefine(session, path);
      this.acknowledge(resp.seq, resp.state);
      this.view.pendingOptions = resp.options ?? [];
      this.view.activePath = path;
      this.emit();
    } catch (err) {
      this.handleFailure(err);
    }
  }

  async leave(path: string): Promise<void> {
    const session = this.requireSession();
    try {
      const resp = await this.api.slotLeave(session, path);
      this.acknowledge(resp.seq, resp.state);
      this.view.pendingOptions = [];
      this.emit();
    } catch (err) {
      this.handleFailure(err);
    }
  }

  async removeSlot(path: string): Promise<void> {
    const session = this.requireSession();
    try {
      const resp = await this.api.slotDelete(session, path);
      this.acknowledge(resp.seq, resp.state);
      this.emit();
    } catch (err) {
      this.handleFailure(err);
    }
  }

  async fetchSuggestions(path: string): Promise<void> {
    const session = this.requireSession();
    const resp = await this.api.suggestions(session, path);
    this.view.suggestions = resp.suggestions;
    this.view.suggestionPrior = resp.prior;
    this.emit();
  }

  async submit(): Promise<SubmitResponse | null> {
    const session = this.requireSession();
    try {
      const resp = await this.api.submit(session);
      this.view.submission = resp;
      if (this.view.state) this.view.state.status = "submitted";
      this.view.errorPaths = [];
      this.view.errorMessage = null;
      this.emit();
      return resp;
    } catch (err) {
      this.handleFailure(err);
      return null;
    }
  }
}
