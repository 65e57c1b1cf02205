// Server payload shapes. These mirror the service's published JSON
// schemas; the UI never invents fields beyond them.

export type Span = [number, number];

export interface SenseOption {
  frame: string;
  gloss: string;
  example: string;
}

export type SlotStatus = "empty" | "unstructured" | "pending_dialogue" | "structured";

export interface SlotState {
  name: string;
  required: boolean;
  status: SlotStatus;
  text?: string;
  options?: SenseOption[];
  instance?: InstanceState;
  final?: boolean;
  suggested?: boolean;
}

export interface InstanceState {
  frame: string;
  trigger: string;
  slots: SlotState[];
}

export interface SessionState {
  session: string;
  template: string;
  status: "editing" | "submitted";
  focus: string;
  root: InstanceState;
  seq: number;
}

export interface Term {
  var?: string;
  const?: string;
  text?: string;
  type?: string;
}

export interface RuleAtom {
  pred: string;
  args: Record<string, Term>;
  negated?: boolean;
}

export interface Rule {
  modality: "always" | "often";
  antecedents: RuleAtom[];
  consequent: RuleAtom;
  provenance: string;
}

export interface SubmitResponse {
  session: string;
  kind: "rules" | "state_def" | "facts";
  rules?: Rule[];
  state_def?: unknown;
  facts?: unknown[];
}

export interface Suggestion {
  text: string;
  full_text: string;
  score: number;
}

export interface SuggestionsResponse {
  session: string;
  path: string;
  prior: string;
  suggestions: Suggestion[];
}

export interface PolicyStateDef {
  id: string;
  kind: "compliance" | "intermediate";
  frame: string;
  default_adjuncts: { duration_days?: number; population?: string };
  default?: boolean;
}

export interface PolicyGraphDoc {
  states: PolicyStateDef[];
  rules: {
    antecedents: RuleAtom[];
    consequent: RuleAtom;
    target_state: string | null;
  }[];
}

export interface PersonStatusRow {
  person: string;
  state: string;
  start: string | null;
  end: string | null;
  days_remaining: number;
  population: string | null;
}

export interface QueryResponse {
  asof: string;
  filter: string | null;
  statuses: PersonStatusRow[];
}

export interface ApiError {
  error: string;
  detail?: string;
  paths?: string[];
  expected_seq?: number;
}
