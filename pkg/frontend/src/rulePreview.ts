// Human-readable rendering of rule JSON, matching the service's
// logic_text export: `often: helping(V1, V2) => thanking(V1, V2).`

import type { Rule, RuleAtom, Term } from "./types.js";

function renderTerm(term: Term): string {
  if (term.const !== undefined) return term.const.replace(/ /g, "_");
  return (term.var ?? "_").toUpperCase();
}

function renderAtom(atom: RuleAtom): string {
  const parts = Object.entries(atom.args)
    .filter(([role]) => role !== "focal")
    .map(([, term]) => renderTerm(term));
  const body = `${atom.pred}(${parts.join(", ")})`;
  return atom.negated ? `not ${body}` : body;
}

export function renderRule(rule: Rule): string {
  const prefix = rule.modality === "often" ? "often: " : "";
  const head = renderAtom(rule.consequent);
  if (!rule.antecedents.length) return `${prefix}${head}.`;
  const body = rule.antecedents.map(renderAtom).join(" & ");
  return `${prefix}${body} => ${head}.`;
}

export function renderRules(rules: Rule[]): string {
  return rules.map(renderRule).join("\n");
}
