// Policy graph layout: layered left to right following the inference
// strata (observable predicates, intermediate states, compliance
// states), with one edge per rule hop.

import type { PolicyGraphDoc } from "./types.js";

export interface GraphNode {
  id: string;
  label: string;
  layer: 0 | 1 | 2;
  kind: "observable" | "intermediate" | "compliance";
  x: number;
  y: number;
}

export interface GraphEdge {
  from: string;
  to: string;
}

export interface GraphLayout {
  nodes: GraphNode[];
  edges: GraphEdge[];
  width: number;
  height: number;
}

const COLUMN_WIDTH = 220;
const ROW_HEIGHT = 70;
const MARGIN = 40;

export function layoutPolicyGraph(doc: PolicyGraphDoc): GraphLayout {
  const stateKind = new Map<string, "intermediate" | "compliance">();
  const frameToState = new Map<string, string>();
  for (const s of doc.states) {
    stateKind.set(s.id, s.kind);
    frameToState.set(s.frame, s.id);
    frameToState.set(s.id, s.id);
  }

  const nodeIds = new Set<string>();
  const edges: GraphEdge[] = [];
  const resolve = (pred: string) => frameToState.get(pred) ?? pred;

  for (const s of doc.states) nodeIds.add(s.id);
  for (const rule of doc.rules) {
    const target = rule.target_state ?? resolve(rule.consequent.pred);
    nodeIds.add(target);
    for (const atom of rule.antecedents) {
      const source = resolve(atom.pred);
      nodeIds.add(source);
      if (source !== target) edges.push({ from: source, to: target });
    }
  }

  const layerOf = (id: string): 0 | 1 | 2 => {
    const kind = stateKind.get(id);
    if (kind === "compliance") return 2;
    if (kind === "intermediate") return 1;
    return 0;
  };

  const perLayer: Record<number, number> = { 0: 0, 1: 0, 2: 0 };
  const nodes: GraphNode[] = [...nodeIds].sort().map((id) => {
    const layer = layerOf(id);
    const row = perLayer[layer]++;
    const kind = stateKind.get(id) ?? "observable";
    return {
      id,
      label: id,
      layer,
      kind,
      x: MARGIN + layer * COLUMN_WIDTH,
      y: MARGIN + row * ROW_HEIGHT,
    };
  });

  const deepest = Math.max(perLayer[0], perLayer[1], perLayer[2], 1);
  const unique = new Map(edges.map((e) => [`${e.from}->${e.to}`, e]));
  return {
    nodes,
    edges: [...unique.values()],
    width: MARGIN * 2 + 2 * COLUMN_WIDTH + 160,
    height: MARGIN * 2 + deepest * ROW_HEIGHT,
  };
}
