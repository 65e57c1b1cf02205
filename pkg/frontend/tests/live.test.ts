// Live parity against a running service (SKATE_SERVICE_URL). The UI
// driver and a raw fetch script must land on the same rule JSON and
// the same suggestion list. Skipped when no service is configured.

import { describe, expect, it } from "vitest";

import type { SubmitResponse, SuggestionsResponse } from "../src/types.js";
import { COOKIE, driveCookieFlow, driveSuggestionFlow, normalizeRules } from "./driver.js";

const BASE = process.env.SKATE_SERVICE_URL;

async function rawCookieScript(base: string): Promise<SubmitResponse> {
  const post = async (path: string, body?: unknown) => {
    const resp = await fetch(base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return resp.json();
  };
  const created = await post("/sessions", { template: "statement" });
  const sid = created.session as string;
  await post(`/sessions/${sid}/slots/statement/text`, { text: COOKIE });
  await post(`/sessions/${sid}/slots/statement/sense`, { frame: "taking" });
  return post(`/sessions/${sid}/submit`) as Promise<SubmitResponse>;
}

async function rawSuggestionScript(base: string): Promise<SuggestionsResponse> {
  const post = async (path: string, body: unknown) => {
    const resp = await fetch(base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    return resp.json();
  };
  const created = await post("/sessions", { template: "if-then" });
  const sid = created.session as string;
  await post(`/sessions/${sid}/slots/if/text`, { text: "a player gets" });
  await post(`/sessions/${sid}/slots/if/sense`, { frame: "arriving-at-a-location" });
  const resp = await fetch(
    `${base}/sessions/${sid}/suggestions?path=if.destination`,
  );
  return resp.json() as Promise<SuggestionsResponse>;
}

describe.skipIf(!BASE)("live parity against the running service", () => {
  it("cookie flow: UI driver equals the raw HTTP script", async () => {
    const base = BASE as string;
    const raw = await rawCookieScript(base);
    const { submission } = await driveCookieFlow(base);
    expect(normalizeRules(submission.rules ?? []))
      .toEqual(normalizeRules(raw.rules ?? []));
  });

  it("suggestion flow: UI driver equals the raw HTTP script", async () => {
    const base = BASE as string;
    const raw = await rawSuggestionScript(base);
    const { suggestions } = await driveSuggestionFlow(base);
    expect(suggestions).toEqual(raw.suggestions.map((s) => s.text));
    expect(suggestions).toEqual(["to the goal"]);
  });
});
