// Thin fetch wrappers over the JSON endpoints. Every failure is surfaced as
// an Error whose message is suitable for the banner.

import type { GraphList, RelationPayload, SessionPayload } from "./types";

async function expectJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // keep the status code
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export async function listGraphs(base = ""): Promise<GraphList> {
  return expectJson(await fetch(`${base}/api/graphs`));
}

export async function getRelation(graphId: string, base = ""): Promise<RelationPayload> {
  return expectJson(await fetch(`${base}/api/graphs/${encodeURIComponent(graphId)}/relation`));
}

export async function startSession(graphId: string, base = ""): Promise<SessionPayload> {
  return expectJson(
    await fetch(`${base}/api/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ graph_id: graphId }),
    }),
  );
}

export async function getSession(sessionId: string, base = ""): Promise<SessionPayload> {
  return expectJson(await fetch(`${base}/api/sessions/${encodeURIComponent(sessionId)}`));
}

export async function revealAttribute(
  sessionId: string,
  attribute: string,
  base = "",
): Promise<SessionPayload> {
  return expectJson(
    await fetch(`${base}/api/sessions/${encodeURIComponent(sessionId)}/reveal`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ attribute }),
    }),
  );
}
