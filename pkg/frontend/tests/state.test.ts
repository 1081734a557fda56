import { describe, expect, it } from "vitest";

import narrowRelation from "./fixtures/narrow_river_relation.json";
import narrowSession from "./fixtures/narrow_river_session.json";

import {
  decideReveal,
  failed,
  initialState,
  sessionLoaded,
  toggleSecret,
  viewArrived,
} from "../src/state";
import type { RelationPayload, SessionPayload } from "../src/types";

const relation = narrowRelation as RelationPayload;
const views = narrowSession as SessionPayload[];

function loaded() {
  return sessionLoaded(initialState(), relation, { ...views[0], session_id: "s1" });
}

describe("reveal serialization", () => {
  it("sends a fresh reveal and flips the pending flag", () => {
    const decision = decideReveal(loaded(), "u2");
    expect(decision.kind).toBe("send");
    expect(decision.state.pending).toBe(true);
  });

  it("ignores clicks while a request is in flight", () => {
    const busy = { ...loaded(), pending: true };
    const decision = decideReveal(busy, "f");
    expect(decision.kind).toBe("ignore");
  });

  it("ignores a duplicate click with a tooltip note, without a request", () => {
    const state = viewArrived(loaded(), views[1]); // u2 already revealed
    const decision = decideReveal(state, "u2");
    expect(decision.kind).toBe("ignore");
    expect(decision.state.notice).toContain("already revealed");
    expect(decision.state.pending).toBe(false);
  });
});

describe("payloads are applied verbatim", () => {
  it("stores the arriving view unchanged", () => {
    const state = viewArrived(loaded(), views[2]);
    expect(state.view).toEqual(views[2]);
    expect(state.pending).toBe(false);
  });

  it("a failure freezes the last view and raises the error banner", () => {
    const before = viewArrived(loaded(), views[1]);
    const after = failed({ ...before, pending: true }, "boom");
    expect(after.error).toBe("boom");
    expect(after.view).toEqual(views[1]); // view frozen, not recomputed
    expect(after.pending).toBe(false);
  });
});

describe("secret-row toggle", () => {
  it("defaults to showing the secret and can be flipped", () => {
    const state = loaded();
    expect(state.showSecret).toBe(true);
    expect(toggleSecret(state).showSecret).toBe(false);
  });
});
