// Client state: the relation grid plus the last server payload. Reveals are
// serialized client-side (one in-flight request); a duplicate click is
// ignored locally with a tooltip note and never reaches the service.

import type { RelationPayload, SessionPayload } from "./types";

export type AppState = {
  relation: RelationPayload | null;
  view: SessionPayload | null;
  sessionId: string | null;
  pending: boolean;
  notice: string | null; // transient, e.g. duplicate-click tooltip
  error: string | null; // sticky banner, e.g. network/404
  showSecret: boolean; // skipper-mode toggle: highlight a chosen row
  secretRow: string | null;
};

export function initialState(): AppState {
  return {
    relation: null,
    view: null,
    sessionId: null,
    pending: false,
    notice: null,
    error: null,
    showSecret: true,
    secretRow: null,
  };
}

export function sessionLoaded(
  state: AppState,
  relation: RelationPayload,
  view: SessionPayload,
): AppState {
  return {
    ...state,
    relation,
    view,
    sessionId: view.session_id ?? null,
    pending: false,
    notice: null,
    error: null,
  };
}

export function viewArrived(state: AppState, view: SessionPayload): AppState {
  // the server payload is authoritative; nothing is recomputed locally
  return { ...state, view, pending: false, notice: null };
}

export function failed(state: AppState, message: string): AppState {
  return { ...state, pending: false, error: message };
}

export type RevealDecision =
  | { kind: "send"; state: AppState }
  | { kind: "ignore"; state: AppState };

export function decideReveal(state: AppState, attribute: string): RevealDecision {
  if (state.pending || !state.view) {
    return { kind: "ignore", state };
  }
  if (state.view.revealed.includes(attribute)) {
    return {
      kind: "ignore",
      state: { ...state, notice: `${attribute} is already revealed` },
    };
  }
  return { kind: "send", state: { ...state, pending: true, notice: null } };
}

export function toggleSecret(state: AppState): AppState {
  return { ...state, showSecret: !state.showSecret };
}

export function chooseSecret(state: AppState, row: string | null): AppState {
  return { ...state, secretRow: row };
}
