// Wire formats of the JSON service. The client renders these verbatim and
// performs no inference of its own.

export type FixtureKind = "graph" | "relation";

export type FixtureEntry = {
  id: string;
  kind: FixtureKind;
  title: string;
};

export type GraphList = {
  graphs: FixtureEntry[];
};

export type RelationRow = {
  key: string;
  attributes: string[];
  goal: string | null;
};

export type RelationPayload = {
  id: string;
  columns: string[];
  rows: RelationRow[];
};

export type SessionPayload = {
  session_id?: string;
  graph_id?: string;
  revealed: string[];
  consistent: string[];
  implied: string[];
  informative: boolean[];
  inconsistent: boolean;
  goal_candidates: string[];
};

export type ApiError = {
  error?: string;
  detail?: string;
};
