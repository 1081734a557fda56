// Pure HTML renderers. Each takes the relation grid plus the latest server
// payload and emits markup; the payload's consistent/implied sets appear
// verbatim (also in data- attributes for tests and styling hooks).

import type { RelationPayload, SessionPayload } from "./types";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export type GridOptions = {
  secretRow?: string | null;
  showSecret?: boolean;
};

export function renderGrid(
  relation: RelationPayload,
  view: SessionPayload,
  options: GridOptions = {},
): string {
  const consistent = new Set(view.consistent);
  const implied = new Set(view.implied);
  const revealed = new Set(view.revealed);
  const hasGoals = relation.rows.some((row) => row.goal !== null);

  const header = relation.columns
    .map((column) => {
      const classes = ["col"];
      if (revealed.has(column)) classes.push("revealed");
      if (implied.has(column)) classes.push("implied");
      return (
        `<th class="${classes.join(" ")}" data-column="${escapeHtml(column)}">` +
        `<button class="reveal-btn" data-attribute="${escapeHtml(column)}">` +
        `${escapeHtml(column)}</button></th>`
      );
    })
    .join("");

  const body = relation.rows
    .map((row) => {
      const marked = new Set(row.attributes);
      const classes = ["row"];
      if (consistent.has(row.key)) classes.push("consistent");
      else classes.push("excluded");
      if (options.showSecret && options.secretRow === row.key) classes.push("secret");
      const goalBadge = hasGoals
        ? `<td class="goal-badge">${escapeHtml(row.goal ?? "")}</td>`
        : "";
      const cells = relation.columns
        .map((column) => {
          const cellClasses = ["cell"];
          if (marked.has(column)) cellClasses.push("marked");
          if (revealed.has(column)) cellClasses.push("revealed");
          if (implied.has(column)) cellClasses.push("implied");
          return `<td class="${cellClasses.join(" ")}">${marked.has(column) ? "&#9679;" : ""}</td>`;
        })
        .join("");
      return (
        `<tr class="${classes.join(" ")}" data-row="${escapeHtml(row.key)}">` +
        `<th class="row-key">${escapeHtml(row.key)}</th>${cells}${goalBadge}</tr>`
      );
    })
    .join("");

  const goalHeader = hasGoals ? '<th class="goal-badge">goal</th>' : "";
  return (
    `<table class="grid" data-consistent="${escapeHtml(view.consistent.join(","))}"` +
    ` data-implied="${escapeHtml(view.implied.join(","))}">` +
    `<thead><tr><th></th>${header}${goalHeader}</tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

export function renderRevealed(view: SessionPayload): string {
  if (view.revealed.length === 0) {
    return '<p class="revealed-list empty">nothing revealed yet</p>';
  }
  const items = view.revealed
    .map((attribute, index) => {
      const informative = view.informative[index];
      const tag = informative
        ? '<span class="tag informative">informative</span>'
        : '<span class="tag non-informative">non-informative</span>';
      return `<li data-attribute="${escapeHtml(attribute)}">${escapeHtml(attribute)} ${tag}</li>`;
    })
    .join("");
  return `<ol class="revealed-list">${items}</ol>`;
}

export function renderBanner(view: SessionPayload): string {
  if (!view.inconsistent) return "";
  return (
    '<div class="banner inconsistent" role="alert">' +
    "Inconsistent: no row carries every revealed attribute &mdash; " +
    "the behavior does not fit this relation.</div>"
  );
}

export function renderErrorBanner(message: string | null): string {
  if (!message) return "";
  return `<div class="banner error" role="alert">${escapeHtml(message)}</div>`;
}

export function renderNotice(notice: string | null): string {
  if (!notice) return "";
  return `<p class="notice" role="status">${escapeHtml(notice)}</p>`;
}

export function renderGoalPanel(view: SessionPayload): string {
  if (view.goal_candidates.length === 0) {
    return '<p class="goal-panel empty">no goal information</p>';
  }
  // multiset of the consistent rows' goal sets
  const counts = new Map<string, number>();
  for (const goal of view.goal_candidates) {
    counts.set(goal, (counts.get(goal) ?? 0) + 1);
  }
  const items = [...counts.entries()]
    .map(
      ([goal, count]) =>
        `<li data-goal="${escapeHtml(goal)}">${escapeHtml(goal)}` +
        (count > 1 ? ` <span class="count">&times;${count}</span>` : "") +
        "</li>",
    )
    .join("");
  const ambiguous = counts.size > 1;
  return (
    `<div class="goal-panel" data-ambiguous="${ambiguous}">` +
    `<h3>possible goals</h3><ul>${items}</ul></div>`
  );
}
