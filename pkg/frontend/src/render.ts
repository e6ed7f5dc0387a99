/**
 * Pure rendering helpers: documents in, table cells or HTML strings out.
 * Every figure is copied verbatim from a service response; the only local
 * transformation is number formatting.
 */
import type {
  CompareDocument,
  InfeasibleDocument,
  MembershipPoint,
  ModelSummary,
  RankDocument,
  RankRow,
} from "./types";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function formatQuadruple(quad: [number, number, number, number]): string {
  return `(${quad.map((v) => v.toFixed(1)).join(", ")})`;
}

export function countsLine(doc: RankDocument): string {
  const { total, ruled_out, feasible } = doc.counts;
  return `${feasible} feasible of ${total} (${ruled_out} ruled out)`;
}

function selectionCell(selection: Record<string, string>): string {
  return Object.keys(selection)
    .sort((a, b) => a.localeCompare(b, undefined, { numeric: true }))
    .map((d) => selection[d])
    .join(" ");
}

/** Row cells for the ranked table, in display order. */
export function rankTableRows(doc: RankDocument): string[][] {
  return doc.rows.map((row: RankRow) => [
    String(row.rank),
    String(row.index),
    row.ch.toFixed(4),
    formatQuadruple(row.total),
    row.cost_centroid.toFixed(1),
    selectionCell(row.selection),
  ]);
}

export const RANK_TABLE_HEADER = [
  "rank",
  "index",
  "CH",
  "total (a, b, c, d)",
  "cost~",
  "selection",
];

function htmlTable(header: string[], rows: string[][]): string {
  const head = header.map((h) => `<th>${escapeHtml(h)}</th>`).join("");
  const body = rows
    .map(
      (cells) =>
        `<tr>${cells.map((c) => `<td>${escapeHtml(c)}</td>`).join("")}</tr>`,
    )
    .join("");
  return `<table><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderRankTable(doc: RankDocument): string {
  return htmlTable(RANK_TABLE_HEADER, rankTableRows(doc));
}

export function renderGoalCentroids(row: RankRow): string {
  const items = Object.keys(row.goal_centroids)
    .sort((a, b) => a.localeCompare(b, undefined, { numeric: true }))
    .map(
      (gid) =>
        `<li>${escapeHtml(gid)}: ${row.goal_centroids[gid].toFixed(2)}</li>`,
    );
  return `<ul class="centroids">${items.join("")}</ul>`;
}

/** Highlight which constraints ruled everything out. */
export function renderTightest(doc: InfeasibleDocument): string {
  const lines: string[] = [];
  for (const [gid, info] of Object.entries(doc.tightest.goals)) {
    lines.push(
      `<li class="violated">${escapeHtml(gid)}: needs ` +
        `${info.direction === "maximize" ? "≥" : "≤"} ${info.threshold}, ` +
        `best achievable ${info.best_achievable.toFixed(3)}</li>`,
    );
  }
  const budget = doc.tightest.cost_budget;
  if (budget) {
    lines.push(
      `<li class="violated">cost: budget ${budget.budget}, ` +
        `minimum achievable ${budget.min_achievable.toFixed(1)}</li>`,
    );
  }
  return `<div class="infeasible"><p>No feasible architecture.</p><ul>${lines.join("")}</ul></div>`;
}

export function renderCompare(doc: CompareDocument): string {
  const headline =
    `<p class="headline">Crisp winner is fuzzy rank ` +
    `${doc.headline.crisp_winner_fuzzy_rank}; fuzzy winner is crisp rank ` +
    `${doc.headline.fuzzy_winner_crisp_rank} ` +
    `(Spearman ρ = ${doc.headline.spearman_rho.toFixed(4)}).</p>`;
  const fuzzy = htmlTable(
    ["rank", "index", "CH", "selection"],
    doc.fuzzy_top.map((row) => [
      String(row.rank),
      String(row.index),
      row.ch.toFixed(4),
      selectionCell(row.selection),
    ]),
  );
  const crisp = htmlTable(
    ["rank", "index", "score"],
    doc.crisp_top.map((row) => [
      String(row.rank),
      String(row.index),
      row.score.toFixed(2),
    ]),
  );
  return `${headline}<div class="compare">${fuzzy}${crisp}</div>`;
}

export function renderCompareDisabled(reason: string): string {
  return `<div class="disabled"><p>${escapeHtml(reason)}</p></div>`;
}

export function renderModelPanel(
  summary: ModelSummary,
  spaceSize: number,
): string {
  const goals = summary.goals
    .map(
      (g) =>
        `<li><label>${escapeHtml(g.id)} ` +
        `<span class="badge">${g.direction}</span> ` +
        `<input type="range" min="1" max="10" step="1" ` +
        `value="${g.weight}" data-goal="${escapeHtml(g.id)}"></label> ` +
        `${escapeHtml(g.name)}</li>`,
    )
    .join("");
  const decisions = summary.decisions
    .map((d) => {
      const alts = d.alternatives
        .map((a) => `<li>${escapeHtml(a.id)}. ${escapeHtml(a.name)}</li>`)
        .join("");
      return `<li>${escapeHtml(d.id)}. ${escapeHtml(d.name)}<ul>${alts}</ul></li>`;
    })
    .join("");
  return (
    `<h2>${escapeHtml(summary.name)}</h2>` +
    `<p>Solution space: ${spaceSize} architectures</p>` +
    `<ul class="goals">${goals}</ul><ul class="decisions">${decisions}</ul>`
  );
}

/** Polyline for one linguistic level from service-sampled points. */
export function renderMembershipChart(
  points: MembershipPoint[],
  width = 320,
  height = 120,
): string {
  if (points.length === 0) return "<svg></svg>";
  const xs = points.map((p) => p.x);
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const span = xMax - xMin || 1;
  const coords = points
    .map((p) => {
      const px = ((p.x - xMin) / span) * width;
      const py = height - p.membership * height;
      return `${px.toFixed(1)},${py.toFixed(1)}`;
    })
    .join(" ");
  return (
    `<svg viewBox="0 0 ${width} ${height}">` +
    `<polyline fill="none" stroke="currentColor" points="${coords}"/></svg>`
  );
}
