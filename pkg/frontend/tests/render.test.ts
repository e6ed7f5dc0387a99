import { readFileSync } from "node:fs";

import { describe, expect, it } from "vitest";

import {
  countsLine,
  formatQuadruple,
  rankTableRows,
  renderCompare,
  renderMembershipChart,
  renderModelPanel,
  renderRankTable,
  renderTightest,
} from "../src/render";
import { summarizeModel } from "../src/state";
import type {
  CompareDocument,
  InfeasibleDocument,
  ModelResponse,
  RankDocument,
} from "../src/types";

const rankDoc: RankDocument = JSON.parse(
  readFileSync(new URL("./fixtures/rank_budget_30000.json", import.meta.url), "utf8"),
);

describe("countsLine", () => {
  it("echoes the service counts verbatim", () => {
    expect(countsLine(rankDoc)).toBe("10490 feasible of 10800 (310 ruled out)");
  });
});

describe("rankTableRows", () => {
  it("copies figures from the document without recomputation", () => {
    const rows = rankTableRows(rankDoc);
    expect(rows).toHaveLength(10);
    const first = rankDoc.rows[0];
    expect(rows[0][0]).toBe(String(first.rank));
    expect(rows[0][1]).toBe(String(first.index));
    expect(rows[0][2]).toBe(first.ch.toFixed(4));
    expect(rows[0][3]).toBe(formatQuadruple(first.total));
  });

  it("orders the selection by decision id naturally", () => {
    const rows = rankTableRows(rankDoc);
    const expected = Object.keys(rankDoc.rows[0].selection)
      .sort((a, b) => a.localeCompare(b, undefined, { numeric: true }))
      .map((d) => rankDoc.rows[0].selection[d])
      .join(" ");
    expect(rows[0][5]).toBe(expected);
    expect(expected.startsWith(rankDoc.rows[0].selection.d1)).toBe(true);
  });
});

describe("renderRankTable", () => {
  it("produces one table row per ranked row", () => {
    const html = renderRankTable(rankDoc);
    expect(html.match(/<tr>/g)).toHaveLength(11); // header + 10 rows
  });
});

describe("renderTightest", () => {
  it("lists violated constraints", () => {
    const doc: InfeasibleDocument = {
      error: "no feasible architecture",
      tightest: {
        goals: {
          g1: { threshold: 50, direction: "maximize", best_achievable: 41.2 },
        },
        cost_budget: { budget: 1000, min_achievable: 8120 },
      },
      revision: 1,
    };
    const html = renderTightest(doc);
    expect(html).toContain("g1");
    expect(html).toContain("41.200");
    expect(html).toContain("8120.0");
    expect(html.match(/class="violated"/g)).toHaveLength(2);
  });
});

describe("renderCompare", () => {
  it("shows the divergence headline from the recorded fixture", () => {
    const recorded = JSON.parse(
      readFileSync(
        new URL("./fixtures/compare_divergence.json", import.meta.url),
        "utf8",
      ),
    );
    const doc: CompareDocument = {
      revision: 1,
      headline: recorded.headline,
      fuzzy_top: [{ rank: 1, index: 1, ch: 0.4333, selection: { d1: "a2" } }],
      crisp_top: [{ rank: 1, index: 0, score: 3.0 }],
    };
    const html = renderCompare(doc);
    expect(html).toContain("Crisp winner is fuzzy rank 2");
    expect(recorded.headline.crisp_winner_fuzzy_rank).toBeGreaterThan(1);
  });
});

describe("renderModelPanel", () => {
  it("shows one slider per non-root goal and the space size", () => {
    const response: ModelResponse = {
      revision: 1,
      model: {
        name: "demo",
        root_goal: "g0",
        goals: [
          { id: "g0", name: "root", direction: "maximize", weight: 1 },
          { id: "g1", name: "fast", direction: "maximize", weight: 4 },
        ],
        decisions: [{ id: "d1", name: "engine" }],
        alternatives: [{ id: "a1", name: "only", decision: "d1" }],
      },
    };
    const html = renderModelPanel(summarizeModel(response), 10800);
    expect(html.match(/type="range"/g)).toHaveLength(1);
    expect(html).toContain("10800 architectures");
    expect(html).toContain('min="1" max="10"');
  });
});

describe("renderMembershipChart", () => {
  it("maps membership 0.5 to mid height", () => {
    const svg = renderMembershipChart(
      [
        { level: "H", x: 2.0, membership: 0.0 },
        { level: "H", x: 2.5, membership: 0.5 },
        { level: "H", x: 3.0, membership: 1.0 },
      ],
      100,
      100,
    );
    expect(svg).toContain("50.0,50.0");
    expect(svg).toContain("100.0,0.0");
  });

  it("handles an empty sample", () => {
    expect(renderMembershipChart([])).toBe("<svg></svg>");
  });
});
