/**
 * Shared types mirroring the ranking service's JSON documents.
 */

export type Direction = "maximize" | "minimize";

export interface GoalSummary {
  id: string;
  name: string;
  direction: Direction;
  weight: number;
}

export interface AlternativeSummary {
  id: string;
  name: string;
}

export interface DecisionSummary {
  id: string;
  name: string;
  alternatives: AlternativeSummary[];
}

export interface ModelSummary {
  name: string;
  rootGoal: string;
  goals: GoalSummary[];
  decisions: DecisionSummary[];
}

export interface ModelResponse {
  revision: number;
  model: {
    name: string;
    root_goal: string;
    goals: Array<{
      id: string;
      name: string;
      direction: Direction;
      weight: number;
    }>;
    decisions: Array<{ id: string; name: string }>;
    alternatives: Array<{ id: string; name: string; decision: string }>;
  };
}

export interface QueryDraft {
  weights: Record<string, number>;
  goalThresholds: Record<string, number>;
  budget: number | null;
  k: number | null;
  backend: "fuzzy_sum" | "mamdani" | null;
  top: number;
}

export interface RankRow {
  rank: number;
  index: number;
  selection: Record<string, string>;
  goal_centroids: Record<string, number>;
  total: [number, number, number, number];
  cost_centroid: number;
  ch: number;
}

export interface RankDocument {
  format_version: number;
  parameters: {
    k: number;
    backend: string;
    weights: Record<string, number>;
    goal_thresholds: Record<string, number>;
    cost_budget: number | null;
    top: number | null;
  };
  counts: { total: number; ruled_out: number; feasible: number };
  rows: RankRow[];
  revision?: number;
}

export interface TightestConstraints {
  goals: Record<
    string,
    { threshold: number; direction: Direction; best_achievable: number }
  >;
  cost_budget: { budget: number; min_achievable: number } | null;
}

export interface InfeasibleDocument {
  error: string;
  counts?: { total: number; ruled_out: number; feasible: number };
  tightest: TightestConstraints;
  revision: number;
}

export interface CompareDocument {
  revision: number;
  headline: {
    crisp_winner_fuzzy_rank: number;
    fuzzy_winner_crisp_rank: number;
    spearman_rho: number;
  };
  fuzzy_top: Array<{
    rank: number;
    index: number;
    ch: number;
    selection: Record<string, string>;
  }>;
  crisp_top: Array<{ rank: number; index: number; score: number }>;
}

export interface MembershipPoint {
  level: string;
  x: number;
  membership: number;
}

export type RankOutcome =
  | { kind: "ranked"; document: RankDocument }
  | { kind: "infeasible"; document: InfeasibleDocument };
