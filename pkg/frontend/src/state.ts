/**
 * Explorer session state: the loaded model summary, the query draft the
 * architect is editing, the last response, and the service revision.
 *
 * Only one query is considered "current" at a time: every submission takes
 * a token, and responses carrying an outdated token are dropped.
 */
import type {
  ModelResponse,
  ModelSummary,
  QueryDraft,
  RankOutcome,
} from "./types";

export const WEIGHT_MIN = 1;
export const WEIGHT_MAX = 10;

export function clampWeight(value: number): number {
  if (Number.isNaN(value)) return WEIGHT_MIN;
  return Math.min(WEIGHT_MAX, Math.max(WEIGHT_MIN, value));
}

export function summarizeModel(response: ModelResponse): ModelSummary {
  const byDecision = new Map<string, { id: string; name: string }[]>();
  for (const alt of response.model.alternatives) {
    const list = byDecision.get(alt.decision) ?? [];
    list.push({ id: alt.id, name: alt.name });
    byDecision.set(alt.decision, list);
  }
  return {
    name: response.model.name,
    rootGoal: response.model.root_goal,
    goals: response.model.goals
      .filter((g) => g.id !== response.model.root_goal)
      .map((g) => ({
        id: g.id,
        name: g.name,
        direction: g.direction,
        weight: g.weight,
      })),
    decisions: response.model.decisions.map((d) => ({
      id: d.id,
      name: d.name,
      alternatives: byDecision.get(d.id) ?? [],
    })),
  };
}

export function defaultDraft(summary: ModelSummary): QueryDraft {
  const weights: Record<string, number> = {};
  for (const goal of summary.goals) {
    weights[goal.id] = clampWeight(goal.weight);
  }
  return {
    weights,
    goalThresholds: {},
    budget: null,
    k: null,
    backend: null,
    top: 10,
  };
}

/** Canonical form used to detect "nothing changed, nothing to re-render". */
export function draftKey(draft: QueryDraft): string {
  const sorted = (record: Record<string, number>) =>
    Object.keys(record)
      .sort()
      .map((key) => [key, record[key]]);
  return JSON.stringify([
    sorted(draft.weights),
    sorted(draft.goalThresholds),
    draft.budget,
    draft.k,
    draft.backend,
    draft.top,
  ]);
}

export class ExplorerStore {
  summary: ModelSummary | null = null;
  draft: QueryDraft | null = null;
  lastOutcome: RankOutcome | null = null;
  lastDraftKey: string | null = null;
  revision = 0;
  spaceSize: number | null = null;

  private nextToken = 0;
  private currentToken = 0;
  private staleSince: number | null = null;

  loadModel(response: ModelResponse, spaceSize: number): void {
    this.summary = summarizeModel(response);
    this.draft = defaultDraft(this.summary);
    this.revision = response.revision;
    this.spaceSize = spaceSize;
    this.staleSince = null;
    this.lastOutcome = null;
    this.lastDraftKey = null;
  }

  setWeight(goalId: string, value: number): void {
    if (!this.draft) throw new Error("no model loaded");
    this.draft.weights[goalId] = clampWeight(value);
  }

  setBudget(value: number | null): void {
    if (!this.draft) throw new Error("no model loaded");
    this.draft.budget = value !== null && value < 0 ? 0 : value;
  }

  /** Take a token for an outgoing query; later tokens win. */
  beginQuery(): number {
    this.currentToken = ++this.nextToken;
    return this.currentToken;
  }

  /**
   * Record a response. Returns false (and changes nothing) when a newer
   * query has been issued since this one left.
   */
  acceptOutcome(token: number, outcome: RankOutcome): boolean {
    if (token !== this.currentToken) return false;
    const responseRevision =
      outcome.kind === "ranked"
        ? outcome.document.revision
        : outcome.document.revision;
    if (responseRevision !== undefined && responseRevision !== this.revision) {
      this.staleSince = responseRevision;
    }
    this.lastOutcome = outcome;
    this.lastDraftKey = this.draft ? draftKey(this.draft) : null;
    return true;
  }

  /** An unchanged draft needs no round trip; the screen would not change. */
  isDraftDirty(): boolean {
    if (!this.draft) return false;
    return this.lastDraftKey !== draftKey(this.draft);
  }

  /** Mutations (tactics, model replace) are blocked while out of date. */
  get tacticsEnabled(): boolean {
    return this.summary !== null && this.staleSince === null;
  }

  markStale(currentRevision: number): void {
    this.staleSince = currentRevision;
  }

  refresh(response: ModelResponse, spaceSize: number): void {
    this.loadModel(response, spaceSize);
  }
}
