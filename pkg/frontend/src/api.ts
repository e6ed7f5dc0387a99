/**
 * Thin fetch client for the ranking service. All numbers shown in the UI
 * come from these endpoints; nothing is computed locally.
 */
import type {
  CompareDocument,
  MembershipPoint,
  ModelResponse,
  QueryDraft,
  RankOutcome,
} from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export class StaleRevisionError extends ApiError {
  constructor(public readonly currentRevision: number) {
    super(`stale base revision; current is ${currentRevision}`, 409);
  }
}

function rankBody(draft: QueryDraft): Record<string, unknown> {
  const body: Record<string, unknown> = {
    weights: draft.weights,
    top: draft.top,
  };
  if (Object.keys(draft.goalThresholds).length > 0) {
    body.goal_thresholds = draft.goalThresholds;
  }
  if (draft.budget !== null) body.budget = draft.budget;
  if (draft.k !== null) body.k = draft.k;
  if (draft.backend !== null) body.backend = draft.backend;
  return body;
}

export class ApiClient {
  constructor(private readonly baseUrl: string = "http://127.0.0.1:8000") {}

  private async get(path: string): Promise<unknown> {
    const res = await fetch(`${this.baseUrl}${path}`);
    if (!res.ok) {
      const detail = await res.text();
      throw new ApiError(detail || res.statusText, res.status);
    }
    return res.json();
  }

  private async post(path: string, body: unknown): Promise<Response> {
    return fetch(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async getModel(): Promise<ModelResponse> {
    return (await this.get("/model")) as ModelResponse;
  }

  async getSpaceSize(): Promise<{ size: number; revision: number }> {
    return (await this.get("/space/size")) as { size: number; revision: number };
  }

  /** POST /rank; a 422 is a well-formed "nothing feasible" outcome. */
  async rank(draft: QueryDraft): Promise<RankOutcome> {
    const res = await this.post("/rank", rankBody(draft));
    const body = await res.json();
    if (res.status === 422) return { kind: "infeasible", document: body };
    if (!res.ok) throw new ApiError(body.error ?? res.statusText, res.status);
    return { kind: "ranked", document: body };
  }

  async compare(draft: QueryDraft): Promise<CompareDocument> {
    const res = await this.post("/compare", rankBody(draft));
    const body = await res.json();
    if (!res.ok) throw new ApiError(body.error ?? res.statusText, res.status);
    return body as CompareDocument;
  }

  async applyTactic(
    tactic: string,
    params: Record<string, unknown>,
    baseRevision: number,
  ): Promise<{ revision: number }> {
    const res = await this.post("/tactics/apply", {
      tactic,
      params,
      base_revision: baseRevision,
    });
    const body = await res.json();
    if (res.status === 409) throw new StaleRevisionError(body.current_revision);
    if (!res.ok) throw new ApiError(body.error ?? res.statusText, res.status);
    return body as { revision: number };
  }

  async membership(level: string, x: number): Promise<MembershipPoint> {
    return (await this.get(
      `/membership?level=${encodeURIComponent(level)}&x=${x}`,
    )) as MembershipPoint;
  }

  /** Sample one level's membership curve, one service call per point. */
  async membershipCurve(
    level: string,
    xs: number[],
  ): Promise<MembershipPoint[]> {
    return Promise.all(xs.map((x) => this.membership(level, x)));
  }
}
