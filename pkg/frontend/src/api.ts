import { ScoreRecord, StatsPayload, TaskPayload } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public field: string | null,
    message: string,
  ) {
    super(message);
  }
}

/** Thin typed client over the annotation service HTTP API. */
export class AnnotationApi {
  constructor(private baseUrl: string) {}

  /** Next open task for the annotator, or null when the pool is exhausted. */
  async nextTask(annotatorId: string): Promise<TaskPayload | null> {
    const res = await fetch(
      `${this.baseUrl}/api/tasks/next?annotator=${encodeURIComponent(annotatorId)}`,
    );
    if (res.status === 204) return null;
    if (!res.ok) throw await this.toError(res);
    return (await res.json()) as TaskPayload;
  }

  async submitScore(record: ScoreRecord): Promise<void> {
    const parsed = ScoreRecord.safeParse(record);
    if (!parsed.success) {
      const issue = parsed.error.issues[0];
      throw new ApiError(0, String(issue.path[0] ?? ""), issue.message);
    }
    const res = await fetch(`${this.baseUrl}/api/scores`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(parsed.data),
    });
    if (res.status !== 201) throw await this.toError(res);
  }

  async stats(): Promise<StatsPayload> {
    const res = await fetch(`${this.baseUrl}/api/stats`);
    if (!res.ok) throw await this.toError(res);
    return (await res.json()) as StatsPayload;
  }

  private async toError(res: Response): Promise<ApiError> {
    let field: string | null = null;
    let message = `${res.status}`;
    try {
      const body = await res.json();
      if (body && typeof body.detail === "object" && body.detail) {
        field = body.detail.field ?? null;
        message = body.detail.message ?? message;
      } else if (body && typeof body.detail === "string") {
        message = body.detail;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    return new ApiError(res.status, field, message);
  }
}
