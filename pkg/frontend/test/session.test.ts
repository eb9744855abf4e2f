import { describe, expect, it } from "vitest";

import { ApiError } from "../src/api.js";
import { SessionController } from "../src/session.js";
import { ScoreRecord, StatsPayload, TaskPayload } from "../src/types.js";

/** In-memory stand-in mirroring the service's queue and replace semantics. */
class FakeApi {
  posts: ScoreRecord[] = [];
  failNextFetch = false;
  rejectNextPost: ApiError | null = null;

  constructor(private poolSize: number) {}

  private latest = new Map<string, ScoreRecord>();

  async nextTask(annotator: string): Promise<TaskPayload | null> {
    if (this.failNextFetch) {
      this.failNextFetch = false;
      throw new TypeError("fetch failed");
    }
    for (const phase of [1, 2] as const) {
      for (let id = 1; id <= this.poolSize; id++) {
        if (this.latest.has(`${id}:${annotator}:${phase}`)) continue;
        if (phase === 2 && !this.latest.has(`${id}:${annotator}:1`)) continue;
        return { task_id: id, phase, sentence: "甲_@ 乙 丙_@" };
      }
    }
    return null;
  }

  async submitScore(record: ScoreRecord): Promise<void> {
    if (this.rejectNextPost) {
      const err = this.rejectNextPost;
      this.rejectNextPost = null;
      throw err;
    }
    this.posts.push(record);
    this.latest.set(`${record.task_id}:${record.annotator_id}:${record.phase}`, record);
  }

  async stats(): Promise<StatsPayload> {
    return { annotators: {}, grand: {}, counts: {}, pool_size: this.poolSize };
  }
}

function controller(api: FakeApi, annotator = "A") {
  return new SessionController(api as never, annotator);
}

async function completeCurrent(ctl: SessionController) {
  if (ctl.state.kind !== "task") throw new Error(`not on a task: ${ctl.state.kind}`);
  if (ctl.state.task.phase === 1) {
    ctl.setValue("overall", 4);
  } else {
    ctl.setValue("colloquialism", 2);
    ctl.setValue("intelligibility", 3);
    ctl.setValue("coherence", 2);
  }
  await ctl.submit();
}

describe("SessionController", () => {
  it("walks a full two-phase pass with exactly 2N posts", async () => {
    const api = new FakeApi(3);
    const ctl = controller(api);
    await ctl.start();
    while (ctl.state.kind === "task") await completeCurrent(ctl);
    expect(ctl.state.kind).toBe("done");
    expect(api.posts.length).toBe(6);
    expect(ctl.successfulPosts).toBe(6);
    // phase 1 drained before phase 2
    expect(api.posts.slice(0, 3).every((r) => r.phase === 1)).toBe(true);
    expect(api.posts.slice(3).every((r) => r.phase === 2)).toBe(true);
  });

  it("keeps submit incomplete until every phase-2 input is set", async () => {
    const api = new FakeApi(1);
    const ctl = controller(api);
    await ctl.start();
    ctl.setValue("overall", 3);
    await ctl.submit();
    expect(ctl.state.kind).toBe("task");
    if (ctl.state.kind !== "task") return;
    expect(ctl.state.task.phase).toBe(2);
    ctl.setValue("colloquialism", 1);
    ctl.setValue("intelligibility", 2);
    expect(ctl.isComplete()).toBe(false);
    await ctl.submit(); // no-op while incomplete
    expect(api.posts.length).toBe(1);
    ctl.setValue("coherence", 3);
    expect(ctl.isComplete()).toBe(true);
  });

  it("shows a field error and preserves inputs on a 422", async () => {
    const api = new FakeApi(1);
    const ctl = controller(api);
    await ctl.start();
    api.rejectNextPost = new ApiError(422, "overall", "overall must be 1-5");
    ctl.setValue("overall", 5);
    await ctl.submit();
    expect(ctl.state.kind).toBe("task");
    if (ctl.state.kind !== "task") return;
    expect(ctl.state.fieldError?.field).toBe("overall");
    expect(ctl.state.values.overall).toBe(5);
    expect(api.posts.length).toBe(0);
  });

  it("offers retry without losing state on fetch failure", async () => {
    const api = new FakeApi(1);
    const ctl = controller(api);
    api.failNextFetch = true;
    await ctl.start();
    expect(ctl.state.kind).toBe("fetch-error");
    await ctl.retry();
    expect(ctl.state.kind).toBe("task");
  });

  it("back-navigation resubmit replaces and raises an updated notice", async () => {
    const api = new FakeApi(2);
    const ctl = controller(api);
    await ctl.start();
    ctl.setValue("overall", 2);
    await ctl.submit();
    ctl.back();
    expect(ctl.state.kind).toBe("task");
    if (ctl.state.kind !== "task") return;
    expect(ctl.state.values.overall).toBe(2); // previous inputs restored
    ctl.setValue("overall", 5);
    await ctl.submit();
    expect(api.posts.length).toBe(2);
    if (ctl.state.kind === "task") {
      expect(ctl.state.notice).toContain("updated");
    }
    // the client never constructed an invalid record
    for (const rec of api.posts) expect(ScoreRecord.safeParse(rec).success).toBe(true);
  });
});
