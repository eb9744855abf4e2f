import { AnnotationApi, ApiError } from "./api.js";
import { PHASE2_METRICS, Phase2Metric, ScoreRecord, StatsPayload, TaskPayload } from "./types.js";

export interface ScoreValues {
  overall?: number;
  colloquialism?: number;
  intelligibility?: number;
  coherence?: number;
}

export type ViewState =
  | { kind: "loading" }
  | {
      kind: "task";
      task: TaskPayload;
      values: ScoreValues;
      fieldError: { field: string | null; message: string } | null;
      notice: string | null;
    }
  | { kind: "done"; stats: StatsPayload; submitted: number }
  | { kind: "fetch-error"; message: string };

/** Drives the two-phase workflow; all persistent state lives on the server,
 * the controller only holds the view and an optimistic history for
 * back-navigation. */
export class SessionController {
  state: ViewState = { kind: "loading" };
  successfulPosts = 0;

  private submittedKeys = new Set<string>();
  private history: { task: TaskPayload; values: ScoreValues }[] = [];
  private pendingNotice: string | null = null;

  constructor(
    private api: AnnotationApi,
    readonly annotatorId: string,
    private onChange: (state: ViewState) => void = () => {},
  ) {}

  private emit(state: ViewState): void {
    this.state = state;
    this.onChange(state);
  }

  async start(): Promise<void> {
    await this.next();
  }

  async next(): Promise<void> {
    this.emit({ kind: "loading" });
    try {
      const task = await this.api.nextTask(this.annotatorId);
      if (task === null) {
        const stats = await this.api.stats();
        this.emit({ kind: "done", stats, submitted: this.successfulPosts });
        return;
      }
      this.emit({
        kind: "task",
        task,
        values: {},
        fieldError: null,
        notice: this.pendingNotice,
      });
      this.pendingNotice = null;
    } catch (err) {
      this.emit({ kind: "fetch-error", message: String(err) });
    }
  }

  async retry(): Promise<void> {
    await this.next();
  }

  setValue(field: keyof ScoreValues, value: number): void {
    if (this.state.kind !== "task") return;
    this.emit({
      ...this.state,
      values: { ...this.state.values, [field]: value },
      fieldError: null,
    });
  }

  /** Submission stays disabled until every input of the phase is selected. */
  isComplete(): boolean {
    if (this.state.kind !== "task") return false;
    const { task, values } = this.state;
    if (task.phase === 1) return values.overall !== undefined;
    return PHASE2_METRICS.every((m: Phase2Metric) => values[m] !== undefined);
  }

  private buildRecord(task: TaskPayload, values: ScoreValues): ScoreRecord {
    if (task.phase === 1) {
      return {
        task_id: task.task_id,
        annotator_id: this.annotatorId,
        phase: 1,
        overall: values.overall!,
      };
    }
    return {
      task_id: task.task_id,
      annotator_id: this.annotatorId,
      phase: 2,
      colloquialism: values.colloquialism!,
      intelligibility: values.intelligibility!,
      coherence: values.coherence!,
    };
  }

  async submit(): Promise<void> {
    if (this.state.kind !== "task" || !this.isComplete()) return;
    const { task, values } = this.state;
    try {
      await this.api.submitScore(this.buildRecord(task, values));
    } catch (err) {
      // inputs are preserved; field-level message when the server names one
      const fieldError =
        err instanceof ApiError
          ? { field: err.field, message: err.message }
          : { field: null, message: String(err) };
      this.emit({ ...this.state, fieldError });
      return;
    }
    this.successfulPosts += 1;
    const key = `${task.task_id}:${task.phase}`;
    if (this.submittedKeys.has(key)) {
      this.pendingNotice = `updated task ${task.task_id} (phase ${task.phase})`;
    }
    this.submittedKeys.add(key);
    this.history.push({ task, values });
    await this.next();
  }

  /** Revisit the most recently submitted task; resubmitting replaces the
   * server-side record and surfaces an "updated" notice. */
  back(): void {
    const last = this.history.pop();
    if (!last) return;
    this.emit({
      kind: "task",
      task: last.task,
      values: { ...last.values },
      fieldError: null,
      notice: null,
    });
  }
}
