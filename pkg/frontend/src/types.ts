import { z } from "zod";

export const PHASE2_METRICS = ["colloquialism", "intelligibility", "coherence"] as const;
export type Phase2Metric = (typeof PHASE2_METRICS)[number];

export interface TaskPayload {
  task_id: number;
  phase: 1 | 2;
  sentence: string;
}

// Outgoing score records; the UI never posts anything this schema rejects.
export const Phase1Record = z.object({
  task_id: z.number().int().positive(),
  annotator_id: z.string().min(1),
  phase: z.literal(1),
  overall: z.number().int().min(1).max(5),
});

export const Phase2Record = z.object({
  task_id: z.number().int().positive(),
  annotator_id: z.string().min(1),
  phase: z.literal(2),
  colloquialism: z.number().int().min(1).max(3),
  intelligibility: z.number().int().min(1).max(3),
  coherence: z.number().int().min(1).max(3),
});

export const ScoreRecord = z.union([Phase1Record, Phase2Record]);
export type ScoreRecord = z.infer<typeof ScoreRecord>;

export interface StatsPayload {
  annotators: Record<string, Record<string, number>>;
  grand: Record<string, number>;
  counts: Record<string, Record<string, number>>;
  pool_size: number;
}
