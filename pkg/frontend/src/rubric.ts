/** Static rubric content shown next to each task, keyed by phase. */

export interface ScaleLevel {
  value: number;
  label: string;
  description: string;
}

export interface MetricRubric {
  key: "colloquialism" | "intelligibility" | "coherence";
  label: string;
  description: string;
  min: 1;
  max: 3;
}

export const PHASE1_SCALE: ScaleLevel[] = [
  {
    value: 1,
    label: "Very poor",
    description:
      "Unreasonable and highly unnatural; nobody would say this in daily life.",
  },
  {
    value: 2,
    label: "Poor",
    description:
      "Understandable with effort, but awkward; the structure barely holds together.",
  },
  {
    value: 3,
    label: "Fair",
    description:
      "Reasonable and natural enough; easy to follow and could occur in conversation.",
  },
  {
    value: 4,
    label: "Good",
    description:
      "Natural and well structured; you would expect to hear it in conversation.",
  },
  {
    value: 5,
    label: "Excellent",
    description:
      "Fluent and well structured; a common way to say this in daily conversation.",
  },
];

export const PHASE2_RUBRIC: MetricRubric[] = [
  {
    key: "colloquialism",
    label: "Colloquialism",
    description:
      "Is the mixed sentence colloquial enough that people would actually use it?",
    min: 1,
    max: 3,
  },
  {
    key: "intelligibility",
    label: "Intelligibility",
    description:
      "Are the words at the switch points correct in part of speech and meaning, keeping the sentence easy to understand?",
    min: 1,
    max: 3,
  },
  {
    key: "coherence",
    label: "Coherence",
    description:
      "Is each language switch placed reasonably, so the sentence flows smoothly rather than feeling forced?",
    min: 1,
    max: 3,
  },
];
