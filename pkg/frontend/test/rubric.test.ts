import { describe, expect, it } from "vitest";

import { PHASE1_SCALE, PHASE2_RUBRIC } from "../src/rubric.js";

describe("rubric content", () => {
  it("phase 1 is a five-level 1-5 scale with descriptions", () => {
    expect(PHASE1_SCALE.map((l) => l.value)).toEqual([1, 2, 3, 4, 5]);
    expect(PHASE1_SCALE[0].label).toBe("Very poor");
    expect(PHASE1_SCALE[4].label).toBe("Excellent");
    for (const level of PHASE1_SCALE) expect(level.description.length).toBeGreaterThan(10);
  });

  it("phase 2 carries exactly the three 1-3 metrics", () => {
    expect(PHASE2_RUBRIC.map((m) => m.key)).toEqual([
      "colloquialism",
      "intelligibility",
      "coherence",
    ]);
    for (const metric of PHASE2_RUBRIC) {
      expect(metric.min).toBe(1);
      expect(metric.max).toBe(3);
    }
  });
});
