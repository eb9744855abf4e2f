"""Two-phase human-evaluation records: storage, queueing and aggregation.

Phase 1 scores a sentence overall on 1-5; phase 2 scores colloquialism,
intelligibility and coherence on 1-3.  Records persist in an append-only
JSON-lines log so replaying the log reconstructs identical aggregates after
a restart; a duplicate (task, annotator, phase) replaces the earlier record
and is flagged on export.
"""

from __future__ import annotations

import datetime as _dt
import json
import os
import random
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

PHASE2_METRICS = ("colloquialism", "intelligibility", "coherence")

TOTALLY_AGREE = "TOTALLY_AGREE"
FAIR_AGREE = "FAIR_AGREE"
DISAGREE = "DISAGREE"
AGREEMENT_LABELS = (TOTALLY_AGREE, FAIR_AGREE, DISAGREE)


class AnnotationError(ValueError):
    def __init__(self, message: str, fld: str | None = None):
        super().__init__(message)
        self.field = fld


@dataclass(frozen=True)
class AnnotationRecord:
    task_id: int
    annotator_id: str
    phase: int
    overall: int | None = None
    colloquialism: int | None = None
    intelligibility: int | None = None
    coherence: int | None = None
    timestamp: str = ""

    def validate(self) -> None:
        if self.phase not in (1, 2):
            raise AnnotationError(f"phase must be 1 or 2, got {self.phase}", "phase")
        triplet = {m: getattr(self, m) for m in PHASE2_METRICS}
        if self.phase == 1:
            if self.overall is None:
                raise AnnotationError("phase-1 record needs an overall score", "overall")
            if not 1 <= self.overall <= 5:
                raise AnnotationError(f"overall must be 1-5, got {self.overall}", "overall")
            set_metrics = [m for m, v in triplet.items() if v is not None]
            if set_metrics:
                raise AnnotationError(
                    f"phase-1 record must not carry {set_metrics[0]}", set_metrics[0]
                )
        else:
            if self.overall is not None:
                raise AnnotationError("phase-2 record must not carry overall", "overall")
            for m, v in triplet.items():
                if v is None:
                    raise AnnotationError(f"phase-2 record needs {m}", m)
                if not 1 <= v <= 3:
                    raise AnnotationError(f"{m} must be 1-3, got {v}", m)

    def key(self) -> tuple[int, str, int]:
        return (self.task_id, self.annotator_id, self.phase)

    def to_json_obj(self) -> dict:
        obj = {
            "task_id": self.task_id,
            "annotator_id": self.annotator_id,
            "phase": self.phase,
            "timestamp": self.timestamp,
        }
        if self.phase == 1:
            obj["overall"] = self.overall
        else:
            for m in PHASE2_METRICS:
                obj[m] = getattr(self, m)
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "AnnotationRecord":
        rec = cls(
            task_id=int(obj["task_id"]),
            annotator_id=str(obj["annotator_id"]),
            phase=int(obj["phase"]),
            overall=obj.get("overall"),
            colloquialism=obj.get("colloquialism"),
            intelligibility=obj.get("intelligibility"),
            coherence=obj.get("coherence"),
            timestamp=obj.get("timestamp", ""),
        )
        rec.validate()
        return rec


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")


@dataclass(frozen=True)
class Task:
    task_id: int
    sentence: str


def sample_pool(sentences: Sequence[str], size: int | None, seed: int = 0) -> list[Task]:
    """Uniform random sample of the corpus as the task pool, ids from 1."""
    picked = list(sentences)
    if size is not None and size < len(picked):
        picked = random.Random(seed).sample(picked, size)
    return [Task(i + 1, s) for i, s in enumerate(picked)]


class RecordLog:
    """Append-only durable store; one JSON object per line.

    All writes serialize through a single lock; readers snapshot.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._records: list[AnnotationRecord] = []
        self._latest: dict[tuple[int, str, int], AnnotationRecord] = {}
        self._revised: set[tuple[int, str, int]] = set()
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    self._admit(AnnotationRecord.from_json_obj(json.loads(line)))

    def _admit(self, rec: AnnotationRecord) -> None:
        if rec.key() in self._latest:
            self._revised.add(rec.key())
        self._records.append(rec)
        self._latest[rec.key()] = rec

    def append(self, rec: AnnotationRecord) -> None:
        rec.validate()
        if not rec.timestamp:
            rec = AnnotationRecord(**{**rec.__dict__, "timestamp": _now()})
        with self._lock:
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec.to_json_obj(), ensure_ascii=False) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._admit(rec)

    def records(self) -> list[AnnotationRecord]:
        """Latest record per (task, annotator, phase), in first-seen order."""
        with self._lock:
            seen = set()
            out = []
            for rec in self._records:
                if rec.key() in seen:
                    continue
                seen.add(rec.key())
                out.append(self._latest[rec.key()])
            return out

    def export_lines(self) -> Iterable[str]:
        for rec in self.records():
            obj = rec.to_json_obj()
            if rec.key() in self._revised:
                obj["revised"] = True
            yield json.dumps(obj, ensure_ascii=False)

    def completed(self, annotator_id: str) -> set[tuple[int, int]]:
        with self._lock:
            return {
                (task, phase)
                for task, ann, phase in self._latest
                if ann == annotator_id
            }


def next_task(
    pool: Sequence[Task],
    log: RecordLog,
    annotator_id: str,
    phase1_first: bool = True,
) -> tuple[Task, int] | None:
    """Lowest-id task the annotator has not completed; phase 1 queue drains
    before phase 2, and a task's phase 2 only unlocks after its phase 1."""
    done = log.completed(annotator_id)
    order = [1, 2] if phase1_first else [2, 1]
    for phase in order:
        for task in sorted(pool, key=lambda t: t.task_id):
            if (task.task_id, phase) in done:
                continue
            if phase == 2 and (task.task_id, 1) not in done:
                continue
            return task, phase
    return None


@dataclass(frozen=True)
class ScoreAggregate:
    per_annotator: dict[str, dict[str, float]]
    grand: dict[str, float]
    counts: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "annotators": self.per_annotator,
            "grand": self.grand,
            "counts": self.counts,
        }


def grand_mean(annotator_means: Sequence[float]) -> float:
    """Mean of the per-annotator means (not of the pooled records)."""
    return sum(annotator_means) / len(annotator_means)


def aggregate_scores(records: Iterable[AnnotationRecord]) -> ScoreAggregate:
    """Arithmetic means per (annotator, metric); grand means average the
    annotator means, not the pooled records.  Missing cells stay absent."""
    cells: dict[str, dict[str, list[int]]] = {}
    for rec in records:
        per = cells.setdefault(rec.annotator_id, {})
        if rec.phase == 1:
            per.setdefault("total", []).append(rec.overall)
        else:
            for m in PHASE2_METRICS:
                per.setdefault(m, []).append(getattr(rec, m))
    per_annotator = {
        ann: {metric: sum(vals) / len(vals) for metric, vals in metrics.items()}
        for ann, metrics in sorted(cells.items())
    }
    counts = {
        ann: {metric: len(vals) for metric, vals in metrics.items()}
        for ann, metrics in sorted(cells.items())
    }
    grand: dict[str, float] = {}
    for metric in (*PHASE2_METRICS, "total"):
        means = [m[metric] for m in per_annotator.values() if metric in m]
        if means:
            grand[metric] = grand_mean(means)
    return ScoreAggregate(per_annotator, grand, counts)


def binarize_labels(labels: Sequence[str]) -> list[bool]:
    """Agree labels (total or fair) become True, disagree False."""
    out = []
    for lab in labels:
        if lab not in AGREEMENT_LABELS:
            raise AnnotationError(f"unknown agreement label {lab!r}", "labels")
        out.append(lab != DISAGREE)
    return out


def cohen_kappa(a: Sequence[bool], b: Sequence[bool]) -> float:
    """Two-rater Cohen's kappa over binary labels."""
    if len(a) != len(b):
        raise AnnotationError(f"label lists differ in length: {len(a)} vs {len(b)}", "labels")
    if not a:
        raise AnnotationError("kappa needs at least one pair", "labels")
    n = len(a)
    p_o = sum(1 for x, y in zip(a, b) if x == y) / n
    pa = sum(a) / n
    pb = sum(b) / n
    p_e = pa * pb + (1 - pa) * (1 - pb)
    if p_e == 1.0:
        if p_o == 1.0:
            return 1.0
        raise AnnotationError("degenerate marginals: chance agreement is 1")
    return (p_o - p_e) / (1 - p_e)


def agreement_kappa(labels_a: Sequence[str], labels_b: Sequence[str]) -> float:
    return cohen_kappa(binarize_labels(labels_a), binarize_labels(labels_b))
