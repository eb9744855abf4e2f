"""HTTP JSON API serving the two-phase scoring workflow."""

from __future__ import annotations

from typing import Sequence

from fastapi import FastAPI, HTTPException, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import StreamingResponse
from pydantic import BaseModel

from .annotation import (
    AnnotationError,
    AnnotationRecord,
    RecordLog,
    Task,
    aggregate_scores,
    agreement_kappa,
    next_task,
)


class ScoreBody(BaseModel):
    task_id: int
    annotator_id: str
    phase: int
    overall: int | None = None
    colloquialism: int | None = None
    intelligibility: int | None = None
    coherence: int | None = None


class KappaBody(BaseModel):
    labels_a: list[str]
    labels_b: list[str]


def create_app(pool: Sequence[Task], log: RecordLog, annotators: Sequence[str]) -> FastAPI:
    app = FastAPI(title="hokmix annotation service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    known = set(annotators)

    @app.get("/api/tasks/next")
    def get_next(annotator: str):
        if annotator not in known:
            raise HTTPException(status_code=404, detail=f"unregistered annotator {annotator!r}")
        nxt = next_task(pool, log, annotator)
        if nxt is None:
            return Response(status_code=204)
        task, phase = nxt
        return {"task_id": task.task_id, "phase": phase, "sentence": task.sentence}

    @app.post("/api/scores", status_code=201)
    def post_score(body: ScoreBody):
        if body.annotator_id not in known:
            raise HTTPException(status_code=404, detail=f"unregistered annotator {body.annotator_id!r}")
        if not any(t.task_id == body.task_id for t in pool):
            raise HTTPException(status_code=404, detail=f"unknown task {body.task_id}")
        rec = AnnotationRecord(
            task_id=body.task_id,
            annotator_id=body.annotator_id,
            phase=body.phase,
            overall=body.overall,
            colloquialism=body.colloquialism,
            intelligibility=body.intelligibility,
            coherence=body.coherence,
        )
        try:
            log.append(rec)
        except AnnotationError as err:
            raise HTTPException(status_code=422, detail={"field": err.field, "message": str(err)})
        return {"accepted": True}

    @app.get("/api/stats")
    def get_stats():
        agg = aggregate_scores(log.records())
        return {**agg.to_json_obj(), "pool_size": len(pool)}

    @app.get("/api/export")
    def get_export():
        def lines():
            for line in log.export_lines():
                yield line + "\n"

        return StreamingResponse(lines(), media_type="application/jsonl")

    @app.post("/api/kappa")
    def post_kappa(body: KappaBody):
        try:
            return {"kappa": agreement_kappa(body.labels_a, body.labels_b)}
        except AnnotationError as err:
            raise HTTPException(status_code=422, detail={"field": err.field, "message": str(err)})

    return app
