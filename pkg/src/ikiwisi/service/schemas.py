"""Request/response bodies for the HTTP API."""
from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class ModelInfo(BaseModel):
    model_id: str
    kind: str
    seed: int = 0
    flip_probability: float = 0.0
    cache_ref: str = ""

    model_config = {"protected_namespaces": ()}


class DatasetInfo(BaseModel):
    dataset_id: str
    n_objects: int
    n_segments: int
    vocabulary: list[str]
    segments: list[str]


class KeyframeInfo(BaseModel):
    index: int
    image_ref: str


class SegmentDetail(BaseModel):
    segment_id: str
    video_id: str
    n_frames: int
    frames: list[KeyframeInfo]


class CreateSessionRequest(BaseModel):
    model_id: str
    segment_id: str
    rater_id: str = "anonymous"
    color_mode: str = "default"
    session_id: Optional[str] = None

    model_config = {"protected_namespaces": ()}


class SessionEventRequest(BaseModel):
    kind: str
    payload: dict[str, Any] = Field(default_factory=dict)


class RecordRequest(BaseModel):
    rating: Optional[int] = None
    comment: Optional[str] = None


class RatingRecordResponse(BaseModel):
    rater_id: str
    model_id: str
    segment_id: str
    rating: int
    f1_star: float
    completion_seconds: Optional[float] = None

    model_config = {"protected_namespaces": ()}


class EvalRequest(BaseModel):
    model_id: str
    segment_id: str
    objects: list[str]
    frames: Optional[list[int]] = None
    seed: Optional[int] = None

    model_config = {"protected_namespaces": ()}
