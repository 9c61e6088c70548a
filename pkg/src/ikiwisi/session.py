"""Event-sourced evaluation sessions.

A session is one evaluator looking at one model on one video segment:
picking objects (spies included), excluding frames, toggling cells the
model got wrong, and finally recording a rating.  Every mutation appends
exactly one event — state is a fold over the event list, so replaying a
log rebuilds the session bit for bit, and the log itself is the study's
interaction record.

Two hard rules keep the numbers honest: toggles override only what the
grid *displays*, never what enters a metric; and a recorded session is
frozen — the record's selection-level F1 is computed from the raw model
grid over exactly the selected objects and included frames.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Mapping, Optional, Sequence

from .domain import Dataset, ModelDescriptor
from .metrics import micro_f1
from .patterns import PatternReport, detect_patterns
from .providers import PredictionCacheFile, PredictionGrid, predict
from .ratings import ALLOWED_RATINGS, RatingRecord

OBJECT_CAP = 16
FRAME_CAP = 16

EVENT_KINDS = (
    "create",
    "add_object",
    "remove_object",
    "toggle",
    "frame_included",
    "rating",
    "record",
    "hover",
    "zoom",
)


class SessionError(ValueError):
    """Raised for invalid session commands or unusable event logs."""


@dataclass(frozen=True)
class SessionEvent:
    ts: str  # ISO-8601, UTC
    session_id: str
    seq: int
    kind: str
    payload: dict

    def as_dict(self) -> dict:
        return {
            "ts": self.ts,
            "session_id": self.session_id,
            "seq": self.seq,
            "kind": self.kind,
            "payload": self.payload,
        }


@dataclass(frozen=True)
class SelectedObject:
    name: str
    is_spy: bool


@dataclass(frozen=True)
class ModificationSummary:
    """Per-frame toggle counts — the change-summary bar graph."""

    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def as_dict(self) -> dict:
        return {"counts": {str(f): c for f, c in sorted(self.counts.items())}, "total": self.total}


@dataclass(frozen=True)
class DisplayGrid:
    """What the evaluator sees: predictions with their toggles applied."""

    objects: tuple[SelectedObject, ...]  # display order: regular objects, then spies
    frames: tuple[int, ...]  # included frames, ascending
    shown: dict[str, tuple[bool, ...]] = field(repr=False)  # aligned to `frames`
    toggled: dict[str, tuple[bool, ...]] = field(repr=False)
    color_mode: str = "default"

    def rows(self) -> dict[str, tuple[bool, ...]]:
        return {obj.name: self.shown[obj.name] for obj in self.objects}

    def as_dict(self) -> dict:
        return {
            "objects": [{"name": o.name, "is_spy": o.is_spy} for o in self.objects],
            "frames": list(self.frames),
            "rows": [
                {
                    "object": o.name,
                    "is_spy": o.is_spy,
                    "shown": list(self.shown[o.name]),
                    "toggled": list(self.toggled[o.name]),
                }
                for o in self.objects
            ],
            "color_mode": self.color_mode,
        }


def parse_object_name(raw_name: str) -> SelectedObject:
    """A leading '*' marks a spy; the remainder (trimmed) is the name."""
    raw = raw_name.strip()
    is_spy = raw.startswith("*")
    name = raw[1:].strip() if is_spy else raw
    if not name:
        raise SessionError(f"object name {raw_name!r} is empty")
    return SelectedObject(name=name, is_spy=is_spy)


class EvalSession:
    """Command side of the session: validates, appends, folds.

    ``sink`` (if given) is called with each event *before* it is applied,
    so persistence happens ahead of acknowledgement.
    """

    def __init__(
        self,
        model: ModelDescriptor,
        dataset: Dataset,
        *,
        caches: Mapping[str, PredictionCacheFile] | None = None,
        sink: Callable[[SessionEvent], None] | None = None,
        clock: Callable[[], datetime] | None = None,
    ):
        self._model = model
        self._dataset = dataset
        self._caches = dict(caches) if caches else {}
        self._sink = sink
        self._clock = clock or (lambda: datetime.now(timezone.utc))
        self.events: list[SessionEvent] = []
        # state (folded)
        self.session_id: str = ""
        self.model_id: str = ""
        self.segment_id: str = ""
        self.rater_id: str = ""
        self.color_mode: str = "default"
        self.created_ts: str = ""
        self.selected_objects: list[SelectedObject] = []
        self.included_frames: set[int] = set()
        self.toggles: set[tuple[str, int]] = set()
        self.rating: Optional[int] = None
        self.comment: Optional[str] = None
        self.status: str = "new"
        self.record: Optional[dict] = None

    # ------------------------------------------------------------------ setup

    @classmethod
    def create(
        cls,
        session_id: str,
        model: ModelDescriptor,
        segment_id: str,
        dataset: Dataset,
        *,
        rater_id: str = "anonymous",
        color_mode: str = "default",
        caches: Mapping[str, PredictionCacheFile] | None = None,
        sink: Callable[[SessionEvent], None] | None = None,
        clock: Callable[[], datetime] | None = None,
    ) -> "EvalSession":
        if color_mode not in ("default", "colorblind"):
            raise SessionError(f"unknown color mode {color_mode!r}")
        segment = dataset.segment(segment_id)  # raises for unknown segment
        session = cls(model, dataset, caches=caches, sink=sink, clock=clock)
        session._emit(
            "create",
            {
                "session_id": session_id,
                "model_id": model.model_id,
                "segment_id": segment.segment_id,
                "rater_id": rater_id,
                "color_mode": color_mode,
                "n_frames": segment.frame_count,
            },
            session_id=session_id,
        )
        return session

    @classmethod
    def replay(
        cls,
        events: Sequence[SessionEvent],
        model: ModelDescriptor,
        dataset: Dataset,
        *,
        caches: Mapping[str, PredictionCacheFile] | None = None,
        sink: Callable[[SessionEvent], None] | None = None,
    ) -> "EvalSession":
        """Rebuild a session by folding a previously validated event log."""
        if not events:
            raise SessionError("cannot replay an empty event log")
        if events[0].kind != "create":
            raise SessionError("event log must start with a create event")
        session = cls(model, dataset, caches=caches, sink=sink)
        for i, event in enumerate(events):
            if event.seq != i:
                raise SessionError(f"event seq gap: expected {i}, got {event.seq}")
            if event.kind not in EVENT_KINDS:
                raise SessionError(f"unknown event kind {event.kind!r}")
            session._fold(event)
            session.events.append(event)
        return session

    # ------------------------------------------------------------- event core

    def _emit(self, kind: str, payload: dict, *, session_id: str | None = None) -> SessionEvent:
        event = SessionEvent(
            ts=self._clock().isoformat(),
            session_id=session_id if session_id is not None else self.session_id,
            seq=len(self.events),
            kind=kind,
            payload=payload,
        )
        if self._sink is not None:
            self._sink(event)  # durable before applied
        self._fold(event)
        self.events.append(event)
        return event

    def _fold(self, event: SessionEvent) -> None:
        payload = event.payload
        kind = event.kind
        if kind == "create":
            self.session_id = payload["session_id"]
            self.model_id = payload["model_id"]
            self.segment_id = payload["segment_id"]
            self.rater_id = payload.get("rater_id", "anonymous")
            self.color_mode = payload.get("color_mode", "default")
            self.created_ts = event.ts
            n_frames = payload["n_frames"]
            self.included_frames = set(range(min(n_frames, FRAME_CAP)))
            self.status = "active"
        elif kind == "add_object":
            self.selected_objects.append(
                SelectedObject(name=payload["name"], is_spy=payload["is_spy"])
            )
        elif kind == "remove_object":
            name = payload["name"]
            self.selected_objects = [o for o in self.selected_objects if o.name != name]
            self.toggles = {(o, f) for o, f in self.toggles if o != name}
        elif kind == "toggle":
            cell = (payload["object"], payload["frame"])
            if cell in self.toggles:
                self.toggles.discard(cell)
            else:
                self.toggles.add(cell)
        elif kind == "frame_included":
            frame, included = payload["frame"], payload["included"]
            if included:
                self.included_frames.add(frame)
            else:
                self.included_frames.discard(frame)
                self.toggles = {(o, f) for o, f in self.toggles if f != frame}
        elif kind == "rating":
            self.rating = payload["value"]
        elif kind == "record":
            self.rating = payload["record"]["rating"]
            self.comment = payload.get("comment")
            self.record = payload["record"]
            self.status = "recorded"
        elif kind in ("hover", "zoom"):
            pass  # UI telemetry; no state effect
        else:  # pragma: no cover - callers validate kinds
            raise SessionError(f"unknown event kind {kind!r}")

    def _require_active(self) -> None:
        if self.status == "recorded":
            raise SessionError(f"session {self.session_id!r} is frozen (already recorded)")
        if self.status != "active":
            raise SessionError("session not initialized")

    # ------------------------------------------------------------- commands

    def add_object(self, raw_name: str) -> SelectedObject:
        self._require_active()
        parsed = parse_object_name(raw_name)
        if any(o.name == parsed.name for o in self.selected_objects):
            raise SessionError(f"object {parsed.name!r} already selected")
        if len(self.selected_objects) >= OBJECT_CAP:
            raise SessionError(f"cap exceeded: at most {OBJECT_CAP} objects may be selected")
        if not parsed.is_spy and parsed.name not in self._dataset.vocabulary:
            raise SessionError(f"object {parsed.name!r} is not in the vocabulary")
        self._emit(
            "add_object",
            {"raw_name": raw_name, "name": parsed.name, "is_spy": parsed.is_spy},
        )
        return parsed

    def remove_object(self, name: str) -> None:
        self._require_active()
        if not any(o.name == name for o in self.selected_objects):
            raise SessionError(f"object {name!r} is not selected")
        self._emit("remove_object", {"name": name})

    def toggle_cell(self, obj: str, frame: int) -> None:
        self._require_active()
        if not any(o.name == obj for o in self.selected_objects):
            raise SessionError(f"cannot toggle unselected object {obj!r}")
        if frame not in self.included_frames:
            raise SessionError(f"cannot toggle excluded frame {frame}")
        self._emit("toggle", {"object": obj, "frame": frame})

    def set_frame_included(self, frame: int, included: bool) -> None:
        self._require_active()
        n_frames = self._dataset.segment(self.segment_id).frame_count
        if not 0 <= frame < n_frames:
            raise SessionError(f"frame {frame} out of range 0..{n_frames - 1}")
        if included and frame not in self.included_frames:
            if len(self.included_frames) >= FRAME_CAP:
                raise SessionError(f"cap exceeded: at most {FRAME_CAP} frames may be included")
        if not included and frame in self.included_frames and len(self.included_frames) == 1:
            raise SessionError("cannot exclude the last included frame")
        self._emit("frame_included", {"frame": frame, "included": included})

    def set_rating(self, value: int) -> None:
        self._require_active()
        if value not in ALLOWED_RATINGS:
            raise SessionError(f"rating must be a multiple of 10 in 0..100, got {value}")
        self._emit("rating", {"value": value})

    def log_hover(self, obj: str, frame: int) -> None:
        self._require_active()
        self._emit("hover", {"object": obj, "frame": frame})

    def log_zoom(self, frame: int) -> None:
        self._require_active()
        self._emit("zoom", {"frame": frame})

    def record_and_reset(self, rating: int | None = None, comment: str | None = None) -> RatingRecord:
        """Finalize: compute selection-level F1, emit the record, freeze."""
        self._require_active()
        if rating is not None:
            self.set_rating(rating)
        if self.rating is None:
            raise SessionError("cannot record before a rating is set")
        if not self.selected_objects:
            raise SessionError("cannot record with an empty object selection")
        f1_star = self.selection_f1()
        now_ts = self._clock().isoformat()
        elapsed = (
            datetime.fromisoformat(now_ts) - datetime.fromisoformat(self.created_ts)
        ).total_seconds()
        record = {
            "rater_id": self.rater_id,
            "model_id": self.model_id,
            "segment_id": self.segment_id,
            "rating": self.rating,
            "f1_star": f1_star,
            "completion_seconds": elapsed,
        }
        self._emit("record", {"comment": comment, "record": record})
        return self.rating_record()

    # --------------------------------------------------------------- queries

    def rating_record(self) -> RatingRecord:
        if self.record is None:
            raise SessionError("session has no recorded rating")
        return RatingRecord(**self.record)

    @property
    def display_order(self) -> list[SelectedObject]:
        regular = [o for o in self.selected_objects if not o.is_spy]
        spies = [o for o in self.selected_objects if o.is_spy]
        return regular + spies

    def spy_names(self) -> frozenset[str]:
        return frozenset(o.name for o in self.selected_objects if o.is_spy)

    def prediction_grid(self) -> PredictionGrid:
        """Raw model output over the selection — toggles play no part here."""
        if not self.selected_objects:
            raise SessionError("no objects selected")
        segment = self._dataset.segment(self.segment_id)
        return predict(
            self._model,
            segment,
            [o.name for o in self.selected_objects],
            self._dataset.ground_truth[self.segment_id],
            spies=self.spy_names(),
            cache=self._caches.get(self.segment_id),
        )

    def selection_f1(self) -> float:
        grid = self.prediction_grid()
        gt = self._dataset.ground_truth[self.segment_id]
        names = [o.name for o in self.selected_objects]
        frames = sorted(self.included_frames)
        return micro_f1(grid, gt, names, frames).f1

    def render_display_grid(self, grid: PredictionGrid | None = None) -> DisplayGrid:
        if grid is None:
            grid = self.prediction_grid()
        order = self.display_order
        for obj in order:
            if obj.name not in grid.cells:
                raise SessionError(f"prediction grid does not cover object {obj.name!r}")
        frames = tuple(sorted(self.included_frames))
        shown: dict[str, tuple[bool, ...]] = {}
        toggled: dict[str, tuple[bool, ...]] = {}
        for obj in order:
            row = grid.cells[obj.name]
            flips = tuple((obj.name, f) in self.toggles for f in frames)
            shown[obj.name] = tuple(row[f] != flip for f, flip in zip(frames, flips))
            toggled[obj.name] = flips
        return DisplayGrid(
            objects=tuple(order),
            frames=frames,
            shown=shown,
            toggled=toggled,
            color_mode=self.color_mode,
        )

    def modification_summary(self) -> ModificationSummary:
        counts = {f: 0 for f in sorted(self.included_frames)}
        for _, frame in self.toggles:
            counts[frame] += 1
        return ModificationSummary(counts=counts)

    def pattern_report(self) -> PatternReport:
        return detect_patterns(self.render_display_grid().rows())

    def snapshot(self) -> dict:
        """Canonical state view; two sessions are equal iff snapshots are."""
        return {
            "session_id": self.session_id,
            "model_id": self.model_id,
            "segment_id": self.segment_id,
            "rater_id": self.rater_id,
            "color_mode": self.color_mode,
            "created_ts": self.created_ts,
            "selected_objects": [
                {"name": o.name, "is_spy": o.is_spy} for o in self.selected_objects
            ],
            "included_frames": sorted(self.included_frames),
            "toggles": sorted([list(t) for t in self.toggles]),
            "rating": self.rating,
            "comment": self.comment,
            "status": self.status,
            "record": self.record,
            "seq": len(self.events),
        }
