"""The catalog: a loaded data directory plus live session state.

A data directory holds ``manifest.json`` (the dataset), ``models.json``
(the model descriptors), and ``caches/<model>/<segment>.json`` for cached
models; everything is validated at startup.  Session events persist to an
append-only JSONL log (one file per UTC day plus a small manifest) and are
fsync'd before a mutation is acknowledged, so any state the service ever
confirmed can be rebuilt by replaying the log — which is exactly what
startup does.
"""
from __future__ import annotations

import json
import os
import threading
import uuid
from pathlib import Path
from typing import Optional

from .analysis import build_report
from .domain import Dataset, ModelDescriptor, load_dataset
from .metrics import f1_global
from .providers import PredictionCacheFile, load_prediction_cache
from .ratings import RatingRecord
from .session import EvalSession, SessionEvent, SessionError

_EVENT_KIND_COMMANDS = {
    "add_object": lambda s, p: s.add_object(p["raw_name"]),
    "remove_object": lambda s, p: s.remove_object(p["name"]),
    "toggle": lambda s, p: s.toggle_cell(p["object"], p["frame"]),
    "frame_included": lambda s, p: s.set_frame_included(p["frame"], p["included"]),
    "rating": lambda s, p: s.set_rating(p["value"]),
    "hover": lambda s, p: s.log_hover(p["object"], p["frame"]),
    "zoom": lambda s, p: s.log_zoom(p["frame"]),
}


class CatalogError(ValueError):
    pass


class NotFoundError(CatalogError):
    """Unknown dataset/model/segment/session id."""


class EventLog:
    """Append-only JSONL event store, one file per UTC day."""

    MANIFEST = "manifest.json"

    def __init__(self, log_dir: str | Path):
        self._dir = Path(log_dir)
        self._dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _manifest_path(self) -> Path:
        return self._dir / self.MANIFEST

    def _files(self) -> list[str]:
        path = self._manifest_path()
        if path.exists():
            doc = json.loads(path.read_text(encoding="utf-8"))
            files = doc.get("files", [])
        else:
            files = []
        # Pick up any log files the manifest missed (e.g. a crash between
        # the log append and the manifest rewrite).
        known = set(files)
        extras = sorted(
            p.name for p in self._dir.glob("events-*.jsonl") if p.name not in known
        )
        return files + extras

    def _write_manifest(self, files: list[str]) -> None:
        tmp = self._manifest_path().with_suffix(".tmp")
        tmp.write_text(
            json.dumps({"files": files}, indent=2) + "\n", encoding="utf-8"
        )
        os.replace(tmp, self._manifest_path())

    def append(self, event: SessionEvent) -> None:
        """Durably append one event (flush + fsync before returning)."""
        day = event.ts[:10].replace("-", "")
        name = f"events-{day}.jsonl"
        path = self._dir / name
        with self._lock:
            is_new = not path.exists()
            with open(path, "a", encoding="utf-8") as fh:
                fh.write(
                    json.dumps(event.as_dict(), sort_keys=True, separators=(",", ":"))
                    + "\n"
                )
                fh.flush()
                os.fsync(fh.fileno())
            if is_new:
                files = [f for f in self._files() if f != name]
                self._write_manifest(sorted(files + [name]))

    def read_all(self) -> list[SessionEvent]:
        events = []
        for name in self._files():
            path = self._dir / name
            if not path.exists():
                continue
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    doc = json.loads(line)
                    events.append(
                        SessionEvent(
                            ts=doc["ts"],
                            session_id=doc["session_id"],
                            seq=doc["seq"],
                            kind=doc["kind"],
                            payload=doc["payload"],
                        )
                    )
        return events


def load_models(path: Path) -> dict[str, ModelDescriptor]:
    doc = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(doc, dict) or not isinstance(doc.get("models"), list):
        raise CatalogError(f"{path}: model catalog must be an object with a 'models' list")
    models: dict[str, ModelDescriptor] = {}
    for i, raw in enumerate(doc["models"]):
        if not isinstance(raw, dict) or not raw.get("model_id"):
            raise CatalogError(f"{path}: models[{i}] must be an object with a model_id")
        descriptor = ModelDescriptor(
            model_id=raw["model_id"],
            kind=raw.get("kind", ""),
            seed=int(raw.get("seed", 0)),
            flip_probability=float(raw.get("flip_probability", 0.0)),
            cache_ref=raw.get("cache_ref", ""),
        )
        if descriptor.model_id in models:
            raise CatalogError(f"{path}: duplicate model id {descriptor.model_id!r}")
        models[descriptor.model_id] = descriptor
    return models


class Catalog:
    """Loaded dataset + models + caches, plus sessions and recorded ratings."""

    def __init__(self, data_dir: str | Path, log_dir: str | Path | None = None):
        self.data_dir = Path(data_dir)
        manifest = self.data_dir / "manifest.json"
        if not manifest.exists():
            raise CatalogError(f"data directory {self.data_dir} has no manifest.json")
        self.dataset: Dataset = load_dataset(manifest.read_text(encoding="utf-8"))
        models_path = self.data_dir / "models.json"
        self.models: dict[str, ModelDescriptor] = (
            load_models(models_path) if models_path.exists() else {}
        )
        # segment → cache, preloaded and validated per cached model
        self.caches: dict[str, dict[str, PredictionCacheFile]] = {}
        for model in self.models.values():
            if model.kind != "cached":
                continue
            cache_dir = self.data_dir / model.cache_ref
            if not cache_dir.is_dir():
                raise CatalogError(
                    f"model {model.model_id!r}: cache_ref {model.cache_ref!r} "
                    f"is not a directory under {self.data_dir}"
                )
            per_segment: dict[str, PredictionCacheFile] = {}
            for path in sorted(cache_dir.glob("*.json")):
                cache = load_prediction_cache(path.read_text(encoding="utf-8"), self.dataset)
                per_segment[cache.segment_id] = cache
            self.caches[model.model_id] = per_segment

        self.log = EventLog(log_dir if log_dir is not None else self.data_dir / "logs")
        self.sessions: dict[str, EvalSession] = {}
        self.ratings: list[RatingRecord] = []
        self._lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        self._f1_cache: dict[str, float] = {}
        self._replay_log()

    # ------------------------------------------------------------- startup

    def _replay_log(self) -> None:
        by_session: dict[str, list[SessionEvent]] = {}
        order: list[str] = []
        for event in self.log.read_all():
            if event.session_id not in by_session:
                by_session[event.session_id] = []
                order.append(event.session_id)
            by_session[event.session_id].append(event)
        for session_id in order:
            events = sorted(by_session[session_id], key=lambda e: e.seq)
            create = events[0]
            model = self.models.get(create.payload.get("model_id", ""))
            if model is None:
                raise CatalogError(
                    f"session {session_id!r} references unknown model "
                    f"{create.payload.get('model_id')!r}"
                )
            session = EvalSession.replay(
                events,
                model,
                self.dataset,
                caches=self.caches.get(model.model_id),
            )
            session._sink = self.log.append  # future mutations keep appending
            self.sessions[session_id] = session
            self._session_locks[session_id] = threading.Lock()
            if session.record is not None:
                self.ratings.append(session.rating_record())

    # ------------------------------------------------------------- lookups

    def model(self, model_id: str) -> ModelDescriptor:
        try:
            return self.models[model_id]
        except KeyError:
            raise NotFoundError(f"unknown model {model_id!r}") from None

    def session(self, session_id: str) -> EvalSession:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise NotFoundError(f"unknown session {session_id!r}") from None

    def segment_detail(self, dataset_id: str, segment_id: str) -> dict:
        if dataset_id != self.dataset.dataset_id:
            raise NotFoundError(f"unknown dataset {dataset_id!r}")
        for seg in self.dataset.segments:
            if seg.segment_id == segment_id:
                return {
                    "segment_id": seg.segment_id,
                    "video_id": seg.video_id,
                    "n_frames": seg.frame_count,
                    "frames": [
                        {"index": fr.index, "image_ref": fr.image_ref} for fr in seg.frames
                    ],
                }
        raise NotFoundError(f"unknown segment {segment_id!r}")

    def f1_global_for(self, model_id: str) -> float:
        if model_id not in self._f1_cache:
            model = self.model(model_id)
            self._f1_cache[model_id] = f1_global(
                model, self.dataset, caches=self.caches.get(model_id)
            )
        return self._f1_cache[model_id]

    # ------------------------------------------------------------- sessions

    def create_session(
        self,
        model_id: str,
        segment_id: str,
        *,
        rater_id: str = "anonymous",
        color_mode: str = "default",
        session_id: Optional[str] = None,
    ) -> EvalSession:
        model = self.model(model_id)
        if not any(s.segment_id == segment_id for s in self.dataset.segments):
            raise NotFoundError(f"unknown segment {segment_id!r}")
        with self._lock:
            sid = session_id or f"s-{uuid.uuid4().hex[:12]}"
            if sid in self.sessions:
                raise CatalogError(f"session id {sid!r} already exists")
            session = EvalSession.create(
                sid,
                model,
                segment_id,
                self.dataset,
                rater_id=rater_id,
                color_mode=color_mode,
                caches=self.caches.get(model_id),
                sink=self.log.append,
            )
            self.sessions[sid] = session
            self._session_locks[sid] = threading.Lock()
            return session

    def apply_event(self, session_id: str, kind: str, payload: dict) -> EvalSession:
        """Apply one client event to a session (create/record have own paths)."""
        session = self.session(session_id)
        command = _EVENT_KIND_COMMANDS.get(kind)
        if command is None:
            raise SessionError(
                f"event kind {kind!r} cannot be posted; use the session and "
                f"record endpoints for create/record"
            )
        with self._session_locks[session_id]:
            try:
                command(session, payload)
            except KeyError as exc:
                raise SessionError(f"event payload missing field {exc}") from None
        return session

    def record(
        self, session_id: str, rating: int | None = None, comment: str | None = None
    ) -> RatingRecord:
        """Finalize a session; replaying the request returns the stored record."""
        session = self.session(session_id)
        with self._session_locks[session_id]:
            if session.status == "recorded":
                return session.rating_record()
            record = session.record_and_reset(rating=rating, comment=comment)
            with self._lock:
                self.ratings.append(record)
            return record

    # ------------------------------------------------------------- analysis

    def analysis_report(self) -> dict:
        kinds = {m.model_id: m.kind for m in self.models.values()}
        rated_models = {r.model_id for r in self.ratings}
        f1_by_model = {m: self.f1_global_for(m) for m in rated_models if m in self.models}
        return build_report(self.ratings, model_kinds=kinds, f1_by_model=f1_by_model)
