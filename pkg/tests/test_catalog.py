"""Catalog and event log: loading, durability, replay-on-startup."""
from __future__ import annotations

import json
from pathlib import Path

import pytest

from ikiwisi.catalog import Catalog, CatalogError, EventLog, NotFoundError
from ikiwisi.session import SessionError, SessionEvent


def event(seq, kind, payload, *, sid="s-log", day="2026-03-05"):
    return SessionEvent(
        ts=f"{day}T10:00:{seq:02d}+00:00",
        session_id=sid,
        seq=seq,
        kind=kind,
        payload=payload,
    )


# ------------------------------------------------------------------ event log


def test_event_log_round_trips(tmp_path):
    log = EventLog(tmp_path)
    events = [
        event(0, "create", {"session_id": "s-log", "n_frames": 3}),
        event(1, "rating", {"value": 50}),
    ]
    for e in events:
        log.append(e)
    assert log.read_all() == events

    path = tmp_path / "events-20260305.jsonl"
    assert path.exists()
    lines = path.read_text().splitlines()
    assert len(lines) == 2
    assert json.loads(lines[0])["kind"] == "create"

    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest == {"files": ["events-20260305.jsonl"]}


def test_event_log_splits_files_by_day(tmp_path):
    log = EventLog(tmp_path)
    log.append(event(0, "create", {}, day="2026-03-05"))
    log.append(event(1, "rating", {"value": 10}, day="2026-03-06"))
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["files"] == ["events-20260305.jsonl", "events-20260306.jsonl"]
    assert [e.seq for e in log.read_all()] == [0, 1]


def test_event_log_survives_a_missing_manifest(tmp_path):
    log = EventLog(tmp_path)
    log.append(event(0, "create", {}))
    log.append(event(1, "zoom", {"frame": 1}))
    (tmp_path / "manifest.json").unlink()
    # a crash between the log append and the manifest rewrite must not
    # lose acknowledged events: stray files are swept up by name
    assert [e.kind for e in EventLog(tmp_path).read_all()] == ["create", "zoom"]


def test_event_log_skips_blank_lines(tmp_path):
    log = EventLog(tmp_path)
    log.append(event(0, "create", {}))
    path = tmp_path / "events-20260305.jsonl"
    path.write_text(path.read_text() + "\n\n")
    assert len(log.read_all()) == 1


# ------------------------------------------------------------ catalog loading


def test_catalog_requires_a_manifest(tmp_path):
    with pytest.raises(CatalogError, match="manifest.json"):
        Catalog(tmp_path / "empty", log_dir=tmp_path / "logs")


def test_catalog_loads_the_fixture_directory(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    assert catalog.dataset.dataset_id == "fixture-s7"
    assert set(catalog.models) == {
        "gt",
        "random",
        "drift-low",
        "drift-high",
        "snapshot-a",
    }
    assert set(catalog.caches) == {"snapshot-a"}
    assert len(catalog.caches["snapshot-a"]) == 31
    assert catalog.sessions == {} and catalog.ratings == []


def test_catalog_lookups_raise_not_found(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    with pytest.raises(NotFoundError, match="unknown model"):
        catalog.model("ghost")
    with pytest.raises(NotFoundError, match="unknown session"):
        catalog.session("nope")
    with pytest.raises(NotFoundError, match="unknown dataset"):
        catalog.segment_detail("other", "v01-s1")
    with pytest.raises(NotFoundError, match="unknown segment"):
        catalog.segment_detail("fixture-s7", "v99-s9")


def test_segment_detail_shape(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    detail = catalog.segment_detail("fixture-s7", "v01-s2")
    assert detail["segment_id"] == "v01-s2"
    assert detail["video_id"] == "video_01"
    assert detail["n_frames"] == 3
    assert [f["index"] for f in detail["frames"]] == [0, 1, 2]
    assert all(f["image_ref"] for f in detail["frames"])


def test_f1_global_for_uses_caches(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    assert catalog.f1_global_for("gt") == 1.0
    snapshot = catalog.f1_global_for("snapshot-a")
    assert 0.8 < snapshot < 0.9
    assert catalog.f1_global_for("snapshot-a") == snapshot  # memoized


def test_cache_ref_must_be_a_directory(data_dir, tmp_path):
    broken = tmp_path / "broken"
    broken.mkdir()
    (broken / "manifest.json").write_text(
        (Path(data_dir) / "manifest.json").read_text()
    )
    (broken / "models.json").write_text(
        json.dumps(
            {"models": [{"model_id": "c", "kind": "cached", "cache_ref": "missing"}]}
        )
    )
    with pytest.raises(CatalogError, match="cache_ref"):
        Catalog(broken, log_dir=tmp_path / "logs")


# ------------------------------------------------------------ session routing


def test_create_session_and_ids(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    session = catalog.create_session("gt", "v01-s2", rater_id="r1")
    assert session.session_id.startswith("s-")
    assert catalog.session(session.session_id) is session

    named = catalog.create_session("gt", "v01-s2", session_id="mine")
    assert named.session_id == "mine"
    with pytest.raises(CatalogError, match="already exists"):
        catalog.create_session("gt", "v01-s2", session_id="mine")
    with pytest.raises(NotFoundError):
        catalog.create_session("ghost", "v01-s2")
    with pytest.raises(NotFoundError):
        catalog.create_session("gt", "v99-s1")


def test_apply_event_dispatch(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    sid = catalog.create_session("gt", "v01-s2").session_id
    catalog.apply_event(sid, "add_object", {"raw_name": "Car"})
    catalog.apply_event(sid, "add_object", {"raw_name": "*Turnstile"})
    catalog.apply_event(sid, "toggle", {"object": "Car", "frame": 1})
    catalog.apply_event(sid, "frame_included", {"frame": 2, "included": False})
    catalog.apply_event(sid, "rating", {"value": 60})
    catalog.apply_event(sid, "hover", {"object": "Car", "frame": 0})
    catalog.apply_event(sid, "zoom", {"frame": 0})
    session = catalog.session(sid)
    assert [o.name for o in session.selected_objects] == ["Car", "Turnstile"]
    assert session.toggles == {("Car", 1)}
    assert session.included_frames == {0, 1}
    assert session.rating == 60

    with pytest.raises(SessionError, match="cannot be posted"):
        catalog.apply_event(sid, "create", {})
    with pytest.raises(SessionError, match="cannot be posted"):
        catalog.apply_event(sid, "record", {})
    with pytest.raises(SessionError, match="missing field"):
        catalog.apply_event(sid, "toggle", {"object": "Car"})
    # command errors pass through untouched
    with pytest.raises(SessionError, match="not in the vocabulary"):
        catalog.apply_event(sid, "add_object", {"raw_name": "Ghost Ship"})


def test_record_is_idempotent(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    sid = catalog.create_session("gt", "v01-s2", rater_id="r2").session_id
    catalog.apply_event(sid, "add_object", {"raw_name": "Car"})
    first = catalog.record(sid, rating=80, comment="fine")
    assert first.rating == 80 and first.f1_star == 1.0
    assert catalog.ratings == [first]

    again = catalog.record(sid, rating=10, comment="changed my mind")
    assert again == first  # replays return the stored record
    assert catalog.ratings == [first]  # and nothing is double-counted


# --------------------------------------------------------- replay on startup


def scripted(catalog) -> str:
    sid = catalog.create_session("snapshot-a", "v01-s2", rater_id="r7").session_id
    catalog.apply_event(sid, "add_object", {"raw_name": "Car"})
    catalog.apply_event(sid, "add_object", {"raw_name": "Tree"})
    catalog.apply_event(sid, "add_object", {"raw_name": "*Snow"})
    catalog.apply_event(sid, "toggle", {"object": "Tree", "frame": 0})
    catalog.apply_event(sid, "frame_included", {"frame": 1, "included": False})
    catalog.record(sid, rating=70)
    return sid


def test_startup_replay_rebuilds_sessions(data_dir, tmp_path):
    logs = tmp_path / "logs"
    first = Catalog(data_dir, log_dir=logs)
    sid = scripted(first)
    open_sid = first.create_session("gt", "v02-s1", session_id="still-open").session_id
    first.apply_event(open_sid, "add_object", {"raw_name": "Bench"})

    second = Catalog(data_dir, log_dir=logs)
    assert set(second.sessions) == {sid, "still-open"}
    assert second.session(sid).snapshot() == first.session(sid).snapshot()
    assert second.session(open_sid).snapshot() == first.session(open_sid).snapshot()
    assert second.ratings == first.ratings

    # the rebuilt open session is live: mutations keep appending to the log
    second.apply_event(open_sid, "rating", {"value": 40})
    third = Catalog(data_dir, log_dir=logs)
    assert third.session(open_sid).rating == 40


def test_startup_replay_is_idempotent_per_start(data_dir, tmp_path):
    logs = tmp_path / "logs"
    first = Catalog(data_dir, log_dir=logs)
    scripted(first)
    n_events = len(EventLog(logs).read_all())
    Catalog(data_dir, log_dir=logs)  # replay must not write anything new
    assert len(EventLog(logs).read_all()) == n_events


def test_replay_rejects_logs_for_unknown_models(data_dir, tmp_path):
    logs = tmp_path / "logs"
    log = EventLog(logs)
    log.append(
        event(
            0,
            "create",
            {
                "session_id": "s-log",
                "model_id": "ghost",
                "segment_id": "v01-s2",
                "rater_id": "x",
                "color_mode": "default",
                "n_frames": 3,
            },
        )
    )
    with pytest.raises(CatalogError, match="unknown model"):
        Catalog(data_dir, log_dir=logs)


def test_recorded_sessions_survive_restart_frozen(data_dir, tmp_path):
    logs = tmp_path / "logs"
    first = Catalog(data_dir, log_dir=logs)
    sid = scripted(first)
    second = Catalog(data_dir, log_dir=logs)
    assert second.session(sid).status == "recorded"
    with pytest.raises(SessionError, match="frozen"):
        second.apply_event(sid, "rating", {"value": 0})
    # but the idempotent record path still answers
    assert second.record(sid) == first.session(sid).rating_record()


# ------------------------------------------------------------------- analysis


def test_analysis_report_uses_catalog_f1(data_dir, tmp_path):
    catalog = Catalog(data_dir, log_dir=tmp_path / "logs")
    for model_id, rating in (("gt", 90), ("snapshot-a", 60)):
        sid = catalog.create_session(model_id, "v01-s2", rater_id="r1").session_id
        catalog.apply_event(sid, "add_object", {"raw_name": "Car"})
        catalog.apply_event(sid, "add_object", {"raw_name": "Bench"})
        catalog.record(sid, rating=rating)
    report = catalog.analysis_report()
    assert report["n_records"] == 2
    assert report["models"] == ["gt", "snapshot-a"]
    trend = report["rating_vs_f1"]
    assert trend["x_basis"] == "f1_global"
    assert trend["points"]["gt"][0] == 1.0
