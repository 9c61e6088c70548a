"""Shared fixtures: hand-built tiny datasets and the seeded demo bundle."""
from __future__ import annotations

import pytest

from ikiwisi.domain import Dataset, GroundTruth, Keyframe, Segment, Vocabulary
from ikiwisi.fixtures import generate_fixture, write_fixture


def build_dataset(
    segments: dict[str, dict[str, list[bool]]],
    vocabulary: tuple[str, ...] | None = None,
    dataset_id: str = "tiny",
) -> Dataset:
    """Dataset straight from literal label rows: segment → object → bools."""
    if vocabulary is None:
        names: list[str] = []
        for rows in segments.values():
            for obj in rows:
                if obj not in names:
                    names.append(obj)
        vocabulary = tuple(names)
    seg_objs = []
    ground_truth = {}
    for seg_id, rows in segments.items():
        n_frames = len(next(iter(rows.values())))
        seg_objs.append(
            Segment(
                segment_id=seg_id,
                video_id=f"vid-{seg_id}",
                frames=tuple(Keyframe(index=i) for i in range(n_frames)),
            )
        )
        ground_truth[seg_id] = GroundTruth(
            segment_id=seg_id, labels={obj: tuple(row) for obj, row in rows.items()}
        )
    return Dataset(
        dataset_id=dataset_id,
        vocabulary=Vocabulary(vocabulary),
        segments=tuple(seg_objs),
        ground_truth=ground_truth,
    )


@pytest.fixture(scope="session")
def bundle():
    """The canonical seed-7 bundle, generated once per test run."""
    return generate_fixture(seed=7)


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """A full on-disk data directory written from the seed-7 bundle."""
    out = tmp_path_factory.mktemp("fixture-data")
    write_fixture(out, seed=7)
    return out


# --- acceptance reporting ----------------------------------------------------
# test_acceptance.py records one line per criterion; the summary hook prints
# them at the end of the run so the verdicts are visible without -s.

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
