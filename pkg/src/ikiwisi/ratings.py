"""The rating record: one evaluator's verdict on one (model, segment) trial.

This is the row format every downstream consumer shares — session recording
emits them, the simulated-rater harness writes them in bulk, and the
analysis pipeline ingests them.  CSV columns:

    rater_id,model_id,segment_id,rating,f1_star,completion_seconds

``completion_seconds`` may be blank.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import IO, Iterable, Union

CSV_HEADER = ["rater_id", "model_id", "segment_id", "rating", "f1_star", "completion_seconds"]

ALLOWED_RATINGS = tuple(range(0, 101, 10))


@dataclass(frozen=True)
class RatingRecord:
    rater_id: str
    model_id: str
    segment_id: str
    rating: int
    f1_star: float
    completion_seconds: float | None = None

    def __post_init__(self):
        if self.rating not in ALLOWED_RATINGS:
            raise ValueError(f"rating must be a multiple of 10 in 0..100, got {self.rating}")
        if not 0.0 <= self.f1_star <= 1.0:
            raise ValueError(f"f1_star must lie in [0, 1], got {self.f1_star}")


def write_ratings_csv(records: Iterable[RatingRecord], stream: IO[str]) -> None:
    writer = csv.writer(stream)
    writer.writerow(CSV_HEADER)
    for r in records:
        seconds = "" if r.completion_seconds is None else repr(r.completion_seconds)
        writer.writerow([r.rater_id, r.model_id, r.segment_id, r.rating, repr(r.f1_star), seconds])


def ratings_to_csv(records: Iterable[RatingRecord]) -> str:
    buf = io.StringIO()
    write_ratings_csv(records, buf)
    return buf.getvalue()


def read_ratings_csv(source: Union[str, bytes, IO]) -> list[RatingRecord]:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    reader = csv.reader(io.StringIO(source))
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("ratings CSV is empty") from None
    if header != CSV_HEADER:
        raise ValueError(f"ratings CSV header must be {','.join(CSV_HEADER)!r}, got {','.join(header)!r}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"line {lineno}: expected {len(CSV_HEADER)} columns, got {len(row)}")
        rater_id, model_id, segment_id, rating, f1_star, seconds = row
        try:
            records.append(
                RatingRecord(
                    rater_id=rater_id,
                    model_id=model_id,
                    segment_id=segment_id,
                    rating=int(rating),
                    f1_star=float(f1_star),
                    completion_seconds=float(seconds) if seconds else None,
                )
            )
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return records
