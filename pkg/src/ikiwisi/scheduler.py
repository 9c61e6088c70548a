"""Latin-square counterbalancing for rating studies.

The canonical design crosses 5 model conditions with 5 video segments per
participant (25 trials).  Model order is constant within a participant —
one row of a master Latin square, so across any block of 5 consecutive
trials every model appears exactly once — while a second, per-participant
square schedules which segment each model meets in each block.  Together a
participant covers the full 5×5 cross product, and every 5 participants
cover every model order.  Participants beyond the square size replicate it
with a fresh seeded square (15 participants = 3 replications).

Model identities are blinded per participant by a seeded random relabeling
to "Model 1".."Model k".
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .seeding import KeyedStream


@dataclass(frozen=True)
class TrialPlan:
    participant_id: str
    trials: tuple[tuple[str, str], ...]  # (model_id, segment_id) in presentation order
    blinded_labels: dict[str, str] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "trials": [{"model_id": m, "segment_id": s} for m, s in self.trials],
            "blinded_labels": dict(self.blinded_labels),
        }


def cyclic_square(n: int) -> list[list[int]]:
    """The unshuffled base: row i is i, i+1, ... mod n."""
    if n < 1:
        raise ValueError("latin square size must be at least 1")
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def latin_square(n: int, seed: int = 0) -> list[list[int]]:
    """Seeded row- and column-shuffle of the cyclic square.

    Shuffling rows and columns preserves the once-per-row / once-per-column
    property, so any seed yields a valid square.
    """
    square = cyclic_square(n)
    stream = KeyedStream("latin-square", n, seed)
    rows = list(range(n))
    cols = list(range(n))
    stream.shuffle(rows)
    stream.shuffle(cols)
    return [[square[r][c] for c in cols] for r in rows]


def build_plans(
    participants: int,
    models: list[str],
    segments: list[str],
    seed: int = 0,
) -> list[TrialPlan]:
    """Trial plans for the canonical 5-model × 5-segment design."""
    if len(models) != 5:
        raise ValueError(f"canonical design requires exactly 5 models, got {len(models)}")
    if len(segments) != 5:
        raise ValueError(f"canonical design requires exactly 5 segments, got {len(segments)}")
    if participants < 1:
        raise ValueError("participants must be at least 1")
    if len(set(models)) != len(models):
        raise ValueError("model ids must be unique")
    if len(set(segments)) != len(segments):
        raise ValueError("segment ids must be unique")

    n = 5
    plans: list[TrialPlan] = []
    master: list[list[int]] = []
    for p in range(participants):
        replication = p // n
        if p % n == 0:
            master = latin_square(n, KeyedStream(seed, "model-order", replication).randint(0, 2**31))
        model_order = master[p % n]
        segment_square = latin_square(n, KeyedStream(seed, "segment-order", p).randint(0, 2**31))

        trials: list[tuple[str, str]] = []
        for block in range(n):
            for position in range(n):
                model = models[model_order[position]]
                segment = segments[segment_square[block][position]]
                trials.append((model, segment))

        labels = list(range(1, n + 1))
        KeyedStream(seed, "blind", p).shuffle(labels)
        blinded = {models[i]: f"Model {labels[i]}" for i in range(n)}

        plans.append(
            TrialPlan(
                participant_id=f"P{p + 1:02d}",
                trials=tuple(trials),
                blinded_labels=blinded,
            )
        )
    return plans
