"""Command-line entry points.

Five commands, all thin: ``serve`` starts the HTTP service, ``eval`` scores
one selection (locally or against a running server), ``analyze`` turns a
ratings CSV into the analysis report, ``simulate`` runs the synthetic-rater
experiment, and ``gen-fixture`` writes a complete seeded data directory.
``--data-dir`` defaults to the IKIWISI_DATA_DIR environment variable.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import fields as dataclass_fields
from pathlib import Path

from .analysis import build_report
from .catalog import Catalog
from .domain import ModelDescriptor
from .fixtures import DEFAULT_SEED, write_fixture
from .ratings import read_ratings_csv, write_ratings_csv
from .simrater import RaterPolicy, run_experiment

ENV_DATA_DIR = "IKIWISI_DATA_DIR"


def parse_frames(spec: str) -> list[int]:
    """Frame lists like "0-5", "0,2,9", or "0-3,7,12-14"."""
    frames: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo_text, hi_text = part.split("-", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"bad frame range {part!r}")
            frames.extend(range(lo, hi + 1))
        else:
            frames.append(int(part))
    seen = set()
    out = []
    for f in frames:
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def _resolve_data_dir(value: str | None) -> Path:
    path = value or os.environ.get(ENV_DATA_DIR)
    if not path:
        raise SystemExit(
            f"no data directory given; pass --data-dir or set {ENV_DATA_DIR}"
        )
    return Path(path)


def _render_eval_text(result: dict) -> str:
    objects = [
        ("*" + name) if name in set(result["spies"]) else name
        for name in result["objects"]
    ]
    summary = result["summary"]
    patterns = result["patterns"]
    lines = [
        f"model      {result['model_id']}",
        f"segment    {result['segment_id']}",
        f"objects    {', '.join(objects)}",
        f"frames     {len(result['frames'])} included",
        "counts     tp={tp} fp={fp} fn={fn} tn={tn}".format(**summary),
        f"precision  {summary['precision']:.6f}",
        f"recall     {summary['recall']:.6f}",
        f"f1         {summary['f1']:.6f}",
        "patterns   uni-color={u} outliers={o} islands={i} uncategorized={x} checkered={c:.6f}".format(
            u=len(patterns["uni_color_rows"]),
            o=len(patterns["single_outliers"]),
            i=len(patterns["outlier_islands"]),
            x=len(patterns["uncategorized_runs"]),
            c=patterns["checkered_score"],
        ),
    ]
    for warning in result.get("warnings", []):
        lines.append(f"warning    {warning}")
    return "\n".join(lines)


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import create_app

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    data_dir = _resolve_data_dir(args.data_dir)
    ui_dir = args.ui_dir
    if ui_dir is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "public"
        ui_dir = bundled if bundled.is_dir() else None
    app = create_app(data_dir, log_dir=args.log_dir, ui_dir=ui_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    objects = [o for o in (s.strip() for s in args.objects.split(",")) if o]
    frames = parse_frames(args.frames) if args.frames else None

    if args.server:
        import httpx

        response = httpx.post(
            args.server.rstrip("/") + "/api/eval",
            json={
                "model_id": args.model,
                "segment_id": args.segment,
                "objects": objects,
                "frames": frames,
                "seed": args.seed,
            },
            timeout=30.0,
        )
        if response.status_code != 200:
            print(f"server error {response.status_code}: {response.text}", file=sys.stderr)
            return 2
        result = response.json()
    else:
        from .service.app import evaluate_selection

        catalog = Catalog(_resolve_data_dir(args.data_dir))
        result = evaluate_selection(
            catalog, args.model, args.segment, objects, frames=frames, seed=args.seed
        )

    if args.json:
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        print(_render_eval_text(result))
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    records = read_ratings_csv(Path(args.csv).read_text(encoding="utf-8"))
    model_kinds = None
    f1_by_model = None
    data_dir = args.data_dir or os.environ.get(ENV_DATA_DIR)
    if data_dir:
        catalog = Catalog(Path(data_dir))
        model_kinds = {m.model_id: m.kind for m in catalog.models.values()}
        f1_by_model = {
            model_id: catalog.f1_global_for(model_id)
            for model_id in {r.model_id for r in records}
            if model_id in catalog.models
        }
    report = build_report(records, model_kinds=model_kinds, f1_by_model=f1_by_model)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(f"wrote report to {args.out}")
    else:
        print(text)
    return 0


def _policy_from_config(config: dict) -> RaterPolicy:
    policy_doc = config.get("policy", {})
    known = {f.name for f in dataclass_fields(RaterPolicy)}
    unknown = set(policy_doc) - known
    if unknown:
        raise SystemExit(f"unknown policy fields: {', '.join(sorted(unknown))}")
    return RaterPolicy(**policy_doc)


def cmd_simulate(args: argparse.Namespace) -> int:
    config = json.loads(Path(args.config).read_text(encoding="utf-8"))
    catalog = Catalog(_resolve_data_dir(args.data_dir))

    models: list[ModelDescriptor] = []
    for entry in config.get("models", []):
        if isinstance(entry, str):
            models.append(catalog.model(entry))
        else:
            models.append(
                ModelDescriptor(
                    model_id=entry["model_id"],
                    kind=entry["kind"],
                    seed=int(entry.get("seed", 0)),
                    flip_probability=float(entry.get("flip_probability", 0.0)),
                    cache_ref=entry.get("cache_ref", ""),
                )
            )
    if not models:
        raise SystemExit("config must list at least one model")

    segments = config.get("segments") or [
        s.segment_id for s in catalog.dataset.segments[:5]
    ]
    raters = int(config.get("raters", 15))
    seed = int(config.get("seed", 0))
    policy = _policy_from_config(config)

    result = run_experiment(
        catalog.dataset,
        models,
        segments,
        raters,
        policy,
        seed,
        caches=catalog.caches,
    )

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_ratings_csv(result.records, fh)
        print(json.dumps(result.summary, indent=2, sort_keys=True))
    else:
        sys.stdout.write(result.csv())
        print(json.dumps(result.summary, indent=2, sort_keys=True), file=sys.stderr)
    return 0


def cmd_gen_fixture(args: argparse.Namespace) -> int:
    bundle = write_fixture(args.out, seed=args.seed)
    print(json.dumps(bundle.info, indent=2, sort_keys=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ikiwisi",
        description="Binary-heatmap evaluation of vision-language predictions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--data-dir", help=f"data directory (default ${ENV_DATA_DIR})")
    p.add_argument("--log-dir", help="session log directory (default <data-dir>/logs)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--ui-dir", help="static UI directory (default: bundled frontend)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("eval", help="score one model/segment/selection")
    p.add_argument("--model", required=True)
    p.add_argument("--segment", required=True)
    p.add_argument("--objects", required=True, help="comma-separated; prefix spies with *")
    p.add_argument("--frames", help="frame list like 0-5 or 0,3,7-9 (default: all)")
    p.add_argument("--seed", type=int, help="override the model seed (stochastic kinds)")
    p.add_argument("--json", action="store_true", help="print the full JSON result")
    p.add_argument("--data-dir", help=f"data directory (default ${ENV_DATA_DIR})")
    p.add_argument("--server", help="evaluate against a running service URL instead")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("analyze", help="analysis report from a ratings CSV")
    p.add_argument("csv", help="ratings CSV path")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--data-dir", help="optional data directory for model kinds and dataset-level F1")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="run the synthetic-rater experiment")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--out", help="write the ratings CSV here (default stdout)")
    p.add_argument("--data-dir", help=f"data directory (default ${ENV_DATA_DIR})")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen-fixture", help="write a seeded fixture data directory")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen_fixture)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
