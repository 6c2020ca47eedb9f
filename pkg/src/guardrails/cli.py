"""Command-line interface: ingest | precompute | chart | focal-select | serve."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import date
from pathlib import Path
from typing import Any

from .chartspec import build_chart_spec, chart_spec_bytes
from .dataset import Direction, TimeSeriesDataset, load_dataset, save_dataset
from .errors import GuardrailError
from .evaluation import FocalCriteria, percentile_rank, select_focal_items
from .ingest import ColumnSchema, ingest_long_csv
from .peers import ExternalPeerProvider, PeerProviderConfig, StaticPeerProvider
from .precompute import precompute_guardrails
from .serialize import canonical_json_bytes
from .strategies import STRATEGY_KINDS, StrategySpec, compute_guardrails
from .svg import render_svg
from .transforms import (
    per_million,
    percent_change_from_start,
    resample_weekly,
    window_clip,
)
from .validate import ValidationPolicy, validate

log = logging.getLogger(__name__)


def _parse_transform_chain(spec: str) -> list[tuple[str, dict[str, Any]]]:
    steps = []
    for token in filter(None, (t.strip() for t in spec.split(","))):
        name, _, arg = token.partition(":")
        if name == "per_million":
            steps.append(("per_million", {}))
        elif name == "resample_weekly":
            steps.append(("resample_weekly", {"anchor": arg or "SUN"}))
        elif name in ("pct_change", "percent_change_from_start"):
            steps.append(("percent_change_from_start", {}))
        elif name == "window":
            start_s, sep, end_s = arg.partition("..")
            if not sep:
                raise GuardrailError(f"window transform needs START..END, got {arg!r}")
            steps.append(
                ("window_clip", {"start": date.fromisoformat(start_s), "end": date.fromisoformat(end_s)})
            )
        else:
            raise GuardrailError(
                f"unknown transform {name!r}; expected per_million, resample_weekly, "
                "pct_change, or window:START..END"
            )
    return steps


def _apply_transforms(ds: TimeSeriesDataset, chain: list[tuple[str, dict[str, Any]]]) -> TimeSeriesDataset:
    for name, kwargs in chain:
        if name == "per_million":
            ds = per_million(ds)
        elif name == "resample_weekly":
            ds = resample_weekly(ds, anchor=kwargs["anchor"])
        elif name == "percent_change_from_start":
            ds = percent_change_from_start(ds)
        elif name == "window_clip":
            ds = window_clip(ds, kwargs["start"], kwargs["end"])
    return ds


def _parse_direction(text: str) -> Direction:
    return Direction(text.replace("-", "_"))


def cmd_ingest(args: argparse.Namespace) -> int:
    schema = ColumnSchema(
        item_id=args.item_col,
        date=args.date_col,
        value=args.value_col,
        population=args.population_col,
        display_name=args.name_col,
    )
    dataset_id = args.dataset_id or Path(args.infile).name.split(".")[0]
    ds = ingest_long_csv(
        args.infile, schema, dataset_id=dataset_id, direction=_parse_direction(args.direction)
    )
    ds = _apply_transforms(ds, _parse_transform_chain(args.transform))
    policy = ValidationPolicy(max_missing_fraction=args.max_missing_fraction)
    ds, report = validate(ds, policy)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    digest = save_dataset(ds, out)
    report_path = Path(args.report) if args.report else out.with_suffix(".report.json")
    report_path.write_bytes(canonical_json_bytes(report.to_json_obj()))
    print(
        f"wrote {out} ({len(ds.items)} items x {len(ds.timesteps)} timesteps, "
        f"digest {digest[:12]}); report at {report_path}"
    )
    return 0


def _build_provider(config: dict[str, Any]) -> Any:
    provider_cfg = config.get("provider", {})
    if provider_cfg.get("mode") == "external":
        return ExternalPeerProvider(
            PeerProviderConfig(
                mode="external",
                endpoint=provider_cfg["endpoint"],
                prompt_template_id=provider_cfg.get("prompt_template_id", "covid"),
                timeout=float(provider_cfg.get("timeout", 30.0)),
            )
        )
    return StaticPeerProvider()


def cmd_precompute(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    kinds = (
        list(STRATEGY_KINDS)
        if args.strategies == "all"
        else [k.strip() for k in args.strategies.split(",") if k.strip()]
    )
    for kind in kinds:
        if kind not in STRATEGY_KINDS:
            raise GuardrailError(
                f"unknown strategy {kind!r}; valid kinds: {', '.join(STRATEGY_KINDS)}"
            )
    focals = list(ds.item_ids) if args.all else args.focal
    if not focals:
        raise GuardrailError("no focal items given; use --focal ID (repeatable) or --all")
    provider = _build_provider(args.config_data)
    index, outcome = precompute_guardrails(
        ds, focals, kinds, args.out, seed=args.seed, provider=provider
    )
    print(
        f"precomputed {len(outcome.written)} set(s), {len(outcome.skipped)} unchanged, "
        f"index at {Path(args.out) / 'index.json'}"
    )
    return 0


def cmd_chart(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    if args.focal not in ds:
        raise GuardrailError(f"unknown focal {args.focal!r} in dataset {ds.dataset_id!r}")
    if args.strategy == "none":
        guardrails = None
    else:
        spec = StrategySpec(kind=args.strategy, n=args.n, seed=args.seed)
        guardrails = compute_guardrails(
            ds, args.focal, spec, provider=_build_provider(args.config_data)
        )
    chart = build_chart_spec(ds, args.focal, guardrails, caption=args.caption)
    payload = render_svg(chart).encode() if args.format == "svg" else chart_spec_bytes(chart)
    if args.out:
        Path(args.out).write_bytes(payload)
        print(f"wrote {args.out}")
    else:
        sys.stdout.buffer.write(payload + b"\n")
    return 0


def cmd_focal_select(args: argparse.Namespace) -> int:
    ds = load_dataset(args.dataset)
    criteria = FocalCriteria.from_file(args.criteria)
    selected = select_focal_items(ds, criteria)
    payload = {
        "dataset_id": ds.dataset_id,
        "selected": selected,
        "ranks": {i: percentile_rank(ds, i) for i in selected},
        "target_percentile": criteria.target_percentile,
    }
    sys.stdout.buffer.write(canonical_json_bytes(payload) + b"\n")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    config = args.config_data
    data_dir = args.data_dir or config.get("data_dir")
    app = create_app(
        data_dir=data_dir,
        provider=_build_provider(config),
        app_dir=args.app_dir or config.get("app_dir"),
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level=args.log_level.lower())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="guardrails", description=__doc__)
    parser.add_argument("--config", help="JSON config file", default=None)
    parser.add_argument("--log-level", default="WARNING")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="CSV -> canonical dataset JSON")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", default=None)
    p.add_argument("--dataset-id", default=None)
    p.add_argument("--direction", default="higher_is_better")
    p.add_argument("--transform", default="", help="e.g. per_million,window:2020-04-01..2021-08-31")
    p.add_argument("--item-col", default="item_id")
    p.add_argument("--date-col", default="date")
    p.add_argument("--value-col", default="value")
    p.add_argument("--population-col", default=None)
    p.add_argument("--name-col", default=None)
    p.add_argument("--max-missing-fraction", type=float, default=0.05)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("precompute", help="compute guardrail sets for focal items")
    p.add_argument("--dataset", required=True)
    p.add_argument("--strategies", default="all")
    p.add_argument("--focal", action="append", default=[])
    p.add_argument("--all", action="store_true", help="every item as focal")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_precompute)

    p = sub.add_parser("chart", help="emit ChartSpec JSON or SVG")
    p.add_argument("--dataset", required=True)
    p.add_argument("--focal", required=True)
    p.add_argument("--strategy", default="none", help="strategy kind or 'none' for control")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "svg"), default="json")
    p.add_argument("--caption", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("focal-select", help="choose study-grade focal items")
    p.add_argument("--dataset", required=True)
    p.add_argument("--criteria", required=True, help="FocalCriteria JSON file")
    p.set_defaults(func=cmd_focal_select)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--data-dir", default=None)
    p.add_argument("--app-dir", default=None)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper())
    args.config_data = {}
    if args.config:
        args.config_data = json.loads(Path(args.config).read_text("utf-8"))
    try:
        return args.func(args)
    except GuardrailError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
