"""Read-only HTTP service backing the explorer UI.

Serves dataset listings, series, guardrail sets, rank oracles, and chart
specs as canonical JSON — byte-identical to the CLI output for the same
request. Datasets are loaded into an immutable snapshot; a reload swaps the
snapshot reference atomically so requests never see a partial load.
"""
from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import __version__
from .chartspec import build_chart_spec, chart_spec_bytes
from .dataset import TimeSeriesDataset
from .errors import GuardrailError
from .evaluation import percentile_rank, performance_score
from .peers import StaticPeerProvider
from .precompute import PrecomputeIndex, lookup_bytes
from .serialize import canonical_json_bytes
from .strategies import STRATEGY_KINDS, StrategySpec, compute_guardrails
from .svg import render_svg

log = logging.getLogger(__name__)

PRECOMPUTE_DIR = "precomputed"


@dataclass(frozen=True)
class Snapshot:
    """Immutable view of everything the service can answer from."""

    data_dir: Path
    datasets: dict[str, TimeSeriesDataset] = field(default_factory=dict)
    digests: dict[str, str] = field(default_factory=dict)
    index: PrecomputeIndex = field(default_factory=PrecomputeIndex)


def load_snapshot(data_dir: str | Path) -> Snapshot:
    data_dir = Path(data_dir)
    datasets: dict[str, TimeSeriesDataset] = {}
    digests: dict[str, str] = {}
    for path in sorted(data_dir.glob("*.json")):
        try:
            obj = json.loads(path.read_text("utf-8"))
        except (ValueError, OSError):
            continue
        if not isinstance(obj, dict) or "dataset_id" not in obj or "timesteps" not in obj:
            continue  # validation reports etc. share the directory
        ds = TimeSeriesDataset.from_json_obj(obj)
        datasets[ds.dataset_id] = ds
        digests[ds.dataset_id] = ds.digest()
    index = PrecomputeIndex.load(data_dir / PRECOMPUTE_DIR)
    return Snapshot(data_dir=data_dir, datasets=datasets, digests=digests, index=index)


class ApiError(GuardrailError):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _json_response(obj_or_bytes: Any, headers: dict[str, str]) -> Response:
    data = obj_or_bytes if isinstance(obj_or_bytes, bytes) else canonical_json_bytes(obj_or_bytes)
    return Response(content=data, media_type="application/json", headers=headers)


def create_app(
    data_dir: str | Path | None = None,
    provider: Any = None,
    app_dir: str | Path | None = None,
) -> FastAPI:
    resolved_dir = Path(os.environ.get("GUARDRAIL_DATA_DIR") or data_dir or ".")
    app = FastAPI(title="guardrails", version=__version__)
    app.state.snapshot = load_snapshot(resolved_dir)
    app.state.provider = provider or StaticPeerProvider()

    def reload_snapshot() -> None:
        app.state.snapshot = load_snapshot(resolved_dir)  # atomic reference swap

    app.state.reload_snapshot = reload_snapshot

    def get_dataset(dataset_id: str) -> tuple[TimeSeriesDataset, dict[str, str]]:
        snapshot: Snapshot = app.state.snapshot
        ds = snapshot.datasets.get(dataset_id)
        if ds is None:
            raise ApiError(404, f"unknown dataset {dataset_id!r}")
        headers = {
            "X-Engine-Version": __version__,
            "X-Dataset-Digest": snapshot.digests[dataset_id],
        }
        return ds, headers

    @app.exception_handler(ApiError)
    async def handle_api_error(_: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"detail": str(exc)})

    @app.exception_handler(GuardrailError)
    async def handle_engine_error(_: Request, exc: GuardrailError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(Exception)
    async def handle_unexpected(_: Request, exc: Exception) -> JSONResponse:
        log.exception("unhandled error: %s", exc)
        return JSONResponse(status_code=500, content={"detail": "internal error"})

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.get("/datasets")
    def list_datasets() -> Response:
        snapshot: Snapshot = app.state.snapshot
        listing = [
            {
                "dataset_id": ds.dataset_id,
                "direction": ds.direction.value,
                "item_count": len(ds.items),
                "window": {
                    "start": ds.timesteps[0].isoformat(),
                    "end": ds.timesteps[-1].isoformat(),
                    "timesteps": len(ds.timesteps),
                },
                "digest": snapshot.digests[ds.dataset_id],
            }
            for ds in snapshot.datasets.values()
        ]
        return _json_response(listing, {"X-Engine-Version": __version__})

    @app.get("/datasets/{dataset_id}/items")
    def list_items(dataset_id: str) -> Response:
        ds, headers = get_dataset(dataset_id)
        items = [
            {"item_id": it.item_id, "display_name": it.display_name} for it in ds.items
        ]
        return _json_response(items, headers)

    @app.get("/datasets/{dataset_id}/series")
    def get_series(dataset_id: str, items: str = "") -> Response:
        ds, headers = get_dataset(dataset_id)
        if not items:
            raise ApiError(400, "missing required query parameter 'items'")
        requested = [i for i in items.split(",") if i]
        for item_id in requested:
            if item_id not in ds:
                raise ApiError(404, f"unknown item {item_id!r} in dataset {dataset_id!r}")
        payload = {
            "dataset_id": ds.dataset_id,
            "timesteps": [d.isoformat() for d in ds.timesteps],
            "series": [ds.get_item(i).to_json_obj() for i in requested],
        }
        return _json_response(payload, headers)

    def parse_spec(strategy: str, n: int | None, seed: int | None) -> StrategySpec:
        if strategy not in STRATEGY_KINDS:
            raise ApiError(
                400,
                f"unknown strategy {strategy!r}; valid kinds: {', '.join(STRATEGY_KINDS)}",
            )
        try:
            return StrategySpec(kind=strategy, n=n if n is not None else 5, seed=seed)
        except GuardrailError as exc:
            raise ApiError(400, str(exc)) from None

    def guardrail_bytes(
        ds: TimeSeriesDataset, focal: str, spec: StrategySpec
    ) -> bytes:
        snapshot: Snapshot = app.state.snapshot
        resolved = spec.resolved(ds, focal)
        stored = lookup_bytes(
            snapshot.index, snapshot.data_dir / PRECOMPUTE_DIR, ds.dataset_id, focal, resolved
        )
        if stored is not None:
            return stored
        return compute_guardrails(ds, focal, resolved, provider=app.state.provider).to_canonical_bytes()

    @app.get("/datasets/{dataset_id}/guardrails")
    def get_guardrails(
        dataset_id: str,
        focal: str,
        strategy: str,
        n: int | None = None,
        seed: int | None = None,
    ) -> Response:
        ds, headers = get_dataset(dataset_id)
        if focal not in ds:
            raise ApiError(404, f"unknown item {focal!r} in dataset {dataset_id!r}")
        spec = parse_spec(strategy, n, seed)
        return _json_response(guardrail_bytes(ds, focal, spec), headers)

    @app.get("/datasets/{dataset_id}/rank")
    def get_rank(dataset_id: str, item: str) -> Response:
        ds, headers = get_dataset(dataset_id)
        if item not in ds:
            raise ApiError(404, f"unknown item {item!r} in dataset {dataset_id!r}")
        payload = {
            "dataset_id": dataset_id,
            "item_id": item,
            "true_rank": percentile_rank(ds, item),
            "performance": performance_score(ds, item),
            "direction": ds.direction.value,
        }
        return _json_response(payload, headers)

    @app.get("/datasets/{dataset_id}/chart")
    def get_chart(
        dataset_id: str,
        focal: str,
        strategy: str = "none",
        n: int | None = None,
        seed: int | None = None,
        format: str = "json",
        caption: str | None = None,
    ) -> Response:
        ds, headers = get_dataset(dataset_id)
        if focal not in ds:
            raise ApiError(404, f"unknown item {focal!r} in dataset {dataset_id!r}")
        if strategy in ("none", ""):
            guardrails = None
        else:
            spec = parse_spec(strategy, n, seed)
            guardrails = _guardrail_set_from_json(json.loads(guardrail_bytes(ds, focal, spec)))
        spec_obj = build_chart_spec(ds, focal, guardrails, caption=caption)
        if format == "svg":
            return Response(
                content=render_svg(spec_obj), media_type="image/svg+xml", headers=headers
            )
        if format != "json":
            raise ApiError(400, f"unknown format {format!r}; expected json or svg")
        return _json_response(chart_spec_bytes(spec_obj), headers)

    if app_dir is None:
        app_dir = os.environ.get("GUARDRAIL_APP_DIR")
    if app_dir and Path(app_dir).is_dir():
        app.mount("/app", StaticFiles(directory=str(app_dir), html=True), name="app")

    return app


def _guardrail_set_from_json(obj: dict[str, Any]) -> Any:
    from .strategies import ContextSeries, GuardrailSet, StrategySpec

    return GuardrailSet(
        strategy=StrategySpec.from_json_obj(obj["strategy"]),
        focal_id=obj["focal_id"],
        context=tuple(
            ContextSeries(
                label=c["label"],
                values=c["values"],
                is_synthetic=c["is_synthetic"],
                percentile_tag=c.get("percentile_tag"),
                item_id=c.get("item_id"),
            )
            for c in obj["context"]
        ),
        provenance=tuple(obj["provenance"]),
    )
