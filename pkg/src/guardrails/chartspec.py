"""Renderable chart descriptions: focal series plus guardrail context.

The style contract is fixed: the focal item gets a saturated color and a
thicker stroke; guardrail lines are gray and dashed so they recede without
disappearing.
"""
from __future__ import annotations

from typing import Any

from .dataset import TimeSeriesDataset
from .errors import GuardrailError
from .serialize import canonical_json_bytes
from .strategies import GuardrailSet

FOCAL_STYLE = {"color": "#d95f02", "stroke_width": 2.5, "dash": None}
CONTEXT_STYLE = {"color": "#9e9e9e", "stroke_width": 1.2, "dash": "5,3"}


def y_axis_label(ds: TimeSeriesDataset) -> str:
    kinds = [t.kind for t in ds.transform_log]
    if "percent_change_from_start" in kinds:
        return "% change from period start"
    if "per_million" in kinds:
        return "per million inhabitants"
    return "value"


def build_chart_spec(
    ds: TimeSeriesDataset,
    focal_id: str,
    guardrails: GuardrailSet | None,
    caption: str | None = None,
) -> dict[str, Any]:
    """ChartSpec JSON object; guardrails=None renders the focal-only control."""
    item = ds.get_item(focal_id)
    if guardrails is not None and guardrails.focal_id != focal_id:
        raise GuardrailError(
            f"guardrail set was computed for {guardrails.focal_id!r}, not {focal_id!r}"
        )
    spec: dict[str, Any] = {
        "dataset_id": ds.dataset_id,
        "focal": {
            "item_id": item.item_id,
            "display_name": item.display_name,
            "values": [float(v) for v in item.values],
            "color_role": "focal",
        },
        "guardrails": None if guardrails is None else guardrails.to_json_obj(),
        "style": {"focal": FOCAL_STYLE, "context": CONTEXT_STYLE},
        "axes": {
            "x": {"dates": [d.isoformat() for d in ds.timesteps]},
            "y": {"label": y_axis_label(ds)},
        },
        "caption": caption,
    }
    return spec


def chart_spec_bytes(spec: dict[str, Any]) -> bytes:
    return canonical_json_bytes(spec)
