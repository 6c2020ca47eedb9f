"""Minimal static SVG rendering of a ChartSpec (paths + text labels).

The interactive explorer owns rich rendering; this export exists so charts can
be produced headlessly. 720x405 viewbox, focal stroke on top and thicker,
context gray and dashed per the style contract.
"""
from __future__ import annotations

from typing import Any

WIDTH, HEIGHT = 720, 405
MARGIN = {"left": 56, "right": 110, "top": 16, "bottom": 34}
LABEL_GAP = 12  # minimum vertical separation between end-of-line labels


def _scales(spec: dict[str, Any]) -> tuple[Any, Any, float, float]:
    n = len(spec["axes"]["x"]["dates"])
    series = [spec["focal"]["values"]]
    if spec["guardrails"]:
        series += [c["values"] for c in spec["guardrails"]["context"]]
    lo = min(min(s) for s in series)
    hi = max(max(s) for s in series)
    if hi == lo:
        hi = lo + 1.0
    pad = 0.05 * (hi - lo)
    lo, hi = lo - pad, hi + pad

    x0, x1 = MARGIN["left"], WIDTH - MARGIN["right"]
    y0, y1 = HEIGHT - MARGIN["bottom"], MARGIN["top"]

    def sx(i: int) -> float:
        return x0 if n == 1 else x0 + (x1 - x0) * i / (n - 1)

    def sy(v: float) -> float:
        return y0 + (y1 - y0) * (v - lo) / (hi - lo)

    return sx, sy, lo, hi


def _path(values: list[float], sx: Any, sy: Any) -> str:
    points = [f"{sx(i):.2f},{sy(v):.2f}" for i, v in enumerate(values)]
    return "M" + " L".join(points)


def _nudge_labels(entries: list[dict[str, Any]]) -> None:
    entries.sort(key=lambda e: e["y"])
    for prev, cur in zip(entries, entries[1:]):
        if cur["y"] - prev["y"] < LABEL_GAP:
            cur["y"] = prev["y"] + LABEL_GAP


def render_svg(spec: dict[str, Any]) -> str:
    sx, sy, lo, hi = _scales(spec)
    style = spec["style"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]

    # axes
    x0, x1 = MARGIN["left"], WIDTH - MARGIN["right"]
    y0, y1 = HEIGHT - MARGIN["bottom"], MARGIN["top"]
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="#444" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="#444" stroke-width="1"/>'
    )
    for k in range(5):
        v = lo + (hi - lo) * k / 4
        y = sy(v)
        parts.append(
            f'<line x1="{x0 - 4}" y1="{y:.2f}" x2="{x0}" y2="{y:.2f}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{x0 - 8}" y="{y + 4:.2f}" text-anchor="end" fill="#444">{v:.4g}</text>'
        )
    dates = spec["axes"]["x"]["dates"]
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        i = round(frac * (len(dates) - 1))
        x = sx(i)
        parts.append(
            f'<line x1="{x:.2f}" y1="{y0}" x2="{x:.2f}" y2="{y0 + 4}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{y0 + 16}" text-anchor="middle" fill="#444">{dates[i]}</text>'
        )
    parts.append(
        f'<text x="14" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" fill="#444" '
        f'transform="rotate(-90 14 {(y0 + y1) / 2:.2f})">{spec["axes"]["y"]["label"]}</text>'
    )

    labels: list[dict[str, Any]] = []
    if spec["guardrails"]:
        ctx_style = style["context"]
        for ctx in spec["guardrails"]["context"]:
            parts.append(
                f'<path d="{_path(ctx["values"], sx, sy)}" fill="none" '
                f'stroke="{ctx_style["color"]}" stroke-width="{ctx_style["stroke_width"]}" '
                f'stroke-dasharray="{ctx_style["dash"]}"/>'
            )
            labels.append(
                {"text": ctx["label"], "y": sy(ctx["values"][-1]), "color": ctx_style["color"]}
            )

    focal = spec["focal"]
    focal_style = style["focal"]
    parts.append(
        f'<path d="{_path(focal["values"], sx, sy)}" fill="none" '
        f'stroke="{focal_style["color"]}" stroke-width="{focal_style["stroke_width"]}"/>'
    )
    labels.append(
        {"text": focal["display_name"], "y": sy(focal["values"][-1]), "color": focal_style["color"]}
    )

    _nudge_labels(labels)
    for entry in labels:
        parts.append(
            f'<text x="{x1 + 6}" y="{entry["y"] + 4:.2f}" fill="{entry["color"]}">'
            f"{_escape(entry['text'])}</text>"
        )

    if spec.get("caption"):
        parts.append(
            f'<text x="{x0}" y="{HEIGHT - 6}" fill="#666" font-style="italic">'
            f"{_escape(spec['caption'])}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts)


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
