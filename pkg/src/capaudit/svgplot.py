"""Deterministic static SVG charts (grouped bars, CDF polyline).

No timestamps, random ids, or library-version strings: identical inputs always
produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

_WIDTH = 720
_HEIGHT = 420
_MARGIN_LEFT = 64
_MARGIN_RIGHT = 24
_MARGIN_TOP = 40
_MARGIN_BOTTOM = 72

_PALETTE = ("#4878d0", "#ee854a", "#6acc64", "#d65f5f", "#956cb4", "#8c613c")


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]


def emit_svg_bars(
    rows: Sequence[tuple[str, str, float]],
    path: str | Path,
    y_max: float = 100.0,
    y_label: str = "",
    title: str = "metric suitability",
) -> None:
    """Grouped bar chart from (group, series, value) rows.

    Groups appear in first-seen order along the x-axis; series get stable
    colors in first-seen order.
    """
    if not rows:
        raise ValueError("no rows to plot")
    groups: list[str] = []
    series: list[str] = []
    for group, serie, _ in rows:
        if group not in groups:
            groups.append(group)
        if serie not in series:
            series.append(serie)
    values = {(g, s): v for g, s, v in rows}

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM
    group_w = plot_w / len(groups)
    bar_w = group_w * 0.8 / len(series)

    parts = _header(title)
    # y grid and labels
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _MARGIN_TOP + plot_h * (1 - frac)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y:.1f}" x2="{_WIDTH - _MARGIN_RIGHT}" '
            f'y2="{y:.1f}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{y_max * frac:.0f}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="14" y="{_MARGIN_TOP + plot_h / 2:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="12" '
            f'transform="rotate(-90 14 {_MARGIN_TOP + plot_h / 2:.1f})">{y_label}</text>'
        )
    for gi, group in enumerate(groups):
        x0 = _MARGIN_LEFT + gi * group_w + group_w * 0.1
        for si, serie in enumerate(series):
            value = max(0.0, min(values.get((group, serie), 0.0), y_max))
            h = plot_h * value / y_max
            x = x0 + si * bar_w
            y = _MARGIN_TOP + plot_h - h
            color = _PALETTE[si % len(_PALETTE)]
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" height="{h:.2f}" '
                f'fill="{color}"><title>{group}/{serie}: {value:.2f}</title></rect>'
            )
        parts.append(
            f'<text x="{x0 + group_w * 0.4:.1f}" y="{_MARGIN_TOP + plot_h + 18}" '
            f'text-anchor="middle" font-family="sans-serif" font-size="12">{group}</text>'
        )
    # legend
    for si, serie in enumerate(series):
        x = _MARGIN_LEFT + si * 120
        y = _HEIGHT - 22
        color = _PALETTE[si % len(_PALETTE)]
        parts.append(f'<rect x="{x}" y="{y - 10}" width="12" height="12" fill="{color}"/>')
        parts.append(
            f'<text x="{x + 18}" y="{y}" font-family="sans-serif" font-size="12">{serie}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def emit_svg_cdf(
    cdf: Sequence[float], path: str | Path, title: str = "vocabulary coverage"
) -> None:
    """Polyline of cumulative probability against word rank."""
    if not cdf:
        raise ValueError("empty CDF")
    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM
    n = len(cdf)
    points = []
    for i, value in enumerate(cdf):
        x = _MARGIN_LEFT + (plot_w * (i + 1) / n)
        y = _MARGIN_TOP + plot_h * (1 - value)
        points.append(f"{x:.2f},{y:.2f}")
    parts = _header(title)
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _MARGIN_TOP + plot_h * (1 - frac)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y:.1f}" x2="{_WIDTH - _MARGIN_RIGHT}" '
            f'y2="{y:.1f}" stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{y + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{frac:.2f}</text>'
        )
    parts.append(
        f'<polyline points="{" ".join(points)}" fill="none" stroke="{_PALETTE[0]}" '
        f'stroke-width="1.5"/>'
    )
    parts.append(
        f'<text x="{_MARGIN_LEFT + plot_w / 2:.1f}" y="{_HEIGHT - 28}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">word rank (1..{n})</text>'
    )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
