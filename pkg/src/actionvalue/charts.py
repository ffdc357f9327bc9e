"""Minimal deterministic SVG 1.1 charts (line, scatter, calibration).

No plotting dependency: reports need three fixed chart shapes, and the
output must be byte-stable across runs, so coordinates are formatted with
fixed precision and elements are emitted in a fixed order.
"""

from __future__ import annotations

import math

WIDTH = 640
HEIGHT = 400
MARGIN_LEFT = 62
MARGIN_RIGHT = 18
MARGIN_TOP = 42
MARGIN_BOTTOM = 48

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

_HEADER = (
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">'
)
_FONT = 'font-family="sans-serif"'


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_step(span: float, n: int) -> float:
    if span <= 0 or not math.isfinite(span):
        return 1.0
    raw = span / max(n, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * mag:
            return mult * mag
    return 10.0 * mag


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = _nice_step(hi - lo, n)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + step * 1e-9:
        ticks.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return ticks


def _label(v: float) -> str:
    return f"{v:g}"


class _Plot:
    """Shared frame: axes, ticks, title, and data-space scaling."""

    def __init__(
        self,
        x_range: tuple[float, float],
        y_range: tuple[float, float],
        title: str,
        x_label: str,
        y_label: str,
    ) -> None:
        x_lo, x_hi = x_range
        y_lo, y_hi = y_range
        if x_hi <= x_lo:
            x_hi = x_lo + 1.0
        if y_hi <= y_lo:
            y_hi = y_lo + 1.0
        self.x_lo, self.x_hi = x_lo, x_hi
        self.y_lo, self.y_hi = y_lo, y_hi
        self.parts: list[str] = [_HEADER]
        self.parts.append(
            f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>'
        )
        self.parts.append(
            f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" {_FONT} '
            f'font-size="15" fill="#222222">{_escape(title)}</text>'
        )
        self._frame(x_label, y_label)

    def px(self, x: float) -> float:
        span = self.x_hi - self.x_lo
        inner = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
        return MARGIN_LEFT + (x - self.x_lo) / span * inner

    def py(self, y: float) -> float:
        span = self.y_hi - self.y_lo
        inner = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
        return HEIGHT - MARGIN_BOTTOM - (y - self.y_lo) / span * inner

    def _frame(self, x_label: str, y_label: str) -> None:
        x0, x1 = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
        y0, y1 = HEIGHT - MARGIN_BOTTOM, MARGIN_TOP
        add = self.parts.append
        for t in _ticks(self.x_lo, self.x_hi):
            px = self.px(t)
            add(
                f'<line x1="{_fmt(px)}" y1="{y0}" x2="{_fmt(px)}" y2="{y1}" '
                'stroke="#e0e0e0" stroke-width="1"/>'
            )
            add(
                f'<text x="{_fmt(px)}" y="{y0 + 18}" text-anchor="middle" '
                f'{_FONT} font-size="11" fill="#444444">{_label(t)}</text>'
            )
        for t in _ticks(self.y_lo, self.y_hi):
            py = self.py(t)
            add(
                f'<line x1="{x0}" y1="{_fmt(py)}" x2="{x1}" y2="{_fmt(py)}" '
                'stroke="#e0e0e0" stroke-width="1"/>'
            )
            add(
                f'<text x="{x0 - 6}" y="{_fmt(py + 4)}" text-anchor="end" '
                f'{_FONT} font-size="11" fill="#444444">{_label(t)}</text>'
            )
        add(
            f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" '
            'fill="none" stroke="#333333" stroke-width="1"/>'
        )
        add(
            f'<text x="{(x0 + x1) // 2}" y="{HEIGHT - 10}" text-anchor="middle" '
            f'{_FONT} font-size="12" fill="#222222">{_escape(x_label)}</text>'
        )
        add(
            f'<text x="16" y="{(y0 + y1) // 2}" text-anchor="middle" {_FONT} '
            f'font-size="12" fill="#222222" '
            f'transform="rotate(-90 16 {(y0 + y1) // 2})">{_escape(y_label)}</text>'
        )

    def finish(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )


def _bounds(values: list[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = abs(lo) * 0.1 + 1.0
        return lo - pad, hi + pad
    pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def line_chart(
    series: dict[str, list[tuple[float, float]]],
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Multi-series polyline chart; series are drawn in name order."""
    names = sorted(series)
    xs = [p[0] for name in names for p in series[name]]
    ys = [p[1] for name in names for p in series[name]]
    if not xs:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    plot = _Plot(_bounds(xs), _bounds(ys), title, x_label, y_label)
    for idx, name in enumerate(names):
        color = PALETTE[idx % len(PALETTE)]
        pts = " ".join(
            f"{_fmt(plot.px(x))},{_fmt(plot.py(y))}" for x, y in series[name]
        )
        plot.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            'stroke-width="1.5"/>'
        )
        plot.parts.append(
            f'<text x="{WIDTH - MARGIN_RIGHT - 6}" y="{MARGIN_TOP + 16 + 14 * idx}" '
            f'text-anchor="end" {_FONT} font-size="11" fill="{color}">'
            f"{_escape(name)}</text>"
        )
    return plot.finish()


def scatter_chart(
    points: list[tuple[float, float, str]],
    title: str,
    x_label: str,
    y_label: str,
    labeled: int = 0,
) -> str:
    """Scatter of (x, y, name); the first ``labeled`` points get name tags."""
    if not points:
        points = []
    xs = [p[0] for p in points] or [0.0, 1.0]
    ys = [p[1] for p in points] or [0.0, 1.0]
    plot = _Plot(_bounds(xs), _bounds(ys), title, x_label, y_label)
    for i, (x, y, name) in enumerate(points):
        cx, cy = plot.px(x), plot.py(y)
        plot.parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" '
            f'fill="{PALETTE[0]}" fill-opacity="0.7"/>'
        )
        if i < labeled and name:
            plot.parts.append(
                f'<text x="{_fmt(cx + 5)}" y="{_fmt(cy - 4)}" {_FONT} '
                f'font-size="10" fill="#333333">{_escape(name)}</text>'
            )
    return plot.finish()


def calibration_chart(bins, title: str = "Calibration") -> str:
    """Reliability diagram: predicted vs observed rate with a diagonal."""
    plot = _Plot(
        (0.0, 1.0), (0.0, 1.0), title, "mean predicted probability",
        "fraction of positives",
    )
    plot.parts.append(
        f'<line x1="{_fmt(plot.px(0.0))}" y1="{_fmt(plot.py(0.0))}" '
        f'x2="{_fmt(plot.px(1.0))}" y2="{_fmt(plot.py(1.0))}" '
        'stroke="#999999" stroke-width="1" stroke-dasharray="4,3"/>'
    )
    if bins:
        pts = " ".join(
            f"{_fmt(plot.px(b.mean_predicted))},{_fmt(plot.py(b.fraction_positive))}"
            for b in bins
        )
        plot.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{PALETTE[1]}" '
            'stroke-width="1.5"/>'
        )
        for b in bins:
            cx = plot.px(b.mean_predicted)
            cy = plot.py(b.fraction_positive)
            plot.parts.append(
                f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" '
                f'fill="{PALETTE[1]}"/>'
            )
            plot.parts.append(
                f'<text x="{_fmt(cx)}" y="{_fmt(cy - 7)}" text-anchor="middle" '
                f'{_FONT} font-size="9" fill="#666666">{b.count}</text>'
            )
    return plot.finish()
