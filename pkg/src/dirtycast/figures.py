"""Deterministic figure sweeps and their CSV/SVG serialization.

fig2: two-user binary rates vs interference strength q.
fig4: three-user binary bounds vs q.
fig5: Gaussian bounds vs INR at SNR = 33 dB.
fig6: Gaussian bounds vs SNR at INR = 15 dB.

CSV is the canonical artifact: one header line, comma-separated, every
number rendered with 9 significant digits, no locale dependence.  The SVG
writer is self-contained (plain polylines) so plotting needs no external
dependency.
"""

from __future__ import annotations

from . import binary, gaussian
from .core import binary_entropy, db_to_linear

__all__ = ["FIGURES", "figure_table", "format_number", "render_csv", "write_csv", "write_svg"]

FIGURES = ("fig2", "fig4", "fig5", "fig6")


def format_number(x: float) -> str:
    return format(float(x), ".9g")


def _binary_rows(columns_for):
    header, rows = None, []
    for i in range(101):
        q = i * 0.005
        name_vals = columns_for(q)
        if header is None:
            header = ["q"] + [n for n, _ in name_vals]
        rows.append([q] + [v for _, v in name_vals])
    return header, rows


def _fig2():
    def cols(q):
        spec = binary.BinaryChannelSpec.iid(q)
        return [
            ("capacity", binary.capacity_two_user(spec).value),
            ("timeshare", binary.rate_timeshare(2).value),
            ("ignore_si", binary.rate_ignore_side_info(spec).value),
        ]

    return _binary_rows(cols)


def _fig4():
    def cols(q):
        spec = binary.BinaryChannelSpec.iid(q, k=3)
        return [
            ("upper_k3", binary.upper_bound_k(spec).value),
            ("lower_k3", binary.lower_bound_k(spec).value),
            ("timeshare", binary.rate_timeshare(3).value),
            ("ignore_si", 1.0 - binary_entropy(q)),
        ]

    return _binary_rows(cols)


def _gaussian_rows(x_name, x_values, p_of, q_of):
    header = [x_name, "upper_i", "upper_ii", "lower", "timeshare", "interference_as_noise"]
    rows = []
    for x in x_values:
        p, q = p_of(x), q_of(x)
        rows.append(
            [
                x,
                gaussian.upper_i(p, q).value,
                gaussian.upper_ii(p, q).value,
                gaussian.lower_bound(p, q).value,
                gaussian.rate_timeshare(p).value,
                gaussian.rate_interference_as_noise(p, q).value,
            ]
        )
    return header, rows


def _fig5():
    p = db_to_linear(33.0)
    xs = [-10.0 + 60.0 * i / 120 for i in range(121)]
    return _gaussian_rows("inr_db", xs, lambda x: p, lambda x: db_to_linear(x))


def _fig6():
    q = db_to_linear(15.0)
    xs = [50.0 * i / 120 for i in range(121)]
    return _gaussian_rows("snr_db", xs, lambda x: db_to_linear(x), lambda x: q)


def figure_table(name: str):
    """(header, rows) for one of the four figures."""
    builders = {"fig2": _fig2, "fig4": _fig4, "fig5": _fig5, "fig6": _fig6}
    if name not in builders:
        raise ValueError(f"unknown figure {name!r}; choose from {FIGURES}")
    return builders[name]()


def render_csv(header, rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path, header, rows):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(render_csv(header, rows))


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def write_svg(path, header, rows, x_log: bool = False, title: str | None = None):
    """Minimal polyline plot of every column against the first one."""
    import math

    width, height = 720, 480
    ml, mr, mt, mb = 64, 16, 28, 44
    xs = [float(r[0]) for r in rows]
    if x_log:
        if min(xs) <= 0:
            raise ValueError("log-scale x needs positive values")
        xs = [math.log10(v) for v in xs]
    series = list(zip(*[[float(v) for v in r[1:]] for r in rows]))
    ys = [v for s in series for v in s if math.isfinite(v)]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0
    pad = 0.04 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad

    def px(x):
        return ml + (x - x0) / (x1 - x0) * (width - ml - mr)

    def py(y):
        return height - mb - (y - y0) / (y1 - y0) * (height - mt - mb)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{ml}" y="{mt}" width="{width-ml-mr}" height="{height-mt-mb}" '
        'fill="none" stroke="#444"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width/2:.1f}" y="18" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{title}</text>'
        )
    for k in range(5):
        gx = x0 + k * (x1 - x0) / 4
        gy = y0 + k * (y1 - y0) / 4
        label = f"1e{gx:.2g}" if x_log else f"{gx:.3g}"
        parts.append(
            f'<line x1="{px(gx):.1f}" y1="{height-mb}" x2="{px(gx):.1f}" '
            f'y2="{height-mb+4}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{px(gx):.1f}" y="{height-mb+16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{label}</text>'
        )
        parts.append(
            f'<line x1="{ml-4}" y1="{py(gy):.1f}" x2="{ml}" y2="{py(gy):.1f}" stroke="#444"/>'
        )
        parts.append(
            f'<text x="{ml-8}" y="{py(gy)+4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{gy:.3g}</text>'
        )
    parts.append(
        f'<text x="{width/2:.1f}" y="{height-8}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{header[0]}</text>'
    )
    for idx, (name, values) in enumerate(zip(header[1:], series)):
        color = _PALETTE[idx % len(_PALETTE)]
        points = " ".join(
            f"{px(x):.2f},{py(v):.2f}" for x, v in zip(xs, values) if math.isfinite(v)
        )
        parts.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{width-mr-6}" y="{mt+16+14*idx}" text-anchor="end" fill="{color}" '
            f'font-family="sans-serif" font-size="11">{name}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
