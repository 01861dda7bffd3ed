from pathlib import Path

import numpy as np

from ..spline_core import sample_curve

SVG_SAMPLES = 200
COLOURS = ('#d62728', '#1f77b4', '#2ca02c')


def _points_attr(points, size):
    return ' '.join(f'{x * size:.4f},{y * size:.4f}' for x, y in points)


def curves_svg(curves, size=512, samples=SVG_SAMPLES, background=None):
    """SVG document for a curve set in normalized image coordinates.

    Each curve gets its dashed control polygon, a circle per control point
    and a ``samples``-point polyline. ``background`` is an optional href
    drawn underneath (the raster the curves were fitted to).
    """
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'xmlns:xlink="http://www.w3.org/1999/xlink" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
    ]
    if background:
        parts.append(f'<image xlink:href="{background}" x="0" y="0" '
                     f'width="{size}" height="{size}"/>')
    for index, curve in enumerate(curves):
        colour = COLOURS[index % len(COLOURS)]
        points = curve.control_points
        parts.append(f'<g class="curve" id="curve-{index}">')
        polygon = _points_attr(points, size)
        parts.append(f'<polyline class="control-polygon" points="{polygon}" '
                     f'fill="none" stroke="#7f7f7f" stroke-dasharray="4,3"/>')
        for x, y in points:
            parts.append(f'<circle class="control-point" cx="{x * size:.4f}" '
                         f'cy="{y * size:.4f}" r="3" fill="{colour}"/>')
        curve_points = sample_curve(curve, samples)
        parts.append(f'<polyline class="curve-samples" '
                     f'points="{_points_attr(curve_points, size)}" '
                     f'fill="none" stroke="{colour}" stroke-width="1.5"/>')
        parts.append('</g>')
    parts.append('</svg>')
    return '\n'.join(parts) + '\n'


def write_svg(curves, path, size=512, samples=SVG_SAMPLES, background=None):
    Path(path).write_text(curves_svg(curves, size, samples, background), encoding='utf-8')


def polyline_points(svg, css_class='curve-samples'):
    """(x, y) arrays of every polyline of ``css_class`` in an SVG written here."""
    result = []
    marker = f'class="{css_class}" points="'
    for chunk in svg.split(marker)[1:]:
        pairs = chunk.split('"', 1)[0].split()
        result.append(np.array([[float(v) for v in pair.split(',')] for pair in pairs]))
    return result
