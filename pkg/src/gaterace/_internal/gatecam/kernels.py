import math

from numba import njit

AA_WIDTH = 1.0


@njit(cache=True, nogil=True)
def _clamp(x, low, high):
    return max(low, min(x, high))


@njit(cache=True, nogil=True)
def _linearstep(edge0, edge1, x):
    return _clamp((x - edge0) / (edge1 - edge0), 0.0, 1.0)


@njit(cache=True, nogil=True)
def draw_segment(layer, x0, y0, x1, y1, line_width):
    """Max-composites an anti-aliased segment with round caps into ``layer``.

    Coordinates are continuous, pixel ``(row, col)`` has its center at ``(col + 0.5, row + 0.5)``.
    """
    ny, nx = layer.shape
    halfwidth = 0.5 * (line_width + AA_WIDTH)
    core = 0.5 * (line_width - AA_WIDTH)

    col_start = int(_clamp(math.floor(min(x0, x1) - halfwidth), 0, nx - 1))
    col_end = int(_clamp(math.ceil(max(x0, x1) + halfwidth), 0, nx - 1))
    row_start = int(_clamp(math.floor(min(y0, y1) - halfwidth), 0, ny - 1))
    row_end = int(_clamp(math.ceil(max(y0, y1) + halfwidth), 0, ny - 1))
    if max(x0, x1) + halfwidth < 0 or min(x0, x1) - halfwidth > nx:
        return
    if max(y0, y1) + halfwidth < 0 or min(y0, y1) - halfwidth > ny:
        return

    alongx = x1 - x0
    alongy = y1 - y0
    length_sq = alongx * alongx + alongy * alongy

    for row in range(row_start, row_end + 1):
        py = row + 0.5
        for col in range(col_start, col_end + 1):
            px = col + 0.5
            if length_sq > 0.0:
                t = _clamp(((px - x0) * alongx + (py - y0) * alongy) / length_sq, 0.0, 1.0)
            else:
                t = 0.0
            dx = px - (x0 + t * alongx)
            dy = py - (y0 + t * alongy)
            distance = math.sqrt(dx * dx + dy * dy)
            value = 1.0 - _linearstep(core, halfwidth, distance)
            if value > layer[row, col]:
                layer[row, col] = value


@njit(cache=True, nogil=True)
def rasterize_layers(segments, layer_starts, line_width, scratch, out):
    """Draws segment groups in order, each group overwriting what earlier groups drew.

    ``segments`` rows are ``(x0, y0, x1, y1)``; group ``g`` spans ``layer_starts[g]:layer_starts[g + 1]``.
    """
    ny, nx = out.shape
    for g in range(layer_starts.shape[0] - 1):
        start = layer_starts[g]
        end = layer_starts[g + 1]
        if start == end:
            continue
        for row in range(ny):
            for col in range(nx):
                scratch[row, col] = 0.0
        for s in range(start, end):
            draw_segment(scratch, segments[s, 0], segments[s, 1], segments[s, 2], segments[s, 3], line_width)
        for row in range(ny):
            for col in range(nx):
                if scratch[row, col] > 0.0:
                    out[row, col] = scratch[row, col]
