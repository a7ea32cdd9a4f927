import math

import numpy as np
from numba import njit

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_SEARCH_ITERATIONS = 80


@njit(cache=True, nogil=True)
def point_box_distance(px, py, pz, lo, hi):
    dx = max(lo[0] - px, 0.0, px - hi[0])
    dy = max(lo[1] - py, 0.0, py - hi[1])
    dz = max(lo[2] - pz, 0.0, pz - hi[2])
    return math.sqrt(dx * dx + dy * dy + dz * dz)


@njit(cache=True, nogil=True)
def segment_box_distance(a, b, lo, hi):
    """Minimum distance between segment ``a -> b`` and an axis-aligned box.

    The distance along the segment is convex, so golden-section search finds the minimum.
    """
    left = 0.0
    right = 1.0
    x1 = right - _GOLDEN * (right - left)
    x2 = left + _GOLDEN * (right - left)
    f1 = point_box_distance(a[0] + x1 * (b[0] - a[0]), a[1] + x1 * (b[1] - a[1]), a[2] + x1 * (b[2] - a[2]), lo, hi)
    f2 = point_box_distance(a[0] + x2 * (b[0] - a[0]), a[1] + x2 * (b[1] - a[1]), a[2] + x2 * (b[2] - a[2]), lo, hi)
    for _ in range(_SEARCH_ITERATIONS):
        if f1 <= f2:
            right = x2
            x2 = x1
            f2 = f1
            x1 = right - _GOLDEN * (right - left)
            f1 = point_box_distance(
                a[0] + x1 * (b[0] - a[0]), a[1] + x1 * (b[1] - a[1]), a[2] + x1 * (b[2] - a[2]), lo, hi,
            )
        else:
            left = x1
            x1 = x2
            f1 = f2
            x2 = left + _GOLDEN * (right - left)
            f2 = point_box_distance(
                a[0] + x2 * (b[0] - a[0]), a[1] + x2 * (b[1] - a[1]), a[2] + x2 * (b[2] - a[2]), lo, hi,
            )
    best = min(f1, f2)
    best = min(best, point_box_distance(a[0], a[1], a[2], lo, hi))
    return min(best, point_box_distance(b[0], b[1], b[2], lo, hi))


@njit(cache=True, nogil=True)
def frame_boxes(half_inner, frame_width, half_depth, lo, hi):
    """Fills the four frame bars of a gate in its local frame: top, bottom, left, right"""
    outer = half_inner + frame_width
    for k in range(4):
        lo[k, 1] = -half_depth
        hi[k, 1] = half_depth
    # horizontal bars span the full outer width
    for k in range(2):
        lo[k, 0] = -outer
        hi[k, 0] = outer
    lo[0, 2] = half_inner
    hi[0, 2] = outer
    lo[1, 2] = -outer
    hi[1, 2] = -half_inner
    # vertical bars fill the gap between them
    for k in range(2, 4):
        lo[k, 2] = -half_inner
        hi[k, 2] = half_inner
    lo[2, 0] = -outer
    hi[2, 0] = -half_inner
    lo[3, 0] = half_inner
    hi[3, 0] = outer


@njit(cache=True, nogil=True)
def swept_sphere_hits_frames(p_prev, p_curr, radius, centers, rotations, dimensions):
    """Index of the first gate whose frame the swept sphere touches, -1 if none"""
    a = np.empty(3)
    b = np.empty(3)
    lo = np.empty((4, 3))
    hi = np.empty((4, 3))
    mid = np.empty(3)
    half_length = 0.0
    for r in range(3):
        mid[r] = 0.5 * (p_prev[r] + p_curr[r])
        half_length += (p_curr[r] - p_prev[r]) ** 2
    half_length = 0.5 * math.sqrt(half_length)

    for g in range(centers.shape[0]):
        half_inner = dimensions[g, 0]
        frame_width = dimensions[g, 1]
        half_depth = dimensions[g, 2]
        reach = math.sqrt(2.0 * (half_inner + frame_width) ** 2 + half_depth ** 2)
        gap = 0.0
        for r in range(3):
            gap += (mid[r] - centers[g, r]) ** 2
        if math.sqrt(gap) > reach + radius + half_length:
            continue

        for r in range(3):
            acc_a = 0.0
            acc_b = 0.0
            for c in range(3):
                acc_a += rotations[g, c, r] * (p_prev[c] - centers[g, c])
                acc_b += rotations[g, c, r] * (p_curr[c] - centers[g, c])
            a[r] = acc_a
            b[r] = acc_b

        frame_boxes(half_inner, frame_width, half_depth, lo, hi)
        for k in range(4):
            if segment_box_distance(a, b, lo[k], hi[k]) <= radius:
                return g
    return -1
