import numpy as np

# P2..P9 clockwise from north
NEIGHBOURS = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))


def _neighbours(padded):
    h, w = padded.shape[0] - 2, padded.shape[1] - 2
    return [padded[1 + dr:1 + dr + h, 1 + dc:1 + dc + w] for dr, dc in NEIGHBOURS]


def zhang_suen(mask):
    """Zhang-Suen thinning of a boolean mask; returns a new boolean skeleton."""
    image = np.pad(np.asarray(mask, dtype=bool).astype(np.uint8), 1)
    while True:
        changed = False
        for first in (True, False):
            p2, p3, p4, p5, p6, p7, p8, p9 = p = [n.copy() for n in _neighbours(image)]
            filled = sum(p)
            transitions = sum((p[i] == 0) & (p[(i + 1) % 8] == 1) for i in range(8))
            if first:
                cond = (p2 * p4 * p6 == 0) & (p4 * p6 * p8 == 0)
            else:
                cond = (p2 * p4 * p8 == 0) & (p2 * p6 * p8 == 0)
            centre = image[1:-1, 1:-1]
            remove = (centre == 1) & (filled >= 2) & (filled <= 6) & (transitions == 1) & cond
            if remove.any():
                centre[remove] = 0
                changed = True
        if not changed:
            return image[1:-1, 1:-1].astype(bool)
