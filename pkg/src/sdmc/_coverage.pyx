# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled containment kernel for Monte-Carlo coverage estimation.

Marks which sample points lie inside a union of axis-aligned boxes.  The
triple loop (points x boxes x dimensions) dominates the coverage check, so
it is kept allocation-free with early exits on both the box and point level.
"""


def mark_covered(double[:, ::1] points, double[:, ::1] lowers,
                 double[:, ::1] uppers, unsigned char[::1] covered):
    """Set ``covered[i] = 1`` for every point inside at least one box.

    Already-covered points are skipped, so repeated calls accumulate over a
    growing box collection.  Returns the number of newly covered points.
    """
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t dim = points.shape[1]
    cdef Py_ssize_t n_boxes = lowers.shape[0]
    cdef Py_ssize_t i, b, d
    cdef long newly = 0
    cdef bint inside
    cdef double v

    if lowers.shape[1] != dim or uppers.shape[1] != dim or uppers.shape[0] != n_boxes:
        raise ValueError("box arrays must be (n_boxes, dim) matching the points")
    if covered.shape[0] != n:
        raise ValueError("covered mask must have one entry per point")

    for i in range(n):
        if covered[i]:
            continue
        for b in range(n_boxes):
            inside = True
            for d in range(dim):
                v = points[i, d]
                if v < lowers[b, d] or v > uppers[b, d]:
                    inside = False
                    break
            if inside:
                covered[i] = 1
                newly += 1
                break
    return newly
