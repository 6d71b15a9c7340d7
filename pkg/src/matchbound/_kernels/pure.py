"""Pure-Python kernels for the hot inner loops.

All functions work on parallel coordinate lists ``xs``/``ys`` (integers,
indices sorted by strictly increasing x) and a list of matching edges
``(u, w)`` with ``u < w``.  Index order equals x-order, so "left of" is an
index comparison.  Everything is exact integer arithmetic.

Two rank methods are exposed everywhere:

* ``METHOD_CLIP`` -- trapezoid-style: a point sees an edge iff that edge is
  the first edge hit by the vertical ray from the point (the edge clipping
  the point's wall).
* ``METHOD_SCAN`` -- brute-force oracle: test the open vertical segment from
  the point to the edge against every other edge directly.

The compiled kernel in ``_native`` mirrors this module function for function.
"""

NAME = "pure"

METHOD_CLIP = 0
METHOD_SCAN = 1


def orientation_sign(px, py, qx, qy, rx, ry):
    """Sign of the cross product (q-p) x (r-p): 1 ccw, -1 cw, 0 collinear."""
    d = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def segments_properly_cross(ax, ay, bx, by, cx, cy, dx, dy):
    """True iff open segments ab and cd share an interior point."""
    d1 = orientation_sign(ax, ay, bx, by, cx, cy)
    d2 = orientation_sign(ax, ay, bx, by, dx, dy)
    if d1 == d2 or d1 == 0 or d2 == 0:
        return False
    d3 = orientation_sign(cx, cy, dx, dy, ax, ay)
    d4 = orientation_sign(cx, cy, dx, dy, bx, by)
    return d3 != d4 and d3 != 0 and d4 != 0


def edge_is_compatible(xs, ys, edges, a, b):
    """True iff segment (a, b) is vertex-disjoint from and crosses no edge."""
    for (c, d) in edges:
        if c == a or c == b or d == a or d == b:
            return False
        if segments_properly_cross(
            xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d]
        ):
            return False
    return True


def _edge_y_num_den(xs, ys, u, w, x):
    """y of edge (u, w) at abscissa x, as (numerator, positive denominator)."""
    den = xs[w] - xs[u]
    num = ys[u] * den + (ys[w] - ys[u]) * (x - xs[u])
    return num, den


def _point_above_edge(xs, ys, u, w, v):
    """Sign of y(v) - y_edge(x(v)); requires u < v < w in index order."""
    return orientation_sign(xs[u], ys[u], xs[w], ys[w], xs[v], ys[v])


def first_edge_above(xs, ys, edges, v):
    """Index of the first edge strictly above point v, or -1."""
    best = -1
    bn = bd = 0
    xv = xs[v]
    for i, (u, w) in enumerate(edges):
        if not (u < v < w):
            continue
        if _point_above_edge(xs, ys, u, w, v) >= 0:
            continue
        num, den = _edge_y_num_den(xs, ys, u, w, xv)
        if best < 0 or num * bd < bn * den:
            best, bn, bd = i, num, den
    return best


def first_edge_below(xs, ys, edges, v):
    """Index of the first edge strictly below point v, or -1."""
    best = -1
    bn = bd = 0
    xv = xs[v]
    for i, (u, w) in enumerate(edges):
        if not (u < v < w):
            continue
        if _point_above_edge(xs, ys, u, w, v) <= 0:
            continue
        num, den = _edge_y_num_den(xs, ys, u, w, xv)
        if best < 0 or num * bd > bn * den:
            best, bn, bd = i, num, den
    return best


def _visible_scan(xs, ys, edges, v, ei):
    """Open-vertical-segment visibility test of point v from edge ei."""
    u, w = edges[ei]
    xv = xs[v]
    side = _point_above_edge(xs, ys, u, w, v)
    ne, de = _edge_y_num_den(xs, ys, u, w, xv)
    for j, (c, d) in enumerate(edges):
        if j == ei or not (c < v < d):
            continue
        sv = _point_above_edge(xs, ys, c, d, v)
        if sv != side:
            # blocker must be on the same side of v as the target edge
            continue
        nf, df = _edge_y_num_den(xs, ys, c, d, xv)
        se = ne * df - nf * de  # sign of y_target - y_blocker at x(v)
        # blocked iff edge j lies strictly between v and edge ei at x(v)
        if side > 0 and se < 0:
            return False
        if side < 0 and se > 0:
            return False
    return True


def visible_from_edge(xs, ys, edges, v, ei, method):
    """True iff point v is vertically visible from the interior of edge ei."""
    u, w = edges[ei]
    if not (u < v < w):
        return False
    if method == METHOD_SCAN:
        return _visible_scan(xs, ys, edges, v, ei)
    if _point_above_edge(xs, ys, u, w, v) > 0:
        return first_edge_below(xs, ys, edges, v) == ei
    return first_edge_above(xs, ys, edges, v) == ei


def _edge_of(edges, p):
    for i, (u, w) in enumerate(edges):
        if u == p or w == p:
            return i
    return -1


def rank_of_point(xs, ys, edges, p, method):
    """Rank of p: 0 if unmatched, else the visible same-side-endpoint count."""
    ei = _edge_of(edges, p)
    if ei < 0:
        return 0
    u, w = edges[ei]
    left = p == u
    count = 0
    matched_as = {}
    for (c, d) in edges:
        matched_as[c] = True   # left endpoint
        matched_as[d] = False  # right endpoint
    for v in range(len(xs)):
        if v == u or v == w:
            continue
        role = matched_as.get(v)
        if role is None or role == left:
            if visible_from_edge(xs, ys, edges, v, ei, method):
                count += 1
    return count


def all_ranks(xs, ys, edges, method):
    """Rank of every point, as a list indexed by point."""
    return [rank_of_point(xs, ys, edges, p, method) for p in range(len(xs))]


def insertion_vectors(xs, ys, edges, p, method):
    """Insertion profile of isolated point p.

    Returns (h, l, r): for every isolated q compatible with the matching,
    insert edge (p, q), compute the new rank i of p, and count it in h[i]
    and in l[i] (q left of p) or r[i] (q right of p).
    """
    n = len(xs)
    h = [0] * (n + 1)
    lv = [0] * (n + 1)
    rv = [0] * (n + 1)
    covered = [False] * n
    for (u, w) in edges:
        covered[u] = True
        covered[w] = True
    for q in range(n):
        if q == p or covered[q]:
            continue
        a, b = (p, q) if p < q else (q, p)
        if not edge_is_compatible(xs, ys, edges, a, b):
            continue
        aug = edges + [(a, b)]
        i = rank_of_point(xs, ys, aug, p, method)
        h[i] += 1
        if q < p:
            lv[i] += 1
        else:
            rv[i] += 1
    return h, lv, rv
