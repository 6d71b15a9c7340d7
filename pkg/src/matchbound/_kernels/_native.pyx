# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot inner loops.

Function-for-function mirror of the pure-Python twin in ``pure.py``; see
that module for the full contracts.  Coordinates are bounded by 2**20 in
absolute value, so orientation determinants fit in 64 bits and the exact
rational y-comparisons fit in 128 bits.
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long i128 "__int128"

ctypedef long long i64

NAME = "native"

METHOD_CLIP = 0
METHOD_SCAN = 1

cdef int _METHOD_CLIP = 0
cdef int _METHOD_SCAN = 1


cdef inline int _sign128(i128 d) noexcept nogil:
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


cdef inline int _orient(i64 px, i64 py, i64 qx, i64 qy, i64 rx, i64 ry) noexcept nogil:
    return _sign128(<i128> (qx - px) * (ry - py) - <i128> (qy - py) * (rx - px))


cdef inline bint _cross(i64 ax, i64 ay, i64 bx, i64 by,
                        i64 cx, i64 cy, i64 dx, i64 dy) noexcept nogil:
    cdef int d1 = _orient(ax, ay, bx, by, cx, cy)
    cdef int d2 = _orient(ax, ay, bx, by, dx, dy)
    if d1 == d2 or d1 == 0 or d2 == 0:
        return False
    cdef int d3 = _orient(cx, cy, dx, dy, ax, ay)
    cdef int d4 = _orient(cx, cy, dx, dy, bx, by)
    return d3 != d4 and d3 != 0 and d4 != 0


cdef struct Workspace:
    i64 *xs
    i64 *ys
    int *eu
    int *ew
    int n
    int ne


cdef int _ws_init(Workspace *ws, xs, ys, edges) except -1:
    cdef int i
    ws.n = len(xs)
    ws.ne = len(edges)
    ws.xs = <i64 *> malloc(ws.n * sizeof(i64))
    ws.ys = <i64 *> malloc(ws.n * sizeof(i64))
    ws.eu = <int *> malloc((ws.ne + 1) * sizeof(int))
    ws.ew = <int *> malloc((ws.ne + 1) * sizeof(int))
    if ws.xs is NULL or ws.ys is NULL or ws.eu is NULL or ws.ew is NULL:
        _ws_free(ws)
        raise MemoryError()
    for i in range(ws.n):
        ws.xs[i] = xs[i]
        ws.ys[i] = ys[i]
    for i in range(ws.ne):
        ws.eu[i] = edges[i][0]
        ws.ew[i] = edges[i][1]
    return 0


cdef void _ws_free(Workspace *ws) noexcept:
    free(ws.xs)
    free(ws.ys)
    free(ws.eu)
    free(ws.ew)


cdef inline void _edge_y(Workspace *ws, int u, int w, i64 x,
                         i64 *num, i64 *den) noexcept nogil:
    den[0] = ws.xs[w] - ws.xs[u]
    num[0] = ws.ys[u] * den[0] + (ws.ys[w] - ws.ys[u]) * (x - ws.xs[u])


cdef inline int _point_above(Workspace *ws, int u, int w, int v) noexcept nogil:
    return _orient(ws.xs[u], ws.ys[u], ws.xs[w], ws.ys[w], ws.xs[v], ws.ys[v])


cdef int _first_above(Workspace *ws, int v) noexcept nogil:
    cdef int best = -1, i, u, w
    cdef i64 bn = 0, bd = 0, num, den, xv = ws.xs[v]
    for i in range(ws.ne):
        u = ws.eu[i]
        w = ws.ew[i]
        if not (u < v < w):
            continue
        if _point_above(ws, u, w, v) >= 0:
            continue
        _edge_y(ws, u, w, xv, &num, &den)
        if best < 0 or <i128> num * bd < <i128> bn * den:
            best = i
            bn = num
            bd = den
    return best


cdef int _first_below(Workspace *ws, int v) noexcept nogil:
    cdef int best = -1, i, u, w
    cdef i64 bn = 0, bd = 0, num, den, xv = ws.xs[v]
    for i in range(ws.ne):
        u = ws.eu[i]
        w = ws.ew[i]
        if not (u < v < w):
            continue
        if _point_above(ws, u, w, v) <= 0:
            continue
        _edge_y(ws, u, w, xv, &num, &den)
        if best < 0 or <i128> num * bd > <i128> bn * den:
            best = i
            bn = num
            bd = den
    return best


cdef bint _visible_scan(Workspace *ws, int v, int ei) noexcept nogil:
    cdef int u = ws.eu[ei], w = ws.ew[ei]
    cdef int j, c, d, side, sv, se
    cdef i64 xv = ws.xs[v], ne, de, nf, df
    side = _point_above(ws, u, w, v)
    _edge_y(ws, u, w, xv, &ne, &de)
    for j in range(ws.ne):
        if j == ei:
            continue
        c = ws.eu[j]
        d = ws.ew[j]
        if not (c < v < d):
            continue
        sv = _point_above(ws, c, d, v)
        if sv != side:
            continue
        _edge_y(ws, c, d, xv, &nf, &df)
        se = _sign128(<i128> ne * df - <i128> nf * de)
        if side > 0 and se < 0:
            return False
        if side < 0 and se > 0:
            return False
    return True


cdef bint _visible(Workspace *ws, int v, int ei, int method) noexcept nogil:
    cdef int u = ws.eu[ei], w = ws.ew[ei]
    if not (u < v < w):
        return False
    if method == _METHOD_SCAN:
        return _visible_scan(ws, v, ei)
    if _point_above(ws, u, w, v) > 0:
        return _first_below(ws, v) == ei
    return _first_above(ws, v) == ei


cdef int _rank(Workspace *ws, int p, int method, signed char *role) noexcept nogil:
    """role: per-point scratch of size n; filled here (-1 isolated, 1 left, 0 right)."""
    cdef int i, u = -1, w = -1, ei = -1, v, count = 0
    cdef bint left
    for i in range(ws.n):
        role[i] = -1
    for i in range(ws.ne):
        role[ws.eu[i]] = 1
        role[ws.ew[i]] = 0
        if ws.eu[i] == p or ws.ew[i] == p:
            ei = i
    if ei < 0:
        return 0
    u = ws.eu[ei]
    w = ws.ew[ei]
    left = p == u
    for v in range(ws.n):
        if v == u or v == w:
            continue
        if role[v] == -1 or role[v] == <signed char> left:
            if _visible(ws, v, ei, method):
                count += 1
    return count


def orientation_sign(px, py, qx, qy, rx, ry):
    return _orient(px, py, qx, qy, rx, ry)


def segments_properly_cross(ax, ay, bx, by, cx, cy, dx, dy):
    return _cross(ax, ay, bx, by, cx, cy, dx, dy)


def edge_is_compatible(xs, ys, edges, a, b):
    cdef Workspace ws
    _ws_init(&ws, xs, ys, edges)
    cdef int ia = a, ib = b, i, c, d
    cdef bint ok = True
    try:
        for i in range(ws.ne):
            c = ws.eu[i]
            d = ws.ew[i]
            if c == ia or c == ib or d == ia or d == ib:
                ok = False
                break
            if _cross(ws.xs[ia], ws.ys[ia], ws.xs[ib], ws.ys[ib],
                      ws.xs[c], ws.ys[c], ws.xs[d], ws.ys[d]):
                ok = False
                break
        return ok
    finally:
        _ws_free(&ws)


def first_edge_above(xs, ys, edges, v):
    cdef Workspace ws
    _ws_init(&ws, xs, ys, edges)
    try:
        return _first_above(&ws, v)
    finally:
        _ws_free(&ws)


def first_edge_below(xs, ys, edges, v):
    cdef Workspace ws
    _ws_init(&ws, xs, ys, edges)
    try:
        return _first_below(&ws, v)
    finally:
        _ws_free(&ws)


def visible_from_edge(xs, ys, edges, v, ei, method):
    cdef Workspace ws
    _ws_init(&ws, xs, ys, edges)
    try:
        return _visible(&ws, v, ei, method)
    finally:
        _ws_free(&ws)


def rank_of_point(xs, ys, edges, p, method):
    cdef Workspace ws
    _ws_init(&ws, xs, ys, edges)
    cdef signed char *role = <signed char *> malloc(ws.n * sizeof(signed char))
    if role is NULL:
        _ws_free(&ws)
        raise MemoryError()
    try:
        return _rank(&ws, p, method, role)
    finally:
        free(role)
        _ws_free(&ws)


def all_ranks(xs, ys, edges, method):
    cdef Workspace ws
    _ws_init(&ws, xs, ys, edges)
    cdef signed char *role = <signed char *> malloc(ws.n * sizeof(signed char))
    if role is NULL:
        _ws_free(&ws)
        raise MemoryError()
    cdef int p
    try:
        return [_rank(&ws, p, method, role) for p in range(ws.n)]
    finally:
        free(role)
        _ws_free(&ws)


def insertion_vectors(xs, ys, edges, p, method):
    """(h, l, r) insertion-rank count vectors for isolated point p."""
    cdef Workspace ws
    _ws_init(&ws, xs, ys, list(edges) + [(0, 0)])  # slot for the trial edge
    ws.ne -= 1
    cdef int n = ws.n, ne = ws.ne, ip = p, q, i, a, b, c, d, rank
    cdef bint ok
    cdef signed char *role = <signed char *> malloc(n * sizeof(signed char))
    cdef signed char *covered = <signed char *> malloc(n * sizeof(signed char))
    if role is NULL or covered is NULL:
        free(role)
        free(covered)
        _ws_free(&ws)
        raise MemoryError()
    h = [0] * (n + 1)
    lv = [0] * (n + 1)
    rv = [0] * (n + 1)
    try:
        for i in range(n):
            covered[i] = 0
        for i in range(ne):
            covered[ws.eu[i]] = 1
            covered[ws.ew[i]] = 1
        for q in range(n):
            if q == ip or covered[q]:
                continue
            if ip < q:
                a = ip
                b = q
            else:
                a = q
                b = ip
            ok = True
            for i in range(ne):
                c = ws.eu[i]
                d = ws.ew[i]
                if c == a or c == b or d == a or d == b:
                    ok = False
                    break
                if _cross(ws.xs[a], ws.ys[a], ws.xs[b], ws.ys[b],
                          ws.xs[c], ws.ys[c], ws.xs[d], ws.ys[d]):
                    ok = False
                    break
            if not ok:
                continue
            ws.eu[ne] = a
            ws.ew[ne] = b
            ws.ne = ne + 1
            rank = _rank(&ws, ip, method, role)
            ws.ne = ne
            h[rank] += 1
            if q < ip:
                lv[rank] += 1
            else:
                rv[rank] += 1
        return h, lv, rv
    finally:
        free(role)
        free(covered)
        _ws_free(&ws)
