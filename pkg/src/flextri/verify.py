"""Exact self-intersection certification for geometric simplicial complexes.

Admissibility of a face pair means: the intersection of the two closed
triangles equals the convex hull of their shared vertices (empty set, the
shared vertex, or the shared edge).  Every decision reduces to exact sign
computations in a quadratic field; degenerate configurations (coplanarity,
collinear contact) are decided by case analysis, never perturbed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .geometry import GeometricComplex, Point, face_is_degenerate
from .numeric import QuadExt, solve_linear


def _det(rows) -> QuadExt:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    sign = 1
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
        term = rows[0][j] * _det(minor)
        if sign < 0:
            term = -term
        acc = term if acc is None else acc + term
        sign = -sign
    return acc


def orientation_sign(points) -> int:
    """Sign of the determinant of difference vectors of d+1 points in R^d."""
    pts = list(points)
    d = pts[0].dim
    if len(pts) != d + 1:
        raise ValueError(f"need {d + 1} points in R^{d}, got {len(pts)}")
    rows = [(p - pts[0]).coords for p in pts[1:]]
    return _det(rows).sign()


def _orient2d(a: Point, b: Point, c: Point) -> QuadExt:
    (ax, ay), (bx, by), (cx, cy) = a.coords, b.coords, c.coords
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


@dataclass
class PairVerdict:
    faces: tuple
    shared: int
    verdict: str                  # "admissible" | "violation"
    kind: str | None = None       # violation kind
    witness: tuple = ()           # offending exact points, when available

    @property
    def admissible(self) -> bool:
        return self.verdict == "admissible"


@dataclass
class EmbeddingReport:
    identity: str
    verdict: str                  # "embedded" | "not_embedded"
    violations: list = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def embedded(self) -> bool:
        return self.verdict == "embedded"


# -- 2D machinery ----------------------------------------------------------

def _positively_oriented(tri):
    a, b, c = tri
    s = _orient2d(a, b, c).sign()
    if s == 0:
        raise ValueError("degenerate clip triangle")
    return (a, b, c) if s > 0 else (a, c, b)


def _clip_polygon(poly, a: Point, b: Point):
    """Sutherland-Hodgman step: keep the closed half-plane left of (a, b)."""
    if not poly:
        return []
    out = []
    hs = [_orient2d(a, b, p) for p in poly]
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        hi, hj = hs[i], hs[j]
        si, sj = hi.sign(), hj.sign()
        if si >= 0:
            out.append(poly[i])
        if si * sj < 0:
            t = hi / (hi - hj)
            out.append(poly[i] + (poly[j] - poly[i]).scale(t))
    return out


def _dedupe(points):
    seen = []
    for p in points:
        if all(p.coords != q.coords for q in seen):
            seen.append(p)
    return seen


def _point_in_tri_2d(p: Point, tri) -> bool:
    a, b, c = _positively_oriented(tri)
    return (
        _orient2d(a, b, p).sign() >= 0
        and _orient2d(b, c, p).sign() >= 0
        and _orient2d(c, a, p).sign() >= 0
    )


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    """p on the closed segment [a, b] (any dimension), exactly."""
    u = b - a
    w = p - a
    # collinearity: all 2x2 minors vanish
    n = len(u.coords)
    for i in range(n):
        for j in range(i + 1, n):
            if not (u.coords[i] * w.coords[j] - u.coords[j] * w.coords[i]).is_zero():
                return False
    t_num = w.dot(u)
    t_den = u.norm_sq()
    return t_num.sign() >= 0 and (t_den - t_num).sign() >= 0


def _in_shared_hull(p: Point, shared_pts) -> bool:
    if len(shared_pts) == 0:
        return False
    if len(shared_pts) == 1:
        return p.coords == shared_pts[0].coords
    return _on_segment(p, shared_pts[0], shared_pts[1])


# -- coplanar overlap ------------------------------------------------------

def _coplanar_check_2d(t1, t2, shared_pts):
    """Both triangles in R^2.  Returns (admissible, witness, kind)."""
    clip = _positively_oriented(t1)
    poly = list(t2)
    for i in range(3):
        poly = _clip_polygon(poly, clip[i], clip[(i + 1) % 3])
    poly = _dedupe(poly)
    offenders = [p for p in poly if not _in_shared_hull(p, shared_pts)]
    if not offenders:
        return True, (), None
    t1_in_t2 = all(_point_in_tri_2d(p, t2) for p in t1)
    t2_in_t1 = all(_point_in_tri_2d(p, t1) for p in t2)
    kind = "containment" if (t1_in_t2 or t2_in_t1) else "coplanar_overlap"
    return False, tuple(offenders), kind


# -- dimension 3 -----------------------------------------------------------

def _drop_axis_for_plane(a: Point, b: Point, c: Point) -> int:
    n = (b - a).cross(c - a)
    for i in range(3):
        if not n.coords[i].is_zero():
            return i
    raise ValueError("degenerate triangle has no plane normal")


def _project2d(p: Point, axis: int) -> Point:
    return Point(tuple(c for i, c in enumerate(p.coords) if i != axis))


def _plane_values(tri, pts):
    a, b, c = tri
    n = (b - a).cross(c - a)
    return [n.dot(q - a) for q in pts]


def _clip_segment_by_tri_2d(x: Point, y: Point, tri, axis: int):
    """Intersect 3D segment [x, y] with a triangle coplanar with it, working
    in the 2D projection along `axis`; returns 3D endpoints of the result."""
    a, b, c = _positively_oriented(tuple(_project2d(p, axis) for p in tri))
    x2, y2 = _project2d(x, axis), _project2d(y, axis)
    lo = QuadExt(0, ctx=x.coords[0].ctx)
    hi = QuadExt(1, ctx=x.coords[0].ctx)
    for u, v in ((a, b), (b, c), (c, a)):
        hx, hy = _orient2d(u, v, x2), _orient2d(u, v, y2)
        coef = hy - hx  # h(t) = hx + t*(hy-hx) >= 0 required
        s = coef.sign()
        if s == 0:
            if hx.sign() < 0:
                return []
        elif s > 0:
            t = -hx / coef
            if (t - lo).sign() > 0:
                lo = t
        else:
            t = -hx / coef
            if (t - hi).sign() < 0:
                hi = t
    if (hi - lo).sign() < 0:
        return []
    seg = y - x
    pts = [x + seg.scale(lo)]
    if (hi - lo).sign() > 0:
        pts.append(x + seg.scale(hi))
    return pts


def _check_dim3(t1, t2, shared_pts):
    d2 = _plane_values(t1, t2)
    s2 = [v.sign() for v in d2]
    if all(s > 0 for s in s2) or all(s < 0 for s in s2):
        return True, (), None
    if all(s == 0 for s in s2):
        axis = _drop_axis_for_plane(*t1)
        return _coplanar_check_2d(
            tuple(_project2d(p, axis) for p in t1),
            tuple(_project2d(p, axis) for p in t2),
            [_project2d(p, axis) for p in shared_pts],
        )
    # T2 crosses the plane of T1: its trace there is a point or segment
    trace = [q for q, s in zip(t2, s2) if s == 0]
    for i, j in combinations(range(3), 2):
        if s2[i] * s2[j] < 0:
            t = d2[i] / (d2[i] - d2[j])
            trace.append(t2[i] + (t2[j] - t2[i]).scale(t))
    trace = _dedupe(trace)
    axis = _drop_axis_for_plane(*t1)
    if len(trace) == 1:
        hit = trace if _point_in_tri_2d(
            _project2d(trace[0], axis), tuple(_project2d(p, axis) for p in t1)
        ) else []
    else:
        hit = _clip_segment_by_tri_2d(trace[0], trace[1], t1, axis)
    offenders = [p for p in hit if not _in_shared_hull(p, shared_pts)]
    if not offenders:
        return True, (), None
    if len(hit) >= 2:
        edge_trace = sum(1 for s in s2 if s == 0) == 2
        kind = "edge_through_face" if edge_trace else "interior_crossing"
    else:
        p = offenders[0]
        on_vertex = any(p.coords == q.coords for q in t1 + t2)
        kind = "vertex_in_face" if on_vertex else "edge_through_face"
    return False, tuple(offenders), kind


# -- dimension 4 (and general flats) ---------------------------------------

def _barycentric_ok(s: QuadExt, t: QuadExt) -> bool:
    one = QuadExt(1, ctx=s.ctx)
    return s.sign() >= 0 and t.sign() >= 0 and (one - s - t).sign() >= 0


def _check_dim4(t1, t2, shared_pts):
    p0, p1, p2 = t1
    q0, q1, q2 = t2
    u1, u2 = p1 - p0, p2 - p0
    w1, w2 = q1 - q0, q2 - q0
    n = p0.dim
    matrix = [
        [u1.coords[i], u2.coords[i], -w1.coords[i], -w2.coords[i]]
        for i in range(n)
    ]
    rhs = [(q0 - p0).coords[i] for i in range(n)]
    sol = solve_linear(matrix, rhs)

    if sol.kind == "inconsistent":
        return True, (), None

    if sol.kind == "unique":
        s, t, a, b = sol.particular
        if _barycentric_ok(s, t) and _barycentric_ok(a, b):
            x = p0 + u1.scale(s) + u2.scale(t)
            if _in_shared_hull(x, shared_pts):
                return True, (), None
            on_vertex = any(x.coords == q.coords for q in t1 + t2)
            kind = "vertex_in_face" if on_vertex else "interior_crossing"
            return False, (x,), kind
        return True, (), None

    if len(sol.nullspace) == 1:
        # the two 2-flats meet in a line
        part = sol.particular
        (null,) = sol.nullspace
        lo, hi, empty = _line_interval(part, null)
        if empty:
            return True, (), None
        pts = [_line_point(p0, u1, u2, part, null, lo)]
        if (hi - lo).sign() > 0:
            pts.append(_line_point(p0, u1, u2, part, null, hi))
        offenders = [p for p in pts if not _in_shared_hull(p, shared_pts)]
        if not offenders:
            return True, (), None
        if len(pts) >= 2:
            kind = "interior_crossing"
        else:
            p = offenders[0]
            on_vertex = any(p.coords == q.coords for q in t1 + t2)
            kind = "vertex_in_face" if on_vertex else "edge_through_face"
        return False, tuple(offenders), kind

    # rank n-2: same 2-flat; express everything in the (u1, u2) frame
    frame_pts = []
    for q in (*t2, *shared_pts):
        m2 = [[u1.coords[i], u2.coords[i]] for i in range(n)]
        r2 = [(q - p0).coords[i] for i in range(n)]
        s2 = solve_linear(m2, r2)
        frame_pts.append(Point(tuple(s2.particular)))
    ctx = p0.coords[0].ctx
    zero, one = QuadExt(0, ctx=ctx), QuadExt(1, ctx=ctx)
    t1f = (Point((zero, zero)), Point((one, zero)), Point((zero, one)))
    return _coplanar_check_2d(t1f, tuple(frame_pts[:3]), frame_pts[3:])


def _line_interval(part, null):
    """Clip the parameter line (s,t,a,b) = part + lam*null against both
    triangles' barycentric constraints; returns (lo, hi, empty)."""
    ctx = part[0].ctx
    one = QuadExt(1, ctx=ctx)
    constraints = []  # (coef, const) meaning coef*lam + const >= 0
    for idx in (0, 1, 2, 3):
        constraints.append((null[idx], part[idx]))
    constraints.append((-null[0] - null[1], one - part[0] - part[1]))
    constraints.append((-null[2] - null[3], one - part[2] - part[3]))
    lo = hi = None
    for coef, const in constraints:
        s = coef.sign()
        if s == 0:
            if const.sign() < 0:
                return None, None, True
        elif s > 0:
            bound = -const / coef
            if lo is None or (bound - lo).sign() > 0:
                lo = bound
        else:
            bound = -const / coef
            if hi is None or (bound - hi).sign() < 0:
                hi = bound
    if lo is None or hi is None:
        raise ValueError("unbounded parameter interval from degenerate input")
    if (hi - lo).sign() < 0:
        return None, None, True
    return lo, hi, False


def _line_point(p0, u1, u2, part, null, lam):
    s = part[0] + null[0] * lam
    t = part[1] + null[1] * lam
    return p0 + u1.scale(s) + u2.scale(t)


# -- public predicates -----------------------------------------------------

def pair_intersection_check(t1, t2, shared=None) -> PairVerdict:
    """Exact verdict for one pair of triangles (tuples of Points in R^3/R^4).

    ``shared`` is a list of index pairs (i, j) with t1[i] == t2[j]; when
    omitted it is recovered from coordinate equality.
    """
    t1, t2 = tuple(t1), tuple(t2)
    if face_is_degenerate(*t1) or face_is_degenerate(*t2):
        return PairVerdict((t1, t2), 0, "violation", "degenerate_face")
    if shared is None:
        shared = [
            (i, j)
            for i in range(3)
            for j in range(3)
            if t1[i].coords == t2[j].coords
        ]
    shared_pts = [t1[i] for i, _ in shared]
    n_shared = len(shared_pts)

    if n_shared == 3:
        return PairVerdict((t1, t2), 3, "violation", "coplanar_overlap", t1)

    if n_shared == 2:
        # non-coplanar triangles on a common edge meet exactly in that edge
        if orientation_sign_safe(t1, t2) != 0:
            return PairVerdict((t1, t2), 2, "admissible")

    dim = t1[0].dim
    if dim == 3:
        ok, witness, kind = _check_dim3(t1, t2, shared_pts)
    elif dim == 4:
        ok, witness, kind = _check_dim4(t1, t2, shared_pts)
    else:
        raise ValueError(f"unsupported dimension {dim}")
    if ok:
        return PairVerdict((t1, t2), n_shared, "admissible")
    return PairVerdict((t1, t2), n_shared, "violation", kind, witness)


def orientation_sign_safe(t1, t2) -> int:
    """Coplanarity test of the two triangles' affine hulls via the third
    vertices, valid when they share an edge; 0 means coplanar."""
    shared = [p for p in t1 if any(p.coords == q.coords for q in t2)]
    others1 = [p for p in t1 if all(p.coords != q.coords for q in shared)]
    others2 = [p for p in t2 if all(p.coords != q.coords for q in shared)]
    pts = shared + others1 + others2
    if t1[0].dim == 3 and len(pts) == 4:
        return orientation_sign(pts)
    if t1[0].dim == 4 and len(pts) == 4:
        # coplanar in R^4 iff the three difference vectors have rank < 3
        base = pts[0]
        vecs = [p - base for p in pts[1:]]
        for cols in combinations(range(4), 3):
            rows = [[v.coords[c] for c in cols] for v in vecs]
            if _det(rows).sign() != 0:
                return 1
        return 0
    return 0


class EmbeddingVerifier:
    """Face-pair certifier with a verdict cache, for re-use across the many
    triangulations drawn from one 3-clique pool on one placement."""

    def __init__(self, placement: dict):
        self.placement = placement
        self._cache: dict = {}

    def check(self, f1, f2) -> PairVerdict:
        key = (f1, f2) if f1 <= f2 else (f2, f1)
        if key not in self._cache:
            a, b = key
            t1 = tuple(self.placement[v] for v in a)
            t2 = tuple(self.placement[v] for v in b)
            shared = [
                (i, j)
                for i, u in enumerate(a)
                for j, w in enumerate(b)
                if u == w
            ]
            self._cache[key] = pair_intersection_check(t1, t2, shared)
        return self._cache[key]


def verify_embedding(
    g: GeometricComplex, identity: str = "", verifier: EmbeddingVerifier | None = None
) -> EmbeddingReport:
    """Certify that a geometric complex is free from self-intersections."""
    if verifier is None:
        verifier = EmbeddingVerifier(g.placement)
    violations = []
    for f in g.triangulation.faces:
        if face_is_degenerate(*g.face_points(f)):
            violations.append(
                PairVerdict((f, f), 3, "violation", "degenerate_face")
            )
    pairs = list(combinations(g.triangulation.faces, 2))
    for f1, f2 in pairs:
        v = verifier.check(f1, f2)
        if not v.admissible:
            violations.append(
                PairVerdict((f1, f2), v.shared, v.verdict, v.kind, v.witness)
            )
    verdict = "embedded" if not violations else "not_embedded"
    return EmbeddingReport(identity, verdict, violations, len(pairs))


def verify_catalog(placement: dict, catalog) -> list[EmbeddingReport]:
    """Verify every triangulation of a catalog on one placement, sharing a
    pair-verdict cache across the runs."""
    verifier = EmbeddingVerifier(placement)
    reports = []
    for i, tri in enumerate(catalog.triangulations):
        g = GeometricComplex(tri, {v: placement[v] for v in tri.graph.vertices})
        reports.append(verify_embedding(g, identity=str(i), verifier=verifier))
    return reports
