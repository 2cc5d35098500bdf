"""Exact coordinate constructions, projections and metric computations.

All coordinates are QuadExt values, so every derived quantity (squared
lengths, plane evaluations, projection images) stays inside one quadratic
field context and is compared exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import (
    CTX_SQRT2_SQRT3,
    CTX_SQRT5,
    QQ,
    FieldContext,
    QuadExt,
    solve_linear,
)
from .surfaces import Triangulation


class ParameterError(ValueError):
    """A construction parameter is missing or out of its valid range."""


@dataclass(frozen=True)
class Point:
    coords: tuple[QuadExt, ...]

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def ctx(self) -> FieldContext:
        return self.coords[0].ctx

    def __sub__(self, other: "Point") -> "Point":
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __add__(self, other: "Point") -> "Point":
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, r) -> "Point":
        return Point(tuple(a * r for a in self.coords))

    def dot(self, other: "Point") -> QuadExt:
        acc = self.coords[0] * other.coords[0]
        for a, b in zip(self.coords[1:], other.coords[1:]):
            acc = acc + a * b
        return acc

    def norm_sq(self) -> QuadExt:
        return self.dot(self)

    def cross(self, other: "Point") -> "Point":
        (a1, a2, a3), (b1, b2, b3) = self.coords, other.coords
        return Point((a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)


def make_point(ctx: FieldContext, *entries) -> Point:
    coords = tuple(
        e if isinstance(e, QuadExt) else QuadExt(e, ctx=ctx) for e in entries
    )
    return Point(coords)


def dist_sq(p: Point, q: Point) -> QuadExt:
    return (p - q).norm_sq()


@dataclass(frozen=True)
class RealizationParams:
    k: Fraction


@dataclass(frozen=True)
class GeometricComplex:
    triangulation: Triangulation
    placement: dict  # VertexLabel -> Point

    def __post_init__(self):
        labels = self.triangulation.graph.vertices
        missing = [v for v in labels if v not in self.placement]
        if missing:
            raise ValueError(f"placement missing vertices {missing}")
        pts = [self.placement[v] for v in labels]
        if len({p.coords for p in pts}) != len(pts):
            raise ValueError("placement maps distinct labels to equal points")

    @property
    def dim(self) -> int:
        return next(iter(self.placement.values())).dim

    def face_points(self, face) -> tuple[Point, Point, Point]:
        return tuple(self.placement[v] for v in face)


def face_is_degenerate(a: Point, b: Point, c: Point) -> bool:
    """True iff the three points are affinely dependent."""
    u, w = b - a, c - a
    n = len(u.coords)
    for i in range(n):
        for j in range(i + 1, n):
            minor = u.coords[i] * w.coords[j] - u.coords[j] * w.coords[i]
            if not minor.is_zero():
                return False
    return True


# -- named constructions ---------------------------------------------------

CONSTRUCTION_NAMES = (
    "suspension",
    "schlegel16cell",
    "rp2_simplex",
    "moebius",
    "std_hyperoctahedron",
    "std_simplex5",
    "std_octahedron",
)


def construction_coords(name: str, params: RealizationParams | None = None) -> dict:
    """Exact labeled point sets for the named constructions.

    suspension (needs k > 2) and schlegel16cell (needs k > 3) take the
    homothety parameter k; the other constructions are parameter-free.
    """
    if name == "suspension":
        k = _require_k(name, params, lower=Fraction(2))
        ctx = CTX_SQRT2_SQRT3
        s2 = QuadExt(0, 1, ctx=ctx)   # sqrt 2
        s6 = QuadExt(0, 0, 0, 1, ctx=ctx)  # sqrt 6
        s8 = 2 * s2
        return {
            "A": make_point(ctx, 0, 0, s8),
            "B": make_point(ctx, -s8 / k, 0, 0),
            "C": make_point(ctx, s2 / k, s6 / k, 0),
            "D": make_point(ctx, s2 / k, -s6 / k, 0),
            "E": make_point(ctx, 0, 0, -s8),
            "F": make_point(ctx, s8, 0, 0),
            "G": make_point(ctx, -s2, -s6, 0),
            "H": make_point(ctx, -s2, s6, 0),
        }
    if name == "schlegel16cell":
        k = _require_k(name, params, lower=Fraction(3))
        return sixteen_cell_diagram(k)
    if name == "rp2_simplex":
        ctx = CTX_SQRT5
        up = QuadExt(0, Fraction(4, 5), ctx=ctx)    # 4/sqrt5
        dn = QuadExt(0, Fraction(-1, 5), ctx=ctx)   # -1/sqrt5
        return {
            "A": make_point(ctx, 0, 0, 0, up),
            "B": make_point(ctx, 1, 1, 1, dn),
            "C": make_point(ctx, 1, -1, -1, dn),
            "D": make_point(ctx, -1, 1, -1, dn),
            "E": make_point(ctx, -1, -1, 1, dn),
            "O": make_point(ctx, 0, 0, 0, 0),
        }
    if name == "moebius":
        ctx = CTX_SQRT5
        return {
            "A": make_point(ctx, 0, 0, 0),
            "B": make_point(ctx, 1, 1, 1),
            "C": make_point(ctx, 1, -1, -1),
            "D": make_point(ctx, -1, 1, -1),
            "E": make_point(ctx, -1, -1, 1),
        }
    if name == "std_hyperoctahedron":
        return _unit_cross_polytope(4, "ABCD", "EFGH")
    if name == "std_octahedron":
        return _unit_cross_polytope(3, "BCD", "FGH")
    if name == "std_simplex5":
        # regular 5-simplex as the standard basis of R^6 (affine hull x1+..+x6 = 1)
        out = {}
        for i, label in enumerate(("A", "B", "C", "D", "E", "O")):
            out[label] = make_point(QQ, *(1 if j == i else 0 for j in range(6)))
        return out
    raise ParameterError(f"unknown construction {name!r}")


def sixteen_cell_diagram(k: Fraction) -> dict:
    """Outer tetrahedron ABCD with its inner homothetic image EFGH scaled by
    -1/k about the origin; valid for any k > 0 (inner tetra lies inside the
    outer one only for k > 3, which construction_coords enforces)."""
    if k <= 0:
        raise ParameterError(f"homothety parameter must be positive, got {k}")
    ctx = CTX_SQRT2_SQRT3
    s2 = QuadExt(0, 1, ctx=ctx)
    s6 = QuadExt(0, 0, 0, 1, ctx=ctx)
    s8 = 2 * s2
    return {
        "A": make_point(ctx, 0, 0, 3),
        "B": make_point(ctx, s8, 0, -1),
        "C": make_point(ctx, -s2, s6, -1),
        "D": make_point(ctx, -s2, -s6, -1),
        "E": make_point(ctx, 0, 0, Fraction(-3, 1) / k),
        "F": make_point(ctx, -s8 / k, 0, Fraction(1) / k),
        "G": make_point(ctx, s2 / k, -s6 / k, Fraction(1) / k),
        "H": make_point(ctx, s2 / k, s6 / k, Fraction(1) / k),
    }


def _unit_cross_polytope(dim: int, plus_labels: str, minus_labels: str) -> dict:
    out = {}
    for i, label in enumerate(plus_labels):
        out[label] = make_point(QQ, *(1 if j == i else 0 for j in range(dim)))
    for i, label in enumerate(minus_labels):
        out[label] = make_point(QQ, *(-1 if j == i else 0 for j in range(dim)))
    return out


def _require_k(name: str, params: RealizationParams | None, lower: Fraction) -> Fraction:
    if params is None:
        raise ParameterError(f"{name} requires parameter k > {lower}")
    k = Fraction(params.k)
    if k <= lower:
        raise ParameterError(f"{name} requires k > {lower}, got k = {k}")
    return k


DEFAULT_PARAMS = {
    "suspension": RealizationParams(Fraction(14, 5)),
    "schlegel16cell": RealizationParams(Fraction(4)),
}


# -- projections -----------------------------------------------------------

def centroid(points) -> Point:
    pts = list(points)
    acc = pts[0]
    for p in pts[1:]:
        acc = acc + p
    return acc.scale(Fraction(1, len(pts)))


def default_viewpoint(points: dict, facet, offset: Fraction = Fraction(1, 10)) -> Point:
    """Facet centroid pushed outward (away from the body centroid)."""
    fc = centroid(points[v] for v in facet)
    bc = centroid(points.values())
    return fc + (fc - bc).scale(offset)


def schlegel_project(points: dict, facet, viewpoint: Point | None = None) -> dict:
    """Central projection onto the hyperplane of a facet, from a viewpoint
    just outside it; images are affine coordinates in the facet frame
    (origin = first facet vertex, axes = other facet vertices minus it)."""
    facet = list(facet)
    if viewpoint is None:
        viewpoint = default_viewpoint(points, facet)
    base = points[facet[0]]
    axes = [points[v] - base for v in facet[1:]]
    m = len(axes)
    n = base.dim

    # facet must affinely span its hyperplane
    probe = solve_linear(
        [[axes[j].coords[i] for j in range(m)] for i in range(n)],
        [QuadExt(0, ctx=base.ctx)] * n,
    )
    if probe.kind != "unique":
        raise ParameterError("degenerate facet: vertices are affinely dependent")
    if _in_facet_hull_span(viewpoint, base, axes):
        raise ParameterError("viewpoint lies on the facet hyperplane")

    out = {}
    for label, p in points.items():
        direction = p - viewpoint
        # solve  sum_j s_j * axes_j - t * direction = viewpoint - base
        matrix = [
            [axes[j].coords[i] for j in range(m)] + [-direction.coords[i]]
            for i in range(n)
        ]
        rhs = [(viewpoint - base).coords[i] for i in range(n)]
        sol = solve_linear(matrix, rhs)
        if sol.kind != "unique":
            raise ParameterError(
                f"projection line through {label} does not meet the facet "
                f"hyperplane in a single point"
            )
        out[label] = Point(tuple(sol.particular[:m]))
    return out


def _in_facet_hull_span(viewpoint: Point, base: Point, axes) -> bool:
    m = len(axes)
    n = base.dim
    matrix = [[axes[j].coords[i] for j in range(m)] for i in range(n)]
    rhs = [(viewpoint - base).coords[i] for i in range(n)]
    return solve_linear(matrix, rhs).kind != "inconsistent"


def orthogonal_project(points: dict, drop_axis: int) -> dict:
    """Delete one coordinate from every point; exact."""
    return {
        label: Point(tuple(c for i, c in enumerate(p.coords) if i != drop_axis))
        for label, p in points.items()
    }


def scale_placement(points: dict, r) -> dict:
    return {label: p.scale(r) for label, p in points.items()}


# -- metrics ---------------------------------------------------------------

@dataclass
class MetricReport:
    edge_lengths_sq: dict        # frozenset edge -> QuadExt
    census: dict                 # face -> "equilateral" | "isosceles" | "scalene"
    census_counts: dict          # shape name -> count


def metric_report(g: GeometricComplex) -> MetricReport:
    lengths = {}
    for e in g.triangulation.graph.edges:
        u, v = sorted(e)
        lengths[e] = dist_sq(g.placement[u], g.placement[v])
    census = {}
    counts = {"equilateral": 0, "isosceles": 0, "scalene": 0}
    for f in g.triangulation.faces:
        sq = [
            lengths[frozenset((f[i], f[j]))]
            for i, j in ((0, 1), (0, 2), (1, 2))
        ]
        distinct = 1 + (sq[0] != sq[1]) + (sq[2] != sq[0] and sq[2] != sq[1])
        shape = {1: "equilateral", 2: "isosceles", 3: "scalene"}[distinct]
        census[f] = shape
        counts[shape] += 1
    return MetricReport(lengths, census, counts)


def circumcenter(points) -> Point:
    """Center equidistant from all given points (must exist and be unique
    inside their affine hull)."""
    pts = list(points)
    base = pts[0]
    ctx = base.ctx
    n = base.dim
    # |x|^2 - 2 x.p_i = |x|^2 - 2 x.p_0 + (|p_0|^2 - |p_i|^2) ... linearized
    matrix, rhs = [], []
    for p in pts[1:]:
        d = p - base
        matrix.append([2 * d.coords[i] for i in range(n)])
        rhs.append(p.norm_sq() - base.norm_sq())
    sol = solve_linear(matrix, rhs)
    if sol.kind == "inconsistent":
        raise ValueError("points admit no equidistant center")
    if sol.kind == "parametric":
        # center not pinned by these points alone; pick the min-norm-free
        # representative only if the nullspace is trivial in practice
        raise ValueError("circumcenter under-determined for these points")
    return Point(tuple(sol.particular))


def circumradius_sq(points) -> QuadExt:
    pts = list(points)
    return dist_sq(circumcenter(pts), pts[0])


def plane_distance_sq(p: Point, a: Point, b: Point, c: Point) -> QuadExt:
    """Squared distance from p to the plane through a, b, c (R^3 only)."""
    n = (b - a).cross(c - a)
    h = n.dot(p - a)
    return h * h / n.norm_sq()


def tetra_inradius_sq(tetra) -> QuadExt:
    """Squared inradius of a tetrahedron whose incenter coincides with its
    circumcenter (the regular-up-to-scaling cases used here); asserts the
    four face-plane distances agree."""
    a, b, c, d = tetra
    center = circumcenter(tetra)
    dists = [
        plane_distance_sq(center, *face)
        for face in ((b, c, d), (a, c, d), (a, b, d), (a, b, c))
    ]
    if any(x != dists[0] for x in dists[1:]):
        raise ValueError("incenter does not coincide with circumcenter")
    return dists[0]


def tetra_containment(outer, inner) -> str:
    """Position of the inner point set relative to the closed outer
    tetrahedron: strict_interior, touching, or outside."""
    a, b, c, d = outer
    faces = ((b, c, d, a), (a, c, d, b), (a, b, d, c), (a, b, c, d))
    any_on = False
    for p in inner:
        for (x, y, z, opp) in faces:
            n = (y - x).cross(z - x)
            ref = n.dot(opp - x).sign()
            if ref == 0:
                raise ValueError("degenerate outer tetrahedron")
            s = n.dot(p - x).sign()
            if s == 0:
                any_on = True
            elif s != ref:
                return "outside"
    return "touching" if any_on else "strict_interior"
