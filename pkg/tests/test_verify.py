import random
from fractions import Fraction
from itertools import combinations

import pytest

from flextri.geometry import (
    construction_coords,
    face_is_degenerate,
    make_point,
    scale_placement,
)
from flextri.numeric import CTX_SQRT2_SQRT3, QQ, QuadExt, solve_linear
from flextri.verify import (
    EmbeddingVerifier,
    orientation_sign,
    pair_intersection_check,
    verify_catalog,
    verify_embedding,
)

CTX = CTX_SQRT2_SQRT3


def pt(*coords, ctx=QQ):
    return make_point(ctx, *[Fraction(c) for c in coords])


# -- orientation -----------------------------------------------------------

def test_orientation_unit_simplex():
    pts = [pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]
    assert orientation_sign(pts) == 1


def test_orientation_swap_flips_sign():
    pts = [pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1)]
    swapped = [pts[0], pts[2], pts[1], pts[3]]
    assert orientation_sign(swapped) == -1


def test_orientation_coplanar_is_zero():
    pts = [pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0), pt(1, 1, 0)]
    assert orientation_sign(pts) == 0


def test_orientation_wrong_count():
    with pytest.raises(ValueError):
        orientation_sign([pt(0, 0, 0), pt(1, 0, 0)])


# -- single-pair verdicts --------------------------------------------------

def test_shared_edge_noncoplanar_is_admissible():
    t1 = (pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0))
    t2 = (pt(0, 0, 0), pt(1, 0, 0), pt(0, 0, 1))
    v = pair_intersection_check(t1, t2)
    assert v.admissible
    assert v.shared == 2


def test_separated_triangles_admissible():
    t1 = (pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0))
    t2 = (pt(0, 0, 5), pt(1, 0, 5), pt(0, 1, 5))
    assert pair_intersection_check(t1, t2).admissible


def test_edge_through_interior_is_violation():
    t1 = (pt(0, 0, 0), pt(4, 0, 0), pt(0, 4, 0))
    t2 = (pt(1, 1, -1), pt(1, 1, 1), pt(3, 3, 1))
    v = pair_intersection_check(t1, t2)
    assert not v.admissible
    assert v.kind in {"interior_crossing", "edge_through_face"}
    # every witness point lies on the plane z = 0 of the first triangle
    for w in v.witness:
        assert w.coords[2].is_zero()


def test_identical_triangles_flagged():
    t = (pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0))
    v = pair_intersection_check(t, t)
    assert not v.admissible
    assert v.kind == "coplanar_overlap"


def test_degenerate_face_flagged():
    t1 = (pt(0, 0, 0), pt(1, 0, 0), pt(2, 0, 0))
    t2 = (pt(0, 0, 5), pt(1, 0, 5), pt(0, 1, 5))
    assert pair_intersection_check(t1, t2).kind == "degenerate_face"


def test_vertex_touch_without_sharing_label_is_violation():
    # t2 has a vertex in the strict interior of t1
    t1 = (pt(0, 0, 0), pt(4, 0, 0), pt(0, 4, 0))
    t2 = (pt(1, 1, 0), pt(1, 1, 4), pt(2, 1, 4))
    v = pair_intersection_check(t1, t2)
    assert not v.admissible
    assert v.kind == "vertex_in_face"


def test_shared_vertex_only_contact_is_admissible():
    t1 = (pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0))
    t2 = (pt(0, 0, 0), pt(-1, 0, 1), pt(0, -1, 1))
    v = pair_intersection_check(t1, t2)
    assert v.admissible
    assert v.shared == 1


def test_verdict_symmetric_under_swap():
    rng = random.Random(424242)
    for _ in range(100):
        t1 = tuple(pt(*(rng.randint(-4, 4) for _ in range(3))) for _ in range(3))
        t2 = tuple(pt(*(rng.randint(-4, 4) for _ in range(3))) for _ in range(3))
        a = pair_intersection_check(t1, t2)
        b = pair_intersection_check(t2, t1)
        assert a.admissible == b.admissible


# -- documented violations on the suspension placement ---------------------

def test_suspension_equator_containments(suspension_points, torus_catalog):
    verifier = EmbeddingVerifier(suspension_points)
    fgh = ("F", "G", "H")
    for face in (("C", "D", "F"), ("B", "C", "D"), ("B", "G", "H")):
        v = verifier.check(face, fgh)
        assert not v.admissible
        assert v.kind == "containment"


def test_suspension_embeds_exactly_six(suspension_points, torus_catalog):
    reports = verify_catalog(suspension_points, torus_catalog)
    embedded = [i for i, r in enumerate(reports) if r.embedded]
    assert embedded == [0, 1, 2, 4, 6, 8]


def test_suspension_embedded_set_is_symmetry_orbit(
    suspension_points, torus_catalog
):
    # the placement is invariant under a 3-fold rotation, a reflection and
    # the apex swap; relabeling an embedded triangulation by any of these
    # must land back in the embedded set
    rot = str.maketrans("ABCDEFGH", "ACDBEGHF")
    mirror = str.maketrans("ABCDEFGH", "ABDCEFHG")
    flip = str.maketrans("ABCDEFGH", "EBCDAFGH")
    reports = verify_catalog(suspension_points, torus_catalog)
    embedded = {
        frozenset(torus_catalog.triangulations[i].faces)
        for i, r in enumerate(reports)
        if r.embedded
    }
    assert len(embedded) == 6
    for perm in (rot, mirror, flip):
        for faces in embedded:
            relabeled = frozenset(
                tuple(sorted(v.translate(perm) for v in f)) for f in faces
            )
            assert relabeled in embedded


def test_full_catalogs_embed_on_reference_placements(
    schlegel16_points, rp2_points, moebius_points,
    torus_catalog, rp2_catalog, moebius_catalog,
):
    for points, catalog in (
        (schlegel16_points, torus_catalog),
        (rp2_points, rp2_catalog),
        (moebius_points, moebius_catalog),
    ):
        reports = verify_catalog(points, catalog)
        assert all(r.embedded for r in reports)
        assert all(r.pairs_checked == len(
            list(combinations(catalog.triangulations[0].faces, 2))
        ) for r in reports)


def test_verdicts_invariant_under_scaling(moebius_points, moebius_catalog):
    scaled = scale_placement(moebius_points, Fraction(7, 3))
    a = verify_catalog(moebius_points, moebius_catalog)
    b = verify_catalog(scaled, moebius_catalog)
    assert [r.verdict for r in a] == [r.verdict for r in b]


# -- independent oracle: Cramer-rule segment/triangle tests ----------------

def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _seg_hits_tri(p, q, a, b, c):
    """Closed segment [p,q] vs closed triangle abc in R^3 over Fractions.
    Returns True/False, or None when the segment is parallel to the plane
    (the caller skips those configurations)."""
    e1 = tuple(b[i] - a[i] for i in range(3))
    e2 = tuple(c[i] - a[i] for i in range(3))
    d = tuple(p[i] - q[i] for i in range(3))
    rhs = tuple(p[i] - a[i] for i in range(3))
    m = [[e1[i], e2[i], d[i]] for i in range(3)]
    det = _det3(m)
    if det == 0:
        return None
    sols = []
    for col in range(3):
        mm = [row[:] for row in m]
        for i in range(3):
            mm[i][col] = rhs[i]
        sols.append(Fraction(_det3(mm), det))
    u, v, t = sols
    return 0 <= u and 0 <= v and u + v <= 1 and 0 <= t <= 1


def _oracle_triangles_intersect(t1, t2):
    """None when any edge is parallel to the other triangle's plane."""
    verdicts = []
    for (tri_a, tri_b) in ((t1, t2), (t2, t1)):
        a, b, c = tri_b
        for p, q in combinations(tri_a, 2):
            r = _seg_hits_tri(p, q, a, b, c)
            if r is None:
                return None
            verdicts.append(r)
    return any(verdicts)


def test_exact_checker_agrees_with_cramer_oracle():
    rng = random.Random(20240812)
    checked = 0
    trials = 0
    while checked < 1000 and trials < 4000:
        trials += 1
        raw1 = [tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(3)]
        raw2 = [tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(3)]
        if len({*raw1, *raw2}) < 6:
            continue
        t1 = tuple(pt(*r) for r in raw1)
        t2 = tuple(pt(*r) for r in raw2)
        if face_is_degenerate(*t1) or face_is_degenerate(*t2):
            continue
        oracle = _oracle_triangles_intersect(raw1, raw2)
        if oracle is None:
            continue
        exact = pair_intersection_check(t1, t2, shared=[])
        assert exact.admissible == (not oracle), (raw1, raw2)
        checked += 1
    assert checked == 1000


# -- dimension 4 cross-checks ----------------------------------------------

def _in_triangle_r4(x, tri):
    """Exact membership of a point in a closed triangle in R^4."""
    a, b, c = tri
    u, w = b - a, c - a
    m = [[u.coords[i], w.coords[i]] for i in range(4)]
    rhs = [(x - a).coords[i] for i in range(4)]
    sol = solve_linear(m, rhs)
    if sol.kind != "unique":
        return False
    s, t = sol.particular
    one = QuadExt(1, ctx=s.ctx)
    return s.sign() >= 0 and t.sign() >= 0 and (one - s - t).sign() >= 0


def test_r4_admissible_pairs_have_no_sampled_overlap(rp2_points, rp2_catalog):
    verifier = EmbeddingVerifier(rp2_points)
    faces = rp2_catalog.triangulations[0].faces
    grid = [
        (Fraction(i, 5), Fraction(j, 5))
        for i in range(1, 5)
        for j in range(1, 5 - i)
    ]
    for f1, f2 in combinations(faces, 2):
        if set(f1) & set(f2):
            continue
        verdict = verifier.check(f1, f2)
        t1 = tuple(rp2_points[v] for v in f1)
        t2 = tuple(rp2_points[v] for v in f2)
        a, b, c = t1
        for s, t in grid:
            x = a + (b - a).scale(s) + (c - a).scale(t)
            hit = _in_triangle_r4(x, t2)
            if verdict.admissible:
                assert not hit
