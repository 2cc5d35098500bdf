"""Vertex-labeled graphs, simplicial 2-complexes, and surface classification.

Triangulations here are purely combinatorial: a set of triangles (3-cliques)
over a fixed labeled graph.  Two triangulations are the same object iff their
face sets are equal; all ordering is lexicographic on vertex labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

Triangle = tuple[str, str, str]  # sorted label triple


def make_triangle(u: str, v: str, w: str) -> Triangle:
    t = tuple(sorted((u, v, w)))
    if len(set(t)) != 3:
        raise ValueError(f"degenerate triangle {t}")
    return t


@dataclass(frozen=True)
class LabeledGraph:
    name: str
    vertices: tuple[str, ...]
    edges: frozenset[frozenset]

    def __post_init__(self):
        for e in self.edges:
            u, v = sorted(e)
            if u == v or u not in self.vertices or v not in self.vertices:
                raise ValueError(f"bad edge {set(e)} in graph {self.name}")

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, v: str) -> list[str]:
        return sorted(u for e in self.edges if v in e for u in e if u != v)


def build_graph(name: str) -> LabeledGraph:
    """Construct one of the named graphs with canonical vertex labels.

    k2222 is K_8 on A..H minus the perfect matching {AE, BF, CG, DH};
    octahedron is K_{2,2,2} on B,C,D,F,G,H minus {BF, CG, DH}.
    """
    if name == "k2222":
        vertices = tuple("ABCDEFGH")
        forbidden = {frozenset(p) for p in ("AE", "BF", "CG", "DH")}
    elif name == "k6":
        vertices = ("A", "B", "C", "D", "E", "O")
        forbidden = set()
    elif name == "k5":
        vertices = tuple("ABCDE")
        forbidden = set()
    elif name == "octahedron":
        vertices = tuple("BCDFGH")
        forbidden = {frozenset(p) for p in ("BF", "CG", "DH")}
    else:
        raise ValueError(f"unknown graph name: {name!r}")
    edges = frozenset(
        frozenset(p) for p in combinations(vertices, 2) if frozenset(p) not in forbidden
    )
    return LabeledGraph(name, vertices, edges)


def enumerate_cliques3(graph: LabeledGraph) -> list[Triangle]:
    """All 3-cliques of the graph, in canonical (lexicographic) order."""
    return [
        t
        for t in combinations(graph.vertices, 3)
        if graph.has_edge(t[0], t[1])
        and graph.has_edge(t[0], t[2])
        and graph.has_edge(t[1], t[2])
    ]


@dataclass(frozen=True)
class Triangulation:
    graph: LabeledGraph
    faces: tuple[Triangle, ...]  # canonical order

    @staticmethod
    def from_faces(graph: LabeledGraph, faces) -> "Triangulation":
        canon = tuple(sorted(set(map(tuple, faces))))
        t = Triangulation(graph, canon)
        t.validate()
        return t

    def validate(self):
        counts = edge_face_counts(self)
        for e in self.graph.edges:
            if counts.get(e, 0) < 1:
                raise ValueError(f"edge {sorted(e)} not covered by any face")
        for e, c in counts.items():
            if e not in self.graph.edges:
                raise ValueError(f"face edge {sorted(e)} not in graph")
            if c > 2:
                raise ValueError(f"edge {sorted(e)} lies in {c} > 2 faces")

    def encoding(self) -> tuple[Triangle, ...]:
        """Canonical identity: the sorted face tuple."""
        return self.faces


def edge_face_counts(t: Triangulation) -> dict:
    counts: dict = {}
    for f in t.faces:
        for i, j in ((0, 1), (0, 2), (1, 2)):
            e = frozenset((f[i], f[j]))
            counts[e] = counts.get(e, 0) + 1
    return counts


@dataclass(frozen=True)
class SurfaceClass:
    euler: int
    orientable: bool
    boundary_components: int
    is_manifold: bool
    name: str


def _link_graph(t: Triangulation, v: str) -> dict:
    """Adjacency (neighbor -> set of neighbors) of the link of v."""
    adj: dict = {}
    for f in t.faces:
        if v in f:
            u, w = (x for x in f if x != v)
            adj.setdefault(u, set()).add(w)
            adj.setdefault(w, set()).add(u)
    return adj


def _link_shape(adj: dict) -> str:
    """Classify a link graph as 'cycle', 'path' or 'invalid'."""
    if not adj:
        return "invalid"
    degs = [len(s) for s in adj.values()]
    if any(d > 2 for d in degs):
        return "invalid"
    # connectivity
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != len(adj):
        return "invalid"
    ends = sum(1 for d in degs if d == 1)
    if ends == 0 and all(d == 2 for d in degs):
        return "cycle"
    if ends == 2:
        return "path"
    return "invalid"


def _orientable(t: Triangulation, start_index: int = 0) -> bool:
    """Propagate face orientations across interior (2-face) edges."""
    faces = t.faces
    if not faces:
        return True
    edge_to_faces: dict = {}
    for i, f in enumerate(faces):
        for a, b in ((0, 1), (0, 2), (1, 2)):
            edge_to_faces.setdefault(frozenset((f[a], f[b])), []).append(i)

    def directed_edges(face, flip):
        u, v, w = face
        order = (u, w, v) if flip else (u, v, w)
        return [(order[0], order[1]), (order[1], order[2]), (order[2], order[0])]

    orient = {}
    for seed in list(range(start_index, len(faces))) + list(range(start_index)):
        if seed in orient:
            continue
        orient[seed] = False
        queue = [seed]
        while queue:
            i = queue.pop()
            for u, v in directed_edges(faces[i], orient[i]):
                for j in edge_to_faces[frozenset((u, v))]:
                    if j == i:
                        continue
                    # consistent orientation: shared edge traversed oppositely
                    need_flip = (u, v) in directed_edges(faces[j], False)
                    if j not in orient:
                        orient[j] = need_flip
                        queue.append(j)
                    elif orient[j] != need_flip:
                        return False
    return True


def _boundary_components(t: Triangulation) -> int:
    counts = edge_face_counts(t)
    boundary = [e for e, c in counts.items() if c == 1]
    if not boundary:
        return 0
    adj: dict = {}
    for e in boundary:
        u, v = sorted(e)
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    comps = 0
    seen: set = set()
    for v in adj:
        if v in seen:
            continue
        comps += 1
        stack = [v]
        seen.add(v)
        while stack:
            for u in adj[stack.pop()]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return comps


def classify_surface(t: Triangulation, orientation_start: int = 0) -> SurfaceClass:
    """Classify the underlying surface of a simplicial 2-complex.

    Manifoldness requires every vertex link to be a single cycle (interior
    vertex) or single path (boundary vertex); non-manifold complexes get
    name "other/invalid".
    """
    V = len(t.graph.vertices)
    E = len(t.graph.edges)
    F = len(t.faces)
    euler = V - E + F

    shapes = [_link_shape(_link_graph(t, v)) for v in t.graph.vertices]
    counts = edge_face_counts(t)
    manifold = (
        all(s in ("cycle", "path") for s in shapes)
        and all(1 <= counts.get(e, 0) <= 2 for e in t.graph.edges)
    )
    # a cycle link must use every graph neighbor of the vertex
    if manifold:
        for v, s in zip(t.graph.vertices, shapes):
            link = _link_graph(t, v)
            if set(link) != set(t.graph.neighbors(v)):
                manifold = False
                break

    boundary = _boundary_components(t)
    orientable = _orientable(t, orientation_start)

    if not manifold:
        name = "other/invalid"
    elif boundary == 0:
        name = {
            (2, True): "sphere",
            (0, True): "torus",
            (0, False): "Klein bottle",
            (1, False): "projective plane",
        }.get((euler, orientable), "other/invalid")
    elif boundary == 1 and euler == 1 and orientable:
        name = "disk"
    elif boundary == 1 and euler == 0 and not orientable:
        name = "Möbius band"
    else:
        name = "other/invalid"

    return SurfaceClass(euler, orientable, boundary, manifold, name)


SURFACE_NAMES = {
    "torus": "torus",
    "projective-plane": "projective plane",
    "moebius": "Möbius band",
    "klein-bottle": "Klein bottle",
    "sphere": "sphere",
    "disk": "disk",
}
