"""Finite balls in the cube complex of a right-angled Coxeter system.

Vertices are group elements (normal forms); ``v_u`` and ``v_w`` are joined
when ``u^-1 w`` is a generator, and a cube is glued in over every coset
``b <C>`` of a clique ``C`` of the commutation graph.  A ball of radius ``r``
keeps the elements of length at most ``r`` and the cubes whose corners all
lie in it.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

import networkx as nx

from .graphs import DefiningGraph, cliques, max_clique_size
from .words import Word, elements_up_to, format_word, normalize, shortlex_key

Cube = tuple[Word, tuple[str, ...]]


def cube_corners(g: DefiningGraph, base: Word, clique: Iterable[str]) -> list[Word]:
    clique = tuple(clique)
    corners = []
    for r in range(len(clique) + 1):
        for sub in combinations(clique, r):
            corners.append(normalize(g, base + sub))
    return corners


@dataclass(frozen=True)
class CubeBall:
    graph: DefiningGraph
    radius: int
    vertices: tuple[Word, ...]
    edges: frozenset[frozenset[Word]]
    cubes: frozenset[Cube]
    # True when the whole group fits inside the ball
    complete: bool = False

    @cached_property
    def vertex_set(self) -> frozenset[Word]:
        return frozenset(self.vertices)

    @cached_property
    def adjacency(self) -> dict[Word, set[Word]]:
        adj: dict[Word, set[Word]] = {v: set() for v in self.vertices}
        for e in self.edges:
            u, w = tuple(e)
            adj[u].add(w)
            adj[w].add(u)
        return adj

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    def depth(self, v: Word) -> int:
        return len(v)

    def cubes_by_dim(self) -> dict[int, list[Cube]]:
        out: dict[int, list[Cube]] = {}
        for cube in self.cubes:
            out.setdefault(len(cube[1]), []).append(cube)
        for dim in out:
            out[dim].sort(key=lambda c: (shortlex_key(self.graph, c[0]), [self.graph.index(s) for s in c[1]]))
        return dict(sorted(out.items()))

    def corners(self, cube: Cube) -> list[Word]:
        return cube_corners(self.graph, *cube)

    def without_cube(self, cube: Cube) -> "CubeBall":
        return replace(self, cubes=self.cubes - {cube})

    def to_dict(self) -> dict:
        return {
            "radius": self.radius,
            "complete": self.complete,
            "generators": list(self.graph.vertices),
            "vertices": [format_word(v) for v in self.vertices],
            "edges": [[format_word(u), format_word(w)] for u, w in self.ordered_edges()],
            "cubes": {
                str(dim): [{"base": format_word(b), "clique": list(c)} for b, c in cubes]
                for dim, cubes in self.cubes_by_dim().items()
            },
        }

    def ordered_edges(self) -> list[tuple[Word, Word]]:
        key = lambda v: shortlex_key(self.graph, v)
        pairs = [tuple(sorted(e, key=key)) for e in self.edges]
        return sorted(pairs, key=lambda p: (key(p[0]), key(p[1])))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self, name: str = "X") -> str:
        lines = [f"graph {name} {{"]
        lines += [f'  "{format_word(v)}";' for v in self.vertices]
        ordered = self.ordered_edges()
        lines += [f'  "{format_word(u)}" -- "{format_word(w)}";' for u, w in ordered]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_ball(g: DefiningGraph, radius: int, with_cubes: bool = True) -> CubeBall:
    """Ball of the given radius about ``v_1``; ``with_cubes=False`` keeps only the 1-skeleton."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    vertices = elements_up_to(g, radius)
    vset = set(vertices)
    complete = not any(
        len(normalize(g, v + (s,))) > radius for v in vertices for s in g.vertices
    )
    edges = set()
    for v in vertices:
        for s in g.vertices:
            w = normalize(g, v + (s,))
            if w in vset:
                edges.add(frozenset((v, w)))
    cubes = set()
    all_cliques = cliques(g) if with_cubes else []
    for b in vertices:
        for clique in all_cliques:
            corners = cube_corners(g, b, clique)
            if all(c in vset for c in corners):
                base = min(corners, key=lambda c: shortlex_key(g, c))
                cubes.add((base, clique))
    return CubeBall(g, radius, tuple(vertices), frozenset(edges), frozenset(cubes), complete)


def interior_vertices(ball, k: int) -> list:
    """Vertices from which every path of length ``k`` stays in the ball."""
    if k < 0:
        raise ValueError("depth must be nonnegative")
    if ball.complete:
        return list(ball.vertices)
    return [v for v in ball.vertices if ball.depth(v) <= ball.radius - k]


class NotInterior(ValueError):
    pass


def link_graph(ball: CubeBall, v: Word) -> nx.Graph:
    """Link of ``v`` as seen by the 1-skeleton.

    Link vertices are the edge directions at ``v``; two directions are joined
    when the 1-skeleton contains a 4-cycle through both edges.
    """
    g = ball.graph
    adj = ball.adjacency
    link = nx.Graph()
    ends = {}
    for s in g.vertices:
        w = normalize(g, v + (s,))
        if w in adj[v]:
            link.add_node(s)
            ends[s] = w
    for s, t in combinations(link.nodes, 2):
        common = (adj[ends[s]] & adj[ends[t]]) - {v}
        if common:
            link.add_edge(s, t)
    return link


def link_simplices(ball: CubeBall, v: Word) -> set[frozenset[str]]:
    out = set()
    for cube in ball.cubes:
        if v in ball.corners(cube):
            out.add(frozenset(cube[1]))
    return out


def link_is_flag(ball: CubeBall, v: Word) -> bool:
    """Every set of pairwise-adjacent link vertices spans a simplex of the link."""
    if v not in ball:
        raise NotInterior(f"{format_word(v)} is not in the ball")
    if not ball.complete and len(v) > ball.radius - max_clique_size(ball.graph):
        raise NotInterior(f"{format_word(v)} is too close to the boundary")
    link = link_graph(ball, v)
    simplices = link_simplices(ball, v)
    for clique in nx.enumerate_all_cliques(link):
        if frozenset(clique) not in simplices:
            return False
    return True


class CubeDim(NamedTuple):
    dim: int
    exact: bool


def max_cube_dim(ball: CubeBall) -> CubeDim:
    """Largest cube dimension; ``exact`` is False when the radius is too small to hold a top cube."""
    dim = max((len(c) for _, c in ball.cubes), default=0)
    exact = ball.complete or ball.radius >= max_clique_size(ball.graph)
    return CubeDim(dim, exact)


PENDANTS = (-1, 1)


@dataclass(frozen=True)
class VPlusBall:
    """A ball of ``Y`` with a two-edge "v" hung from every vertex.

    Vertices are pairs ``(u, i)`` with ``i`` in ``{-1, 0, 1}``; ``(u, 0)`` is
    the original vertex ``v_u``.
    """

    base: CubeBall
    vertices: tuple[tuple[Word, int], ...] = field(init=False)
    edges: frozenset[frozenset[tuple[Word, int]]] = field(init=False)

    def __post_init__(self):
        verts = [(u, i) for u in self.base.vertices for i in (0, -1, 1)]
        edges = {frozenset(((u, 0), (w, 0))) for u, w in map(tuple, self.base.edges)}
        edges |= {frozenset(((u, 0), (u, i))) for u in self.base.vertices for i in PENDANTS}
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "edges", frozenset(edges))

    @property
    def graph(self) -> DefiningGraph:
        return self.base.graph

    @property
    def radius(self) -> int:
        return self.base.radius

    @property
    def complete(self) -> bool:
        return self.base.complete

    @cached_property
    def vertex_set(self):
        return frozenset(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertex_set

    def depth(self, v: tuple[Word, int]) -> int:
        return len(v[0])

    def to_dict(self) -> dict:
        def name(v):
            return f"{format_word(v[0])}^{v[1]}"
        return {
            "radius": self.radius,
            "complete": self.complete,
            "vertices": [name(v) for v in self.vertices],
            "edges": sorted(sorted(name(v) for v in e) for e in self.edges),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_dot(self, name: str = "Yplus") -> str:
        d = self.to_dict()
        lines = [f"graph {name} {{"]
        lines += [f'  "{v}";' for v in d["vertices"]]
        lines += [f'  "{u}" -- "{w}";' for u, w in d["edges"]]
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_vplus(ball: CubeBall) -> VPlusBall:
    return VPlusBall(ball)
