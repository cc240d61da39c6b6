"""Candidate isometries of cube-complex balls and checks on them.

A candidate isometry is a partial injective map on the vertices of a ball
(a :class:`VertexMap`).  Group actions are assigned generator by generator
(:class:`ActionAssignment`) and checked on the ball: adjacency, relators,
kernels, stabilizers and invariant cubes.

Composites follow the homomorphism convention ``Phi(g1 g2) = Phi(g1) o Phi(g2)``,
so the rightmost letter of a word acts first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .automorphisms import Automorphism, GraphAuto, apply
from .cubes import CubeBall, VPlusBall, interior_vertices
from .extensions import ExtElement, GroupPresentation, TransvectionContext, build_P3, rewrite_in_sprime
from .graphs import validate_graph_automorphism
from .report import FAIL, PASS, VACUOUS, CheckResult
from .words import Word, format_word, normalize, parity

Vertex = Hashable


def vertex_name(v: Vertex) -> str:
    if isinstance(v, tuple) and len(v) == 2 and isinstance(v[1], int):
        return f"v_{format_word(v[0])}^{v[1]}"
    return f"v_{format_word(v)}"


@dataclass
class VertexMap:
    ball: object
    mapping: dict

    def __post_init__(self):
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValueError("vertex map is not injective")

    def __call__(self, v: Vertex):
        return self.mapping.get(v)

    @property
    def domain(self) -> list:
        return [v for v in self.ball.vertices if v in self.mapping]

    def compose(self, other: "VertexMap") -> "VertexMap":
        """``self o other``: apply ``other`` first."""
        out = {}
        for v, w in other.mapping.items():
            if w in self.mapping:
                out[v] = self.mapping[w]
        return VertexMap(self.ball, out)

    def fixes(self, vertices: Iterable[Vertex]) -> bool:
        return all(self.mapping.get(v, v) == v for v in vertices)

    def is_identity(self) -> bool:
        return all(v == w for v, w in self.mapping.items())


def _map_from_rule(ball, rule: Callable[[Vertex], Vertex]) -> VertexMap:
    out = {}
    for v in ball.vertices:
        w = rule(v)
        if w in ball:
            out[v] = w
    return VertexMap(ball, out)


def left_mult_map(ball: CubeBall, w: Sequence[str]) -> VertexMap:
    g = ball.graph
    w = normalize(g, w)
    return _map_from_rule(ball, lambda u: normalize(g, w + u))


def graph_auto_map(ball: CubeBall, perm: Mapping[str, str]) -> VertexMap:
    check = validate_graph_automorphism(ball.graph, perm)
    if not check:
        raise ValueError(check.reason)
    f = GraphAuto.from_mapping(ball.graph, perm)
    return _map_from_rule(ball, lambda u: apply(f, u))


def naive_phi_map(ball: CubeBall, phi: Automorphism) -> VertexMap:
    """``v_w -> v_phi(w)``; an isometry only for graph automorphisms."""
    return _map_from_rule(ball, lambda u: apply(phi, u))


def check_adjacency(vmap: VertexMap) -> list[tuple[Vertex, Vertex]]:
    """Edges with both ends in the domain whose images are not an edge."""
    bad = []
    order = {v: i for i, v in enumerate(vmap.ball.vertices)}
    for e in vmap.ball.edges:
        u, w = sorted(e, key=order.__getitem__)
        if u in vmap.mapping and w in vmap.mapping:
            if frozenset((vmap.mapping[u], vmap.mapping[w])) not in vmap.ball.edges:
                bad.append((u, w))
    return sorted(bad, key=lambda p: (order[p[0]], order[p[1]]))


@dataclass
class ActionAssignment:
    presentation: GroupPresentation
    maps: dict[str, VertexMap]
    ball: object
    # writes a group element as a word in the presentation's generators
    spell: Callable[[object], Sequence[str]] | None = None
    name: str = ""

    def __post_init__(self):
        missing = [s for s in self.presentation.generators if s not in self.maps]
        if missing:
            raise KeyError(f"no map assigned to generator {missing[0]!r}")

    def apply_word(self, word: Sequence[str], v: Vertex):
        for s in reversed(word):
            try:
                v = self.maps[s].mapping.get(v)
            except KeyError:
                raise KeyError(f"no map assigned to generator {s!r}") from None
            if v is None:
                return None
        return v

    def composite(self, word: Sequence[str]) -> VertexMap:
        out = {}
        for v in self.ball.vertices:
            w = self.apply_word(word, v)
            if w is not None:
                out[v] = w
        return VertexMap(self.ball, out)

    def element_map(self, element) -> VertexMap:
        if self.spell is None:
            raise ValueError("assignment cannot spell group elements")
        return self.composite(self.spell(element))


def check_relators(assignment: ActionAssignment, depth: int | None = None) -> list[CheckResult]:
    """Check that each relator acts trivially wherever it can be evaluated.

    A relator is tested on every vertex from which all of its letters can be
    applied without leaving the ball; ``depth`` further restricts the test to
    vertices at least that far from the boundary.  Relator families with no
    members and relators with an empty test domain are reported as vacuous.
    """
    ball = assignment.ball
    pres = assignment.presentation
    candidates = ball.vertices if depth is None else interior_vertices(ball, depth)
    results = []
    for family, count in pres.family_counts().items():
        if count == 0:
            results.append(CheckResult(
                f"family {family}", VACUOUS, "relator family is empty for this input",
                domain_size=0, mandatory=False, expect_vacuous=True,
            ))
    for r in pres.relators:
        tested = 0
        moved = []
        for v in candidates:
            w = assignment.apply_word(r.word, v)
            if w is None:
                continue
            tested += 1
            if w != v:
                moved.append(f"{vertex_name(v)} -> {vertex_name(w)}")
        status = VACUOUS if tested == 0 else (FAIL if moved else PASS)
        results.append(CheckResult(
            f"relator {format_word(r.word)} [{r.family}]", status, "relator acts trivially",
            domain_size=tested, witnesses=moved[:3],
        ))
    return results


@dataclass
class KernelResult:
    kernel: list
    inconclusive: list = field(default_factory=list)
    # element -> a vertex it moves, for every element outside the kernel
    moved: dict = field(default_factory=dict)


def kernel_on_ball(assignment: ActionAssignment, elements: Iterable) -> KernelResult:
    """Elements among ``elements`` that act as the identity on this ball."""
    out = KernelResult([])
    for e in elements:
        m = assignment.element_map(e)
        if not m.mapping:
            out.inconclusive.append(e)
            continue
        witness = next((v for v, w in m.mapping.items() if v != w), None)
        if witness is None:
            out.kernel.append(e)
        else:
            out.moved[e] = witness
    return out


def stabilizer(assignment: ActionAssignment, elements: Iterable, vertex: Vertex) -> list:
    out = []
    for e in elements:
        if assignment.apply_word(assignment.spell(e), vertex) == vertex:
            out.append(e)
    return out


def orbit_count(maps: Iterable[VertexMap], ball) -> int:
    """Number of vertex orbits of the group generated by ``maps``, on the ball."""
    parent = {v: v for v in ball.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for m in maps:
        for v, w in m.mapping.items():
            rv, rw = find(v), find(w)
            if rv != rw:
                parent[rv] = rw
    return len({find(v) for v in ball.vertices})


def fixed_cells_min_dim(vmap: VertexMap, ball: CubeBall | None = None) -> int | None:
    """Smallest dimension of a cube the map preserves setwise.

    0 if some vertex is fixed; otherwise the least ``|C|`` over cubes wholly
    in the domain that are mapped onto themselves; ``None`` if there is none.
    """
    ball = ball or vmap.ball
    if any(v == w for v, w in vmap.mapping.items()):
        return 0
    best = None
    for cube in ball.cubes:
        corners = ball.corners(cube)
        if not all(c in vmap.mapping for c in corners):
            continue
        if {vmap.mapping[c] for c in corners} == set(corners):
            dim = len(cube[1])
            if best is None or dim < best:
                best = dim
    return best


# --- the actions of the three extensions -----------------------------------


def left_mult_assignment(presentation: GroupPresentation, ball: CubeBall,
                         images: Mapping[str, Sequence[str]], spell=None, name="",
                         extra: Mapping[str, VertexMap] | None = None) -> ActionAssignment:
    """Generators act by left multiplication by ``images``; ``extra`` supplies other maps."""
    maps = {s: left_mult_map(ball, w) for s, w in images.items()}
    maps.update(extra or {})
    return ActionAssignment(presentation, maps, ball, spell, name)


def transvection_z_rule(ctx: TransvectionContext, u: Sequence[str]) -> Word:
    """``p(z u)``: ``phi(u)`` if ``h_d(u) = 0``, else ``phi(u) a``, written over ``S'``."""
    ks = ctx.ks
    image = apply(ctx.phi, ks.expand(u))
    if parity(u, ctx.d):
        image = image + (ctx.a,)
    return rewrite_in_sprime(ks, image)


def transvection_action_on_Y(ctx: TransvectionContext, yball: CubeBall, presentation=None,
                             parity_split: bool = True) -> ActionAssignment:
    """Generators of the transvection extension acting on a ball of ``Y``.

    ``parity_split=False`` puts the ``a`` correction of the ``z`` rule on the
    wrong side (``a phi(u)`` instead of ``phi(u) a``); it exists only to show
    that the checks notice.
    """
    ks = ctx.ks
    if yball.graph != ks.prime_graph:
        raise ValueError("ball was not built over this kernel system")
    maps = {s: left_mult_map(yball, (s,)) for s in ks.sprime}
    maps[ctx.a] = _map_from_rule(yball, ks.apply_theta)
    rule = transvection_z_rule if parity_split else _left_corrected_z_rule
    maps[ctx.z] = _map_from_rule(yball, lambda u: rule(ctx, u))
    return ActionAssignment(presentation or build_P3(ctx), maps, yball, ctx.spell, "Y")


def _left_corrected_z_rule(ctx: TransvectionContext, u: Sequence[str]) -> Word:
    image = apply(ctx.phi, ctx.ks.expand(u))
    if parity(u, ctx.d):
        image = (ctx.a,) + image
    return rewrite_in_sprime(ctx.ks, image)


def projection_map(ctx: TransvectionContext, yball: CubeBall, g: ExtElement) -> VertexMap:
    """``v_u -> v_p(g u)`` computed directly in ``G``; independent of the generator rules."""
    def rule(u):
        return ctx.project(ctx.multiply(g, ctx.element(ctx.ks.expand(u))))
    return _map_from_rule(yball, rule)


class NotCentral(ValueError):
    pass


def vplus_action(ctx: TransvectionContext, vplus: VPlusBall, presentation=None) -> ActionAssignment:
    """Central case: ``S'`` translates, ``a`` flips every "v", ``z`` flips those with odd ``d``."""
    if not ctx.ks.central:
        raise NotCentral(f"{ctx.a} is not central")
    g = vplus.graph
    d = ctx.d

    def translate(s):
        def rule(v):
            u, i = v
            return (normalize(g, (s,) + u), i)
        return rule

    maps = {s: _map_from_rule(vplus, translate(s)) for s in ctx.ks.sprime}
    maps[ctx.a] = _map_from_rule(vplus, lambda v: (v[0], -v[1]))
    maps[ctx.z] = _map_from_rule(vplus, lambda v: (v[0], -v[1]) if parity(v[0], d) else v)
    return ActionAssignment(presentation or build_P3(ctx), maps, vplus, ctx.spell, "Y+")
