"""Defining graphs of right-angled Coxeter groups.

A defining graph is a finite simple graph with string labels.  The order in
which vertices are declared is significant: it is the total order used by
shortlex normal forms everywhere downstream.

Text format::

    # comment
    vertex a
    vertex d
    edge a d
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

import networkx as nx


class GraphFormatError(ValueError):
    """Raised when graph text cannot be parsed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class DefiningGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]] = frozenset()
    _adj: Mapping[str, frozenset[str]] = field(init=False, repr=False, compare=False)
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("duplicate vertex label")
        if any(not v or not isinstance(v, str) for v in vertices):
            raise ValueError("vertex labels must be nonempty strings")
        edges = frozenset(frozenset(e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        adj: dict[str, set[str]] = {v: set() for v in vertices}
        for e in edges:
            if len(e) != 2:
                raise ValueError(f"self-loop or malformed edge {sorted(e)}")
            u, v = sorted(e)
            if u not in adj or v not in adj:
                raise ValueError(f"edge {u} {v} has an unknown endpoint")
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(vertices)})

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[Iterable[str]] = ()) -> "DefiningGraph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        """Position of ``v`` in the shortlex order."""
        try:
            return self._index[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self._adj[v]
        except KeyError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def adjacent(self, u: str, v: str) -> bool:
        return v in self.neighbors(u)

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by vertex order."""
        pairs = [tuple(sorted(e, key=self.index)) for e in self.edges]
        return sorted(pairs, key=lambda p: (self.index(p[0]), self.index(p[1])))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g

    def subgraph(self, keep: Iterable[str]) -> "DefiningGraph":
        keep = set(keep)
        return DefiningGraph(
            tuple(v for v in self.vertices if v in keep),
            frozenset(e for e in self.edges if e <= keep),
        )

    def fresh_label(self, base: str) -> str:
        """``base`` with primes appended until it is not a vertex label."""
        label = base
        while label in self:
            label += "'"
        return label


def load_graph(text: str) -> DefiningGraph:
    vertices: list[str] = []
    seen: set[str] = set()
    edges: set[frozenset[str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise GraphFormatError(lineno, "expected 'vertex <label>'")
            if parts[1] in seen:
                raise GraphFormatError(lineno, f"duplicate vertex {parts[1]!r}")
            seen.add(parts[1])
            vertices.append(parts[1])
        elif kind == "edge":
            if len(parts) != 3:
                raise GraphFormatError(lineno, "expected 'edge <label> <label>'")
            u, v = parts[1], parts[2]
            for w in (u, v):
                if w not in seen:
                    raise GraphFormatError(lineno, f"unknown endpoint {w!r}")
            if u == v:
                raise GraphFormatError(lineno, f"self-loop at {u!r}")
            e = frozenset((u, v))
            if e in edges:
                raise GraphFormatError(lineno, f"repeated edge {u} {v}")
            edges.add(e)
        else:
            raise GraphFormatError(lineno, f"malformed line {raw.strip()!r}")
    return DefiningGraph(tuple(vertices), frozenset(edges))


def dump_graph(g: DefiningGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_to_dot(g: DefiningGraph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f'  "{v}";' for v in g.vertices]
    lines += [f'  "{u}" -- "{v}";' for u, v in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def link(g: DefiningGraph, v: str) -> frozenset[str]:
    return g.neighbors(v)


def star(g: DefiningGraph, v: str) -> frozenset[str]:
    return g.neighbors(v) | {v}


def components_outside_star(g: DefiningGraph, a: str) -> list[frozenset[str]]:
    """Connected components of the graph with St(a) deleted, in vertex order."""
    rest = g.subgraph(v for v in g.vertices if v not in star(g, a))
    comps = [frozenset(c) for c in nx.connected_components(rest.to_networkx())]
    return sorted(comps, key=lambda c: min(g.index(v) for v in c))


def is_central(g: DefiningGraph, a: str) -> bool:
    return star(g, a) == frozenset(g.vertices)


def max_clique_size(g: DefiningGraph) -> int:
    if not g.vertices:
        return 0
    return max(len(c) for c in nx.find_cliques(g.to_networkx()))


def cliques(g: DefiningGraph) -> list[tuple[str, ...]]:
    """All nonempty cliques, each listed in vertex order."""
    out = [tuple(sorted(c, key=g.index)) for c in nx.enumerate_all_cliques(g.to_networkx())]
    return sorted(out, key=lambda c: (len(c), [g.index(v) for v in c]))


class Validation(NamedTuple):
    ok: bool
    reason: str = ""
    order: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_partial_conjugation(g: DefiningGraph, a: str, domain: Iterable[str]) -> Validation:
    domain = frozenset(domain)
    if a not in g:
        return Validation(False, f"unknown vertex {a!r}")
    unknown = sorted(v for v in domain if v not in g)
    if unknown:
        return Validation(False, f"unknown vertex {unknown[0]!r} in domain")
    if not domain:
        return Validation(False, "domain is empty")
    met = domain & star(g, a)
    if met:
        return Validation(False, f"domain meets St({a}) at {sorted(met, key=g.index)}")
    for comp in components_outside_star(g, a):
        if comp & domain and not comp <= domain:
            return Validation(
                False,
                "domain is not a union of components: "
                f"{sorted(comp & domain, key=g.index)} is a proper subset of component "
                f"{sorted(comp, key=g.index)}",
            )
    return Validation(True)


def validate_transvection(g: DefiningGraph, a: str, d: str) -> Validation:
    for v in (a, d):
        if v not in g:
            return Validation(False, f"unknown vertex {v!r}")
    if a == d:
        return Validation(False, "acting letter equals domain letter")
    extra = star(g, d) - star(g, a)
    if extra:
        return Validation(False, f"St({d}) not contained in St({a}): {sorted(extra, key=g.index)}")
    return Validation(True)


def permutation_order(perm: Mapping[str, str]) -> int:
    order, current = 1, dict(perm)
    while any(current[v] != v for v in current):
        current = {v: perm[current[v]] for v in current}
        order += 1
    return order


def validate_graph_automorphism(g: DefiningGraph, perm: Mapping[str, str]) -> Validation:
    """Check that ``perm`` (missing labels are fixed) is an automorphism of ``g``."""
    unknown = sorted((set(perm) | set(perm.values())) - set(g.vertices))
    if unknown:
        return Validation(False, f"unknown vertex {unknown[0]!r}")
    full = {v: perm.get(v, v) for v in g.vertices}
    if len(set(full.values())) != len(full):
        return Validation(False, "not a bijection on vertices")
    problems = []
    for u, v in combinations(g.vertices, 2):
        fu, fv = full[u], full[v]
        if g.adjacent(u, v) and not g.adjacent(fu, fv):
            problems.append(f"edge {u}{v} maps to non-edge {fu}{fv}")
        elif not g.adjacent(u, v) and g.adjacent(fu, fv):
            problems.append(f"non-edge {u}{v} maps to edge {fu}{fv}")
    if problems:
        return Validation(False, "; ".join(problems))
    return Validation(True, order=permutation_order(full))
