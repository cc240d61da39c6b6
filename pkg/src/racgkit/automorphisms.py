"""The three generating families of automorphisms of a right-angled Coxeter group.

Automorphism strings::

    graphauto a1>a2 a2>a1
    pconj acting=a5 domain=a6[,...]
    transvection acting=a domain=d
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .graphs import (
    DefiningGraph,
    validate_graph_automorphism,
    validate_partial_conjugation,
    validate_transvection,
)
from .words import Word, check_letters, normalize


class InvalidAutomorphism(ValueError):
    pass


@dataclass(frozen=True)
class GraphAuto:
    graph: DefiningGraph
    perm: tuple[tuple[str, str], ...]

    def __post_init__(self):
        full = tuple((v, dict(self.perm).get(v, v)) for v in self.graph.vertices)
        check = validate_graph_automorphism(self.graph, dict(self.perm))
        if not check:
            raise InvalidAutomorphism(check.reason)
        object.__setattr__(self, "perm", full)

    @classmethod
    def from_mapping(cls, graph: DefiningGraph, perm: Mapping[str, str]) -> "GraphAuto":
        return cls(graph, tuple(perm.items()))

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.perm)

    def image(self, s: str) -> Word:
        return (self.mapping[s],)

    def describe(self) -> str:
        moved = [f"{v}>{w}" for v, w in self.perm if v != w]
        return "graphauto " + " ".join(moved) if moved else "graphauto"


@dataclass(frozen=True)
class PartialConj:
    graph: DefiningGraph
    acting: str
    domain: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        check = validate_partial_conjugation(self.graph, self.acting, self.domain)
        if not check:
            raise InvalidAutomorphism(check.reason)

    def image(self, s: str) -> Word:
        a = self.acting
        return (a, s, a) if s in self.domain else (s,)

    def describe(self) -> str:
        dom = ",".join(sorted(self.domain, key=self.graph.index))
        return f"pconj acting={self.acting} domain={dom}"


@dataclass(frozen=True)
class Transvection:
    graph: DefiningGraph
    acting: str
    domain: str

    def __post_init__(self):
        check = validate_transvection(self.graph, self.acting, self.domain)
        if not check:
            raise InvalidAutomorphism(check.reason)

    def image(self, s: str) -> Word:
        return (s, self.acting) if s == self.domain else (s,)

    def describe(self) -> str:
        return f"transvection acting={self.acting} domain={self.domain}"


Automorphism = Union[GraphAuto, PartialConj, Transvection]


def apply(phi: Automorphism, w: Iterable[str]) -> Word:
    g = phi.graph
    letters: list[str] = []
    for s in check_letters(g, w):
        letters.extend(phi.image(s))
    return normalize(g, letters)


def apply_power(phi: Automorphism, w: Sequence[str], k: int) -> Word:
    out = normalize(phi.graph, w)
    for _ in range(k):
        out = apply(phi, out)
    return out


def aut_order(phi: Automorphism, limit: int = 10_000) -> int:
    """Order of ``phi``, found by iterating on every generator.

    The expected order (2 for partial conjugations and transvections, the
    permutation order for graph automorphisms) is checked, not assumed.
    """
    g = phi.graph
    gens = [(s,) for s in g.vertices]
    current = list(gens)
    for k in range(1, limit + 1):
        current = [apply(phi, w) for w in current]
        if current == gens:
            break
    else:
        raise InvalidAutomorphism(f"order exceeds {limit}")
    if isinstance(phi, GraphAuto):
        expected = validate_graph_automorphism(g, phi.mapping).order
    else:
        expected = 2
    if k != expected:
        raise InvalidAutomorphism(f"computed order {k}, expected {expected}")
    return k


def parse_automorphism(graph: DefiningGraph, text: str) -> Automorphism:
    parts = text.split()
    if not parts:
        raise InvalidAutomorphism("empty automorphism spec")
    kind, args = parts[0], parts[1:]
    if kind == "graphauto":
        perm = {}
        for item in args:
            src, sep, dst = item.partition(">")
            if not sep or not src or not dst:
                raise InvalidAutomorphism(f"bad graphauto item {item!r}")
            if src in perm:
                raise InvalidAutomorphism(f"{src!r} mapped twice")
            perm[src] = dst
        return GraphAuto.from_mapping(graph, perm)
    fields = {}
    for item in args:
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidAutomorphism(f"expected key=value, got {item!r}")
        fields[key] = value
    if set(fields) != {"acting", "domain"}:
        raise InvalidAutomorphism(f"{kind} needs acting= and domain=")
    if kind == "pconj":
        domain = frozenset(v for v in fields["domain"].split(",") if v)
        return PartialConj(graph, fields["acting"], domain)
    if kind == "transvection":
        return Transvection(graph, fields["acting"], fields["domain"])
    raise InvalidAutomorphism(f"unknown automorphism kind {kind!r}")
