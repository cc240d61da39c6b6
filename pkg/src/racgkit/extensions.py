"""Split extensions of a right-angled Coxeter group by a finite cyclic group.

An element ``(w, k)`` of ``W x|_phi Z/m`` stands for ``w z^k``; the product is
``(w1, k1)(w2, k2) = (w1 phi^k1(w2), k1 + k2 mod m)``.

Besides the multiplication this module builds the presentations used to
describe the extension, the defining graph of the extension by a partial
conjugation, and the index-two subsystem ``(U, S')`` used for transvections.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .automorphisms import (
    Automorphism,
    GraphAuto,
    InvalidAutomorphism,
    PartialConj,
    Transvection,
    apply,
    apply_power,
    aut_order,
)
from .graphs import (
    DefiningGraph,
    is_central,
    link,
    star,
    validate_partial_conjugation,
)
from .report import FAIL, PASS, VACUOUS, CheckResult
from .words import IDENTITY, Word, check_letters, elements_up_to, format_word, inverse, normalize, parity


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ExtElement:
    w: Word
    k: int = 0

    def __str__(self) -> str:
        z = "" if self.k == 0 else ("z" if self.k == 1 else f"z^{self.k}")
        if not self.w:
            return z or "1"
        return format_word(self.w) + (f" {z}" if z else "")


class ExtContext:
    """The group ``W x|_phi Z/m`` for one automorphism ``phi``."""

    def __init__(self, phi: Automorphism, m: int | None = None, z_label: str = "z"):
        self.phi = phi
        self.graph = phi.graph
        order = aut_order(phi)
        if m is None:
            m = order
        if m < 1 or m % order:
            raise InvalidAutomorphism(f"m={m} is not a multiple of the order {order}")
        self.m = m
        if z_label in self.graph:
            raise ValueError(f"label {z_label!r} already names a vertex")
        self.z = z_label

    @property
    def identity(self) -> ExtElement:
        return ExtElement(IDENTITY, 0)

    def element(self, w: Iterable[str] = (), k: int = 0) -> ExtElement:
        return ExtElement(normalize(self.graph, w), k % self.m)

    def gen(self, label: str) -> ExtElement:
        if label == self.z:
            return ExtElement(IDENTITY, 1 % self.m)
        return self.element((label,))

    def _check(self, e: ExtElement) -> None:
        if not 0 <= e.k < self.m:
            raise ContextMismatch(f"exponent {e.k} outside Z/{self.m}")
        check_letters(self.graph, e.w)

    def multiply(self, *elements: ExtElement) -> ExtElement:
        out = self.identity
        for e in elements:
            self._check(e)
            twisted = apply_power(self.phi, e.w, out.k)
            out = ExtElement(normalize(self.graph, out.w + twisted), (out.k + e.k) % self.m)
        return out

    def inverse(self, e: ExtElement) -> ExtElement:
        # (w z^k)^-1 = z^-k w^-1 = phi^-k(w^-1) z^-k
        back = (-e.k) % self.m
        return ExtElement(apply_power(self.phi, inverse(e.w), back), back)

    def power(self, e: ExtElement, n: int) -> ExtElement:
        return self.multiply(*([e] * n))

    def element_order(self, e: ExtElement, bound: int) -> int | None:
        if bound < 1:
            raise ValueError("bound must be at least 1")
        current = e
        for k in range(1, bound + 1):
            if current == self.identity:
                return k
            current = self.multiply(current, e)
        return None

    def evaluate(self, word: Sequence[str], images: Mapping[str, ExtElement] | None = None) -> ExtElement:
        """Product of the images of the letters of ``word`` (generators by default)."""
        return self.multiply(*(images[s] if images and s in images else self.gen(s) for s in word))

    def spell(self, e: ExtElement) -> Word:
        """A word in ``S`` and ``z`` representing ``e``."""
        return tuple(e.w) + (self.z,) * e.k

    def elements(self, max_length: int) -> list[ExtElement]:
        return [ExtElement(w, k) for w in elements_up_to(self.graph, max_length) for k in range(self.m)]


def ext_multiply(ctx: ExtContext, e1: ExtElement, e2: ExtElement) -> ExtElement:
    return ctx.multiply(e1, e2)


def ext_element_order(ctx: ExtContext, e: ExtElement, bound: int) -> int | None:
    return ctx.element_order(e, bound)


class GraphAutoGroupContext:
    """``W x| H`` for a finite group ``H`` of graph automorphisms.

    ``H`` is the closure of the given permutations under composition;
    elements are ``(w, h)`` with ``h`` a permutation in vertex order.
    """

    def __init__(self, graph: DefiningGraph, perms: Iterable[Mapping[str, str]]):
        self.graph = graph
        gens = [GraphAuto.from_mapping(graph, p) for p in perms]
        ident = tuple(graph.vertices)
        group = {ident}
        frontier = [ident]
        gen_tuples = [tuple(f.mapping[v] for v in graph.vertices) for f in gens]
        while frontier:
            nxt = []
            for h in frontier:
                for f in gen_tuples:
                    c = self._compose(h, f)
                    if c not in group:
                        group.add(c)
                        nxt.append(c)
            frontier = nxt
        self.group = sorted(group, key=lambda h: [graph.index(v) for v in h])
        self.generators = gen_tuples

    def _compose(self, h1, h2):
        # (h1 o h2)(v) = h1(h2(v))
        pos = {v: i for i, v in enumerate(self.graph.vertices)}
        return tuple(h1[pos[h2[i]]] for i in range(len(h2)))

    def act(self, h, w: Sequence[str]) -> Word:
        pos = {v: i for i, v in enumerate(self.graph.vertices)}
        return normalize(self.graph, [h[pos[s]] for s in w])

    @property
    def identity(self):
        return (IDENTITY, tuple(self.graph.vertices))

    def multiply(self, *elements):
        w, h = self.identity
        for w2, h2 in elements:
            w = normalize(self.graph, w + self.act(h, w2))
            h = self._compose(h, h2)
        return (w, h)

    def elements(self, max_length: int):
        return [(w, h) for w in elements_up_to(self.graph, max_length) for h in self.group]


# --- presentations -----------------------------------------------------------


@dataclass(frozen=True)
class Relator:
    word: Word
    family: str = ""


@dataclass
class GroupPresentation:
    generators: tuple[str, ...]
    relators: list[Relator]
    # every relator family the construction knows about, including empty ones
    families: tuple[str, ...] = ()

    def __post_init__(self):
        gens = set(self.generators)
        for r in self.relators:
            bad = [s for s in r.word if s not in gens]
            if bad:
                raise ValueError(f"relator {format_word(r.word)} uses undeclared {bad[0]!r}")

    @property
    def words(self) -> list[Word]:
        return [r.word for r in self.relators]

    def family_counts(self) -> dict[str, int]:
        counts = {f: 0 for f in self.families}
        for r in self.relators:
            counts[r.family] = counts.get(r.family, 0) + 1
        return counts

    def to_text(self) -> str:
        lines = ["gen " + " ".join(self.generators)]
        lines += ["rel " + " ".join(r.word) for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupPresentation":
        gens: tuple[str, ...] = ()
        rels = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            kind, _, rest = line.partition(" ")
            if kind == "gen":
                gens = tuple(rest.split())
            elif kind == "rel":
                rels.append(Relator(tuple(rest.split())))
            else:
                raise ValueError(f"malformed presentation line {line!r}")
        return cls(gens, rels)


def _commutator(s: str, t: str) -> Word:
    return (s, t, s, t)


def _cancel_involutions(word: Sequence[str], involutions: set[str]) -> Word:
    out: list[str] = []
    for s in word:
        if out and out[-1] == s and s in involutions:
            out.pop()
        else:
            out.append(s)
    return tuple(out)


class _Builder:
    def __init__(self):
        self.relators: list[Relator] = []
        self.families: list[str] = []
        self._seen: set[Word] = set()

    def family(self, name: str) -> None:
        if name not in self.families:
            self.families.append(name)

    def add(self, word: Sequence[str], family: str) -> None:
        self.family(family)
        word = tuple(word)
        if word and word not in self._seen:
            self._seen.add(word)
            self.relators.append(Relator(word, family))


def racg_presentation(g: DefiningGraph) -> GroupPresentation:
    b = _Builder()
    b.family("s^2")
    b.family("[s,t]")
    for s in g.vertices:
        b.add((s, s), "s^2")
    for s, t in g.sorted_edges():
        b.add(_commutator(s, t), "[s,t]")
    return GroupPresentation(tuple(g.vertices), b.relators, tuple(b.families))


def build_P1(ctx: ExtContext) -> GroupPresentation:
    """Generators ``S + {z}``; relators ``s^2``, ``[s,t]``, ``z^m``, ``z s z^-1 phi(s)^-1``."""
    g, z = ctx.graph, ctx.z
    b = _Builder()
    for s in g.vertices:
        b.add((s, s), "s^2")
    for s, t in g.sorted_edges():
        b.add(_commutator(s, t), "[s,t]")
    b.add((z,) * ctx.m, "z^m")
    z_inv = (z,) * (ctx.m - 1)
    for s in g.vertices:
        word = (z, s) + z_inv + inverse(apply(ctx.phi, (s,)))
        b.add(_cancel_involutions(word, set(g.vertices)), "z s z^-1 = phi(s)")
    return GroupPresentation(tuple(g.vertices) + (z,), b.relators, tuple(b.families))


# --- extension by a partial conjugation ---------------------------------------


@dataclass(frozen=True)
class LambdaLabels:
    x: str
    ax: str


def lambda_labels(g: DefiningGraph, a: str) -> LambdaLabels:
    x = g.fresh_label("x")
    ax = a + x
    while ax in g or ax == x:
        ax += "'"
    return LambdaLabels(x, ax)


def lambda_graph(g: DefiningGraph, a: str, domain: Iterable[str]) -> DefiningGraph:
    """Defining graph of ``W x| <phi>`` for the partial conjugation ``(a, domain)``.

    A new vertex ``x`` is joined to every vertex outside the domain, the
    vertex ``a`` is renamed ``ax`` and joined to every vertex of the domain.
    """
    domain = frozenset(domain)
    check = validate_partial_conjugation(g, a, domain)
    if not check:
        raise InvalidAutomorphism(check.reason)
    lab = lambda_labels(g, a)
    rename = {v: (lab.ax if v == a else v) for v in g.vertices}
    vertices = tuple(rename[v] for v in g.vertices) + (lab.x,)
    edges = {frozenset(rename[v] for v in e) for e in g.edges}
    edges |= {frozenset((lab.x, rename[v])) for v in g.vertices if v not in domain}
    edges |= {frozenset((lab.ax, v)) for v in domain}
    return DefiningGraph(vertices, frozenset(edges))


def verify_lambda_isomorphism(
    g: DefiningGraph,
    a: str,
    domain: Iterable[str],
    lam: DefiningGraph | None = None,
) -> list[CheckResult]:
    """Certify ``W_Lambda ~= W x| <phi>`` by checking relators both ways.

    ``alpha``: ``x -> z``, ``ax -> a z``, ``v -> v``.
    ``beta``: ``z -> x``, ``a -> ax x``, ``s -> s``.
    Every Lambda relator must die under ``alpha``, every P1 relator under
    ``beta``, and both composites must fix the generators.  ``lam`` overrides
    the constructed graph (used to inject corrupted graphs).
    """
    domain = frozenset(domain)
    check = validate_partial_conjugation(g, a, domain)
    if not check:
        return [CheckResult("lambda isomorphism", VACUOUS, "no valid partial conjugation",
                            witnesses=[check.reason], mandatory=False)]
    ctx = ExtContext(PartialConj(g, a, domain), 2)
    lab = lambda_labels(g, a)
    if lam is None:
        lam = lambda_graph(g, a, domain)
    results: list[CheckResult] = []

    alpha = {lab.x: ExtElement(IDENTITY, 1), lab.ax: ExtElement((a,), 1)}
    for v in g.vertices:
        if v != a:
            alpha[v] = ctx.gen(v)
    beta = {ctx.z: (lab.x,), a: normalize(lam, (lab.ax, lab.x))}
    for v in g.vertices:
        if v != a:
            beta[v] = (v,)

    for r in racg_presentation(lam).relators:
        image = ctx.evaluate(r.word, alpha)
        ok = image == ctx.identity
        results.append(CheckResult(
            f"alpha({format_word(r.word)}) = 1", PASS if ok else FAIL,
            "Lambda relator holds in the extension",
            witnesses=[] if ok else [f"image {image}"],
        ))
    for r in build_P1(ctx).relators:
        letters = [s for t in r.word for s in beta[t]]
        image = normalize(lam, letters)
        ok = not image
        results.append(CheckResult(
            f"beta({format_word(r.word)}) = 1", PASS if ok else FAIL,
            "extension relator holds in W_Lambda",
            witnesses=[] if ok else [f"image {format_word(image)}"],
        ))
    for v in lam.vertices:
        e = alpha.get(v)
        if e is None:
            results.append(CheckResult(f"beta(alpha({v})) = {v}", FAIL, "alpha defined on Lambda generators",
                                       witnesses=[f"no alpha image for {v}"]))
            continue
        back = normalize(lam, [s for t in ctx.spell(e) for s in beta[t]])
        ok = back == (v,)
        results.append(CheckResult(f"beta(alpha({v})) = {v}", PASS if ok else FAIL,
                                   "beta o alpha is the identity",
                                   witnesses=[] if ok else [f"got {format_word(back)}"]))
    for s in tuple(g.vertices) + (ctx.z,):
        e = ctx.evaluate(beta[s], alpha)
        ok = e == ctx.gen(s)
        results.append(CheckResult(f"alpha(beta({s})) = {s}", PASS if ok else FAIL,
                                   "alpha o beta is the identity",
                                   witnesses=[] if ok else [f"got {e}"]))
    return results


# --- the index-two subsystem for transvections --------------------------------


@dataclass(frozen=True)
class KernelSystem:
    """``U = ker h_a`` with its generating set ``S'`` and the involution ``theta``.

    ``S'`` is ``S - {a}`` followed by a hatted copy ``s^ = a s a`` of every
    ``s`` outside ``St(a)``; ``prime_graph`` is the commutation graph on ``S'``.
    """

    graph: DefiningGraph
    a: str
    prime_graph: DefiningGraph
    hat: Mapping[str, str]
    theta: Mapping[str, str]
    central: bool

    @property
    def sprime(self) -> tuple[str, ...]:
        return self.prime_graph.vertices

    @cached_property
    def unhat(self) -> dict[str, str]:
        return {h: s for s, h in self.hat.items()}

    def expand(self, w: Iterable[str]) -> Word:
        """Rewrite a word over ``S'`` as a word over ``S``."""
        out: list[str] = []
        for s in w:
            if s in self.unhat:
                out += [self.a, self.unhat[s], self.a]
            elif s in self.prime_graph:
                out.append(s)
            else:
                raise ValueError(f"{s!r} is not a letter of S'")
        return tuple(out)

    def apply_theta(self, w: Iterable[str]) -> Word:
        return normalize(self.prime_graph, [self.theta[s] for s in w])


def kernel_system(g: DefiningGraph, a: str) -> KernelSystem:
    st = star(g, a)
    lk = link(g, a)
    outside = [s for s in g.vertices if s not in st]
    taken = set(g.vertices)
    hat = {}
    for s in outside:
        label = s + "^"
        while label in taken:
            label += "'"
        taken.add(label)
        hat[s] = label
    vertices = tuple(s for s in g.vertices if s != a) + tuple(hat[s] for s in outside)
    edges = set()
    for s, t in g.sorted_edges():
        if a not in (s, t):
            edges.add(frozenset((s, t)))
        if s in hat and t in hat:
            edges.add(frozenset((hat[s], hat[t])))
        if s in hat and t in lk:
            edges.add(frozenset((hat[s], t)))
        if t in hat and s in lk:
            edges.add(frozenset((hat[t], s)))
    theta = {s: s for s in vertices}
    for s, h in hat.items():
        theta[s], theta[h] = h, s
    return KernelSystem(g, a, DefiningGraph(vertices, frozenset(edges)), hat, theta, is_central(g, a))


class NotInKernel(ValueError):
    pass


def rewrite_in_sprime(ks: KernelSystem, w: Iterable[str]) -> Word:
    """Rewrite a word over ``S`` with an even number of ``a`` letters over ``S'``.

    Tracks the parity of ``a`` seen so far: a letter outside ``St(a)`` read
    at odd parity is really ``a s a`` and becomes ``s^``.
    """
    w = check_letters(ks.graph, w)
    if parity(w, ks.a):
        raise NotInKernel(f"{format_word(w)} has odd {ks.a}-parity")
    out = []
    odd = 0
    for s in w:
        if s == ks.a:
            odd ^= 1
        elif odd and s in ks.hat:
            out.append(ks.hat[s])
        else:
            out.append(s)
    return normalize(ks.prime_graph, out)


class TransvectionContext(ExtContext):
    """Extension by a transvection, together with its kernel system."""

    def __init__(self, phi: Transvection, z_label: str = "z"):
        if not isinstance(phi, Transvection):
            raise ContextMismatch("a transvection is required")
        super().__init__(phi, 2, z_label)
        self.a = phi.acting
        self.d = phi.domain
        self.ks = kernel_system(self.graph, self.a)
        if z_label in self.ks.prime_graph:
            raise ValueError(f"label {z_label!r} already names a generator")

    def decompose(self, e: ExtElement) -> tuple[Word, int, int]:
        """``(u, eps, delta)`` with ``e = u a^eps z^delta`` and ``u`` in ``U``."""
        eps = parity(e.w, self.a)
        u = rewrite_in_sprime(self.ks, e.w + (self.a,) * eps)
        return u, eps, e.k

    def project(self, e: ExtElement) -> Word:
        return self.decompose(e)[0]

    def reassemble(self, u: Sequence[str], eps: int, delta: int) -> ExtElement:
        return self.element(self.ks.expand(u) + (self.a,) * eps, delta)

    def sprime_image(self, label: str) -> ExtElement:
        """Image in ``G`` of a generator of the presentation over ``S' + {a, z}``."""
        if label == self.z:
            return ExtElement(IDENTITY, 1)
        return self.element(self.ks.expand((label,)) if label != self.a else (self.a,))

    def evaluate_sprime(self, word: Sequence[str]) -> ExtElement:
        return self.multiply(*(self.sprime_image(s) for s in word))


def decompose(ctx: TransvectionContext, e: ExtElement) -> tuple[Word, int, int]:
    return ctx.decompose(e)


def build_P2(ks: KernelSystem) -> GroupPresentation:
    g, a = ks.graph, ks.a
    lk = link(g, a)
    b = _Builder()
    for name in ("x^2", "[s,t]", "[s^,t^]", "[s^,t]", "a^2", "asa = s", "asa = s^", "as^a = s"):
        b.family(name)
    for x in ks.sprime:
        b.add((x, x), "x^2")
    for s, t in g.sorted_edges():
        if a not in (s, t):
            b.add(_commutator(s, t), "[s,t]")
    for s, t in g.sorted_edges():
        if s in ks.hat and t in ks.hat:
            b.add(_commutator(ks.hat[s], ks.hat[t]), "[s^,t^]")
    for s, t in g.sorted_edges():
        if s in ks.hat and t in lk:
            b.add(_commutator(ks.hat[s], t), "[s^,t]")
        elif t in ks.hat and s in lk:
            b.add(_commutator(ks.hat[t], s), "[s^,t]")
    b.add((a, a), "a^2")
    for s in g.vertices:
        if s in lk:
            b.add((a, s, a, s), "asa = s")
    for s in g.vertices:
        if s in ks.hat:
            b.add((a, s, a, ks.hat[s]), "asa = s^")
            b.add((a, ks.hat[s], a, s), "as^a = s")
    return GroupPresentation(ks.sprime + (a,), b.relators, tuple(b.families))


def build_P3(ctx: TransvectionContext) -> GroupPresentation:
    p2 = build_P2(ctx.ks)
    z, a, d = ctx.z, ctx.a, ctx.d
    b = _Builder()
    for f in p2.families:
        b.family(f)
    for r in p2.relators:
        b.add(r.word, r.family)
    for name in ("z^2", "zsz = s", "zdz = da", "zaz = a"):
        b.family(name)
    b.add((z, z), "z^2")
    for s in ctx.ks.sprime:
        if s != d:
            b.add((z, s, z, s), "zsz = s")
    b.add((z, d, z, a, d), "zdz = da")
    b.add((z, a, z, a), "zaz = a")
    return GroupPresentation(p2.generators + (z,), b.relators, tuple(b.families))


def projection_defect(ctx: TransvectionContext) -> tuple[str, Word, Word] | None:
    """A witness that ``p`` is not a homomorphism: ``(s, p(a)p(s)p(a), p(asa))``."""
    for s in ctx.graph.vertices:
        if s in ctx.ks.hat:
            pa = ctx.project(ctx.gen(ctx.a))
            ps = ctx.project(ctx.gen(s))
            lhs = normalize(ctx.ks.prime_graph, pa + ps + pa)
            rhs = ctx.project(ctx.element((ctx.a, s, ctx.a)))
            if lhs != rhs:
                return s, lhs, rhs
    return None
