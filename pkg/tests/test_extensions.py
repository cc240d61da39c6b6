from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from racgkit.automorphisms import GraphAuto, InvalidAutomorphism, PartialConj, Transvection
from racgkit.extensions import (
    ContextMismatch,
    ExtContext,
    ExtElement,
    GraphAutoGroupContext,
    GroupPresentation,
    NotInKernel,
    TransvectionContext,
    build_P1,
    build_P2,
    build_P3,
    decompose,
    ext_element_order,
    ext_multiply,
    kernel_system,
    lambda_graph,
    projection_defect,
    rewrite_in_sprime,
    verify_lambda_isomorphism,
)
from racgkit.graphs import DefiningGraph, dump_graph
from racgkit.report import FAIL, PASS
from racgkit.words import elements_up_to, normalize, tits_matrix

from conftest import DATA, path_graph, read_graph

FIG1 = read_graph("fig1")
EDGE = read_graph("edge")
TDB = read_graph("tdb")

TRANSVECTIONS = [
    Transvection(EDGE, "a", "d"),
    Transvection(TDB, "a", "d"),
    Transvection(FIG1, "a4", "a5"),
]
CONTEXTS = [
    ExtContext(GraphAuto.from_mapping(FIG1, {"a5": "a6", "a6": "a5"})),
    ExtContext(PartialConj(FIG1, "a5", frozenset({"a6"}))),
    ExtContext(PartialConj(TDB, "a", frozenset({"b"}))),
] + [TransvectionContext(t) for t in TRANSVECTIONS]


def ext_elements(ctx, max_len=5):
    word = st.lists(st.sampled_from(ctx.graph.vertices), max_size=max_len)
    return st.builds(lambda w, k: ctx.element(w, k), word, st.integers(0, ctx.m - 1))


def test_multiplication_example():
    ctx = TransvectionContext(Transvection(EDGE, "a", "d"))
    assert ext_multiply(ctx, ExtElement((), 1), ExtElement(("d",), 0)) == ExtElement(("a", "d"), 1)
    assert str(ExtElement(("a", "d"), 1)) == "a d z"
    assert str(ctx.identity) == "1"


@pytest.mark.parametrize("phi", TRANSVECTIONS, ids=lambda p: p.describe())
def test_order_four_element(phi):
    ctx = TransvectionContext(phi)
    assert ext_element_order(ctx, ExtElement((phi.domain,), 1), 10) == 4
    zd = ctx.multiply(ctx.gen("z"), ctx.gen(phi.domain))
    assert ctx.power(zd, 2) == ExtElement((phi.acting,), 0)


def test_context_rejects_bad_input():
    phi = Transvection(EDGE, "a", "d")
    with pytest.raises(InvalidAutomorphism):
        ExtContext(phi, 3)
    assert ExtContext(phi, 4).m == 4
    with pytest.raises(ValueError):
        ExtContext(phi, z_label="a")
    ctx = ExtContext(phi)
    with pytest.raises(ContextMismatch):
        ctx.multiply(ExtElement((), 5))
    with pytest.raises(ContextMismatch):
        TransvectionContext(PartialConj(TDB, "a", {"b"}))


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.phi.describe())
def test_group_axioms(ctx):
    @settings(max_examples=40, deadline=None)
    @given(ext_elements(ctx), ext_elements(ctx), ext_elements(ctx))
    def run(x, y, w):
        assert ctx.multiply(ctx.multiply(x, y), w) == ctx.multiply(x, ctx.multiply(y, w))
        assert ctx.multiply(x, ctx.inverse(x)) == ctx.identity
        assert ctx.multiply(ctx.inverse(x), x) == ctx.identity
        assert ctx.multiply(ctx.identity, x) == x
        assert ctx.evaluate(ctx.spell(x)) == x

    run()


def test_graph_auto_product_matches_general_context():
    perm = {"a5": "a6", "a6": "a5"}
    ctx = ExtContext(GraphAuto.from_mapping(FIG1, perm))
    grp = GraphAutoGroupContext(FIG1, [perm])
    assert len(grp.group) == 2
    swap = grp.generators[0]
    as_pair = {0: grp.identity[1], 1: swap}
    elements = ctx.elements(2)
    for e1 in elements[::7]:
        for e2 in elements[::5]:
            prod = ctx.multiply(e1, e2)
            pair = grp.multiply((e1.w, as_pair[e1.k]), (e2.w, as_pair[e2.k]))
            assert pair == (prod.w, as_pair[prod.k])


def test_cyclic_graph_automorphism_group():
    tri = DefiningGraph.from_edges(["a1", "a2", "a3"], [("a1", "a2"), ("a2", "a3"), ("a1", "a3")])
    grp = GraphAutoGroupContext(tri, [{"a1": "a2", "a2": "a3", "a3": "a1"}])
    assert len(grp.group) == 3
    assert len(grp.elements(1)) == 4 * 3


# --- presentations -----------------------------------------------------------


def test_P1_counts():
    pc = build_P1(ExtContext(PartialConj(FIG1, "a5", frozenset({"a6"}))))
    assert len(pc.generators) == 7
    assert len(pc.relators) == 19
    assert pc.family_counts() == {"s^2": 6, "[s,t]": 6, "z^m": 1, "z s z^-1 = phi(s)": 6}
    edge = build_P1(ExtContext(Transvection(EDGE, "a", "d")))
    assert len(edge.relators) == 6


def test_P1_for_identity_on_single_vertex():
    g = DefiningGraph.from_edges(["a"])
    p = build_P1(ExtContext(GraphAuto.from_mapping(g, {})))
    assert [r.word for r in p.relators] == [("a", "a"), ("z",)]


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: c.phi.describe())
def test_P1_relators_hold(ctx):
    for r in build_P1(ctx).relators:
        assert ctx.evaluate(r.word) == ctx.identity, r


def test_P2_P3_edge_graph():
    ctx = TransvectionContext(Transvection(EDGE, "a", "d"))
    p2 = build_P2(ctx.ks)
    assert p2.generators == ("d", "a")
    assert set(p2.words) == {("d", "d"), ("a", "a"), ("a", "d", "a", "d")}
    p3 = build_P3(ctx)
    assert set(p3.words) - set(p2.words) == {("z", "z"), ("z", "d", "z", "a", "d"), ("z", "a", "z", "a")}
    assert p3.family_counts()["zsz = s"] == 0


def test_P3_golden_and_rows():
    ctx = TransvectionContext(Transvection(TDB, "a", "d"))
    p3 = build_P3(ctx)
    assert p3.to_text() == (DATA / "tdb_p3.golden").read_text()
    words = set(p3.words)
    assert ("a", "b", "a", "b^") in words and ("a", "b^", "a", "b") in words
    assert ("z", "b", "z", "b") in words
    assert ("z", "d", "z", "d") not in words
    assert GroupPresentation.from_text(p3.to_text()).words == p3.words


@pytest.mark.parametrize("phi", TRANSVECTIONS, ids=lambda p: p.describe())
def test_P3_relators_hold_in_G(phi):
    ctx = TransvectionContext(phi)
    for r in build_P3(ctx).relators:
        assert ctx.evaluate_sprime(r.word) == ctx.identity, r


def test_presentation_rejects_undeclared_letters():
    with pytest.raises(ValueError):
        GroupPresentation.from_text("gen a\nrel a b")
    with pytest.raises(ValueError):
        GroupPresentation.from_text("gen a\nrelator a a")


# --- Lambda ------------------------------------------------------------------


def test_lambda_graph_six_vertex_graph():
    lam = lambda_graph(FIG1, "a5", {"a6"})
    assert set(lam.vertices) == {"a1", "a2", "a3", "a4", "a5x", "a6", "x"}
    expected = {"a1 a2", "a2 a3", "a1 a3", "a3 a4", "a4 a5x", "a4 a6",
                "x a1", "x a2", "x a3", "x a4", "x a5x", "a5x a6"}
    assert lam.edges == {frozenset(e.split()) for e in expected}
    assert dump_graph(lam) == (DATA / "fig1_lambda.golden").read_text()


def test_lambda_graph_path():
    lam = lambda_graph(path_graph("a", "b", "c"), "a", {"c"})
    assert set(lam.vertices) == {"ax", "b", "c", "x"}
    assert lam.edges == {frozenset(e) for e in [("ax", "b"), ("b", "c"), ("x", "ax"), ("x", "b"), ("ax", "c")]}


def test_lambda_labels_avoid_collisions():
    g = DefiningGraph.from_edges(["a", "x", "ax", "b"], [("a", "x")])
    lam = lambda_graph(g, "a", {"b"})
    assert len(set(lam.vertices)) == 5
    assert all(r.status == PASS for r in verify_lambda_isomorphism(g, "a", {"b"}))


def test_lambda_isomorphism_and_mutation():
    results = verify_lambda_isomorphism(FIG1, "a5", {"a6"})
    assert results and all(r.status == PASS for r in results)
    lam = lambda_graph(FIG1, "a5", {"a6"})
    for edge in sorted(lam.edges, key=sorted):
        broken = DefiningGraph(lam.vertices, lam.edges - {edge})
        bad = [r for r in verify_lambda_isomorphism(FIG1, "a5", {"a6"}, broken) if r.status == FAIL]
        assert bad, f"removing {sorted(edge)} went unnoticed"
    invalid = verify_lambda_isomorphism(FIG1, "a5", {"a1"})
    assert len(invalid) == 1 and not invalid[0].failed


# --- kernel system -----------------------------------------------------------


def test_kernel_system_examples():
    ks = kernel_system(EDGE, "a")
    assert ks.sprime == ("d",) and not ks.hat and ks.central
    assert ks.theta == {"d": "d"}
    ks = kernel_system(TDB, "a")
    assert ks.sprime == ("d", "b", "b^")
    assert not ks.prime_graph.edges
    assert ks.theta == {"d": "d", "b": "b^", "b^": "b"} and not ks.central
    ks = kernel_system(FIG1, "a4")
    assert ks.hat == {"a1": "a1^", "a2": "a2^"}
    assert len(ks.sprime) == 7


@pytest.mark.parametrize("g, a", [(EDGE, "a"), (TDB, "a"), (FIG1, "a4"), (FIG1, "a5"), (FIG1, "a1")])
def test_kernel_commutation_matches_W(g, a):
    # oracle: two letters of S' commute iff their expansions commute in W
    ks = kernel_system(g, a)
    for x, y in combinations(ks.sprime, 2):
        ex, ey = ks.expand((x,)), ks.expand((y,))
        commute = tits_matrix(g, ex + ey) == tits_matrix(g, ey + ex)
        assert commute == ks.prime_graph.adjacent(x, y), (x, y)


@pytest.mark.parametrize("g, a", [(TDB, "a"), (FIG1, "a4"), (FIG1, "a1")])
def test_theta_is_conjugation_by_a(g, a):
    ks = kernel_system(g, a)
    for u in elements_up_to(ks.prime_graph, 3):
        assert ks.apply_theta(ks.apply_theta(u)) == u
        lhs = normalize(g, ks.expand(ks.apply_theta(u)))
        assert lhs == normalize(g, (a,) + ks.expand(u) + (a,))


def test_rewrite_examples():
    ks = kernel_system(TDB, "a")
    assert rewrite_in_sprime(ks, ("a", "b", "a")) == ("b^",)
    assert rewrite_in_sprime(ks, ("a", "d", "a")) == ("d",)
    with pytest.raises(NotInKernel):
        rewrite_in_sprime(ks, ("a", "b"))


@pytest.mark.parametrize("g, a", [(TDB, "a"), (FIG1, "a4")])
def test_rewrite_round_trip(g, a):
    ks = kernel_system(g, a)
    for w in elements_up_to(g, 4):
        if w.count(a) % 2 == 0:
            assert normalize(g, ks.expand(rewrite_in_sprime(ks, w))) == w


def test_decompose_example():
    ctx = TransvectionContext(Transvection(EDGE, "a", "d"))
    assert decompose(ctx, ExtElement(("a", "d"), 1)) == (("d",), 1, 1)


@pytest.mark.parametrize("phi", TRANSVECTIONS, ids=lambda p: p.describe())
def test_decompose_is_a_bijection(phi):
    ctx = TransvectionContext(phi)
    seen = set()
    for e in ctx.elements(4):
        u, eps, delta = ctx.decompose(e)
        assert ctx.reassemble(u, eps, delta) == e
        seen.add((u, eps, delta))
    assert len(seen) == len(ctx.elements(4))


def test_projection_defect():
    assert projection_defect(TransvectionContext(Transvection(EDGE, "a", "d"))) is None
    s, lhs, rhs = projection_defect(TransvectionContext(Transvection(TDB, "a", "d")))
    assert s == "b" and lhs != rhs
