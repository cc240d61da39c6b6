import pytest

from racgkit.actions import (
    NotCentral,
    VertexMap,
    check_adjacency,
    check_relators,
    fixed_cells_min_dim,
    graph_auto_map,
    kernel_on_ball,
    left_mult_assignment,
    left_mult_map,
    naive_phi_map,
    orbit_count,
    projection_map,
    stabilizer,
    transvection_action_on_Y,
    vertex_name,
    vplus_action,
)
from racgkit.automorphisms import GraphAuto, PartialConj, Transvection
from racgkit.cubes import build_ball, build_vplus
from racgkit.extensions import ExtContext, ExtElement, TransvectionContext, build_P1
from racgkit.report import FAIL, PASS, VACUOUS

from conftest import read_graph

FIG1 = read_graph("fig1")
EDGE = read_graph("edge")
TDB = read_graph("tdb")


@pytest.fixture(scope="module")
def tdb_action():
    ctx = TransvectionContext(Transvection(TDB, "a", "d"))
    yball = build_ball(ctx.ks.prime_graph, 5)
    return ctx, yball, transvection_action_on_Y(ctx, yball)


@pytest.fixture(scope="module")
def fig1_transvection():
    ctx = TransvectionContext(Transvection(FIG1, "a4", "a5"))
    yball = build_ball(ctx.ks.prime_graph, 3, with_cubes=False)
    return ctx, yball, transvection_action_on_Y(ctx, yball)


def test_vertex_map_basics():
    ball = build_ball(EDGE, 2)
    m = left_mult_map(ball, ("a",))
    assert m(()) == ("a",)
    assert m.compose(m).is_identity()
    assert not m.fixes([()])
    assert len(m.domain) == 4
    with pytest.raises(ValueError):
        VertexMap(ball, {(): (), ("a",): ()})
    assert vertex_name(()) == "v_1"
    assert vertex_name((("d",), -1)) == "v_d^-1"


def test_left_multiplication_respects_adjacency():
    ball = build_ball(FIG1, 3)
    for s in FIG1.vertices:
        assert check_adjacency(left_mult_map(ball, (s,))) == []
    assert check_adjacency(left_mult_map(ball, ("a1", "a4", "a5"))) == []


def test_naive_map_violations():
    ball = build_ball(EDGE, 2)
    bad = check_adjacency(naive_phi_map(ball, Transvection(EDGE, "a", "d")))
    assert bad == [((), ("d",)), (("a",), ("a", "d"))]
    ball = build_ball(FIG1, 3)
    bad = check_adjacency(naive_phi_map(ball, PartialConj(FIG1, "a5", {"a6"})))
    assert ((), ("a6",)) in bad
    assert check_adjacency(naive_phi_map(ball, GraphAuto.from_mapping(FIG1, {"a5": "a6", "a6": "a5"}))) == []


def test_graph_auto_map_rejects_non_automorphisms():
    with pytest.raises(ValueError):
        graph_auto_map(build_ball(FIG1, 1), {"a1": "a4", "a4": "a1"})


def test_graphauto_action():
    phi = GraphAuto.from_mapping(FIG1, {"a5": "a6", "a6": "a5"})
    ctx = ExtContext(phi)
    ball = build_ball(FIG1, 4)
    assignment = left_mult_assignment(build_P1(ctx), ball, {s: (s,) for s in FIG1.vertices}, ctx.spell,
                                      extra={"z": graph_auto_map(ball, phi.mapping)})
    results = check_relators(assignment)
    assert results and all(r.status == PASS for r in results)
    kernel = kernel_on_ball(assignment, ctx.elements(2))
    assert kernel.kernel == [ctx.identity] and not kernel.inconclusive
    assert stabilizer(assignment, ctx.elements(2), ()) == [ctx.identity, ExtElement((), 1)]
    assert orbit_count([assignment.maps[s] for s in FIG1.vertices], ball) == 1


def test_wrong_z_map_fails_relators():
    phi = GraphAuto.from_mapping(FIG1, {"a5": "a6", "a6": "a5"})
    ctx = ExtContext(phi)
    ball = build_ball(FIG1, 4)
    wrong = graph_auto_map(ball, {"a1": "a2", "a2": "a1"})
    assignment = left_mult_assignment(build_P1(ctx), ball, {s: (s,) for s in FIG1.vertices}, ctx.spell,
                                      extra={"z": wrong})
    assert any(r.status == FAIL for r in check_relators(assignment))


def test_missing_generator_map():
    ctx = ExtContext(Transvection(EDGE, "a", "d"))
    with pytest.raises(KeyError):
        left_mult_assignment(build_P1(ctx), build_ball(EDGE, 2), {"a": ("a",), "d": ("d",)})


def test_tdb_generators_respect_adjacency(tdb_action):
    ctx, yball, action = tdb_action
    assert set(action.maps) == {"d", "b", "b^", "a", "z"}
    for m in action.maps.values():
        assert check_adjacency(m) == []


def test_tdb_z_rule_examples(tdb_action):
    ctx, yball, action = tdb_action
    z = action.maps["z"]
    assert z(("d",)) == ("d",)
    assert z(("d", "b")) == ("d", "b^")
    assert action.maps["a"](("b",)) == ("b^",)


def test_tdb_relators_and_kernel(tdb_action):
    ctx, yball, action = tdb_action
    results = check_relators(action)
    assert all(r.status == PASS for r in results if r.mandatory)
    assert any("z d z a d" in r.name and r.status == PASS for r in results)
    kernel = kernel_on_ball(action, ctx.elements(2))
    assert kernel.kernel == [ctx.identity]
    assert set(stabilizer(action, ctx.elements(2), ())) <= {
        ctx.identity, ctx.gen("a"), ctx.gen("z"), ExtElement(("a",), 1)}


def test_action_is_the_projection(tdb_action):
    # every element, not only generators, acts as v_u -> v_p(g u)
    ctx, yball, action = tdb_action
    for e in ctx.elements(2):
        direct = projection_map(ctx, yball, e).mapping
        composed = action.element_map(e).mapping
        assert all(direct[v] == w for v, w in composed.items())


def test_action_is_a_homomorphism(fig1_transvection):
    ctx, yball, action = fig1_transvection
    elements = ctx.elements(1)
    for e1 in elements:
        for e2 in elements:
            lhs = action.element_map(ctx.multiply(e1, e2)).mapping
            rhs = action.element_map(e1).compose(action.element_map(e2)).mapping
            common = set(lhs) & set(rhs)
            assert common and all(lhs[v] == rhs[v] for v in common)


def test_parity_split_is_needed(tdb_action):
    ctx, yball, _ = tdb_action
    broken = transvection_action_on_Y(ctx, yball, parity_split=False)
    assert check_adjacency(broken.maps["z"])
    assert any(r.status == FAIL for r in check_relators(broken))


def test_central_case_on_Y():
    ctx = TransvectionContext(Transvection(EDGE, "a", "d"))
    yball = build_ball(ctx.ks.prime_graph, 5)
    action = transvection_action_on_Y(ctx, yball)
    assert action.maps["a"].is_identity() and action.maps["z"].is_identity()
    kernel = kernel_on_ball(action, ctx.elements(2))
    assert set(kernel.kernel) == {ctx.identity, ctx.gen("a"), ctx.gen("z"), ExtElement(("a",), 1)}


def test_central_case_on_Y_plus():
    ctx = TransvectionContext(Transvection(EDGE, "a", "d"))
    vplus = build_vplus(build_ball(ctx.ks.prime_graph, 1))
    action = vplus_action(ctx, vplus)
    z = action.maps["z"]
    assert z(((), 1)) == ((), 1)
    assert z((("d",), 1)) == (("d",), -1)
    for m in action.maps.values():
        assert check_adjacency(m) == []
    results = check_relators(action)
    assert not any(r.failed for r in results)
    vacuous = [r for r in results if r.status == VACUOUS]
    assert [r.name for r in vacuous] == ["family [s,t]", "family [s^,t^]", "family [s^,t]",
                                         "family asa = s^", "family as^a = s", "family zsz = s"]
    maps = {tuple(sorted(action.element_map(e).mapping.items())) for e in ctx.elements(2)}
    assert len(ctx.elements(2)) == 8 and len(maps) == 8


def test_vplus_needs_central():
    ctx = TransvectionContext(Transvection(TDB, "a", "d"))
    with pytest.raises(NotCentral):
        vplus_action(ctx, build_vplus(build_ball(ctx.ks.prime_graph, 1)))


@pytest.mark.parametrize("g, a, d", [(EDGE, "a", "d"), (TDB, "a", "d"), (FIG1, "a4", "a5"), (FIG1, "a4", "a6")])
def test_fixed_cells(g, a, d):
    ball = build_ball(g, 3)
    assert fixed_cells_min_dim(left_mult_map(ball, (d,))) == 1
    assert fixed_cells_min_dim(left_mult_map(ball, (d, a))) == 2
    assert fixed_cells_min_dim(left_mult_map(ball, ())) == 0


def test_fixed_cells_none_for_infinite_order():
    ball = build_ball(FIG1, 3)
    assert fixed_cells_min_dim(left_mult_map(ball, ("a1", "a4"))) is None


def test_small_ball_vacuous_relators_are_not_silent_passes():
    phi = GraphAuto.from_mapping(FIG1, {})
    ctx = ExtContext(phi)
    ball = build_ball(FIG1, 1)
    assignment = left_mult_assignment(build_P1(ctx), ball, {s: (s,) for s in FIG1.vertices}, ctx.spell,
                                      extra={"z": graph_auto_map(ball, {})})
    results = check_relators(assignment)
    assert not any(r.status == FAIL for r in results)
    commutators = [r for r in results if "[s,t]" in r.name]
    assert commutators and all(r.status == VACUOUS and r.failed for r in commutators)
    squares = [r for r in check_relators(assignment, depth=1) if "[s^2]" in r.name]
    assert squares and all(r.status == PASS and r.domain_size == 1 for r in squares)
