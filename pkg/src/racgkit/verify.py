"""Verification batteries for the three kinds of extension.

Each suite builds the relevant balls and actions and returns a
:class:`~racgkit.report.Report`; a report is OK when no mandatory check
failed or came out unexpectedly vacuous.
"""
from __future__ import annotations

from .actions import (
    ActionAssignment,
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
from .automorphisms import Automorphism, GraphAuto, PartialConj, Transvection
from .cubes import build_ball, build_vplus
from .extensions import (
    ExtContext,
    ExtElement,
    TransvectionContext,
    build_P1,
    build_P3,
    lambda_graph,
    lambda_labels,
    projection_defect,
    verify_lambda_isomorphism,
)
from .graphs import DefiningGraph
from .report import FAIL, PASS, VACUOUS, CheckResult, Report
from .words import IDENTITY, element_order, elements_up_to, format_word, normalize, parity

# elements (w, k) with |w| <= this are used for kernel and stabilizer checks
ELEMENT_LENGTH = 2


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _relator_radius(radius: int, presentation, report: Report) -> int:
    longest = max((len(r.word) for r in presentation.relators), default=0)
    if radius < longest:
        report.notes.append(f"radius raised from {radius} to {longest} to cover the longest relator")
        return longest
    return radius


def _names(elements) -> str:
    return "{" + ", ".join(str(e) for e in elements) + "}"


def _kernel_checks(assignment: ActionAssignment, elements, expected, label: str) -> list[CheckResult]:
    result = kernel_on_ball(assignment, elements)
    got = set(result.kernel)
    checks = [CheckResult(
        f"{label}: kernel on tested set = {_names(expected)}",
        _status(got == set(expected)),
        "elements acting trivially on this ball",
        domain_size=len(elements),
        witnesses=[f"kernel {_names(result.kernel)}"],
    )]
    if result.inconclusive:
        checks.append(CheckResult(f"{label}: elements with empty domain", FAIL,
                                  witnesses=[_names(result.inconclusive)]))
    return checks


def verify_graphauto(phi: GraphAuto, radius: int = 4) -> Report:
    g = phi.graph
    ctx = ExtContext(phi)
    report = Report(f"graph automorphism extension: {phi.describe()} (m={ctx.m})")
    p1 = build_P1(ctx)
    r = _relator_radius(radius, p1, report)
    ball = build_ball(g, r)

    report.section("automorphism")
    report.add(CheckResult(f"order of phi = {ctx.m}", PASS, "verified on every generator"))
    bad = check_adjacency(naive_phi_map(ball, phi))
    report.add(CheckResult("v_w -> v_phi(w) respects adjacency", _status(not bad),
                           domain_size=len(ball.vertices),
                           witnesses=[f"({vertex_name(u)}, {vertex_name(w)})" for u, w in bad[:3]]))

    report.section("action of G on X")
    images = {s: (s,) for s in g.vertices}
    assignment = left_mult_assignment(p1, ball, images, ctx.spell, "X",
                                      extra={ctx.z: graph_auto_map(ball, phi.mapping)})
    report.extend(check_relators(assignment))
    elements = ctx.elements(ELEMENT_LENGTH)
    report.extend(_kernel_checks(assignment, elements, [ctx.identity], "X"))
    stab = stabilizer(assignment, elements, IDENTITY)
    report.add(CheckResult(
        "stabilizer of v_1 lies in <z>", _status(all(not e.w for e in stab)),
        "finite vertex stabilizer", witnesses=[_names(stab)],
    ))
    orbits = orbit_count([assignment.maps[s] for s in g.vertices], ball)
    report.add(CheckResult("W has one vertex orbit on the ball", _status(orbits == 1),
                           "cocompactness witness", witnesses=[f"{orbits} orbit(s)"]))
    return report


def verify_pconj(phi: PartialConj, radius: int = 4, lam: DefiningGraph | None = None) -> Report:
    """``lam`` replaces the constructed Lambda graph (a hook for mutation tests)."""
    g, a, domain = phi.graph, phi.acting, phi.domain
    ctx = ExtContext(phi, 2)
    report = Report(f"partial conjugation extension: {phi.describe()}")

    report.section("obstruction on X")
    ball = build_ball(g, radius)
    bad = set(check_adjacency(naive_phi_map(ball, phi)))
    for d in sorted(domain, key=g.index):
        present = (IDENTITY, (d,)) in bad
        report.add(CheckResult(
            f"v_w -> v_phi(w) breaks edge (v_1, v_{d})", _status(present),
            "the naive map is not an isometry",
            witnesses=[f"v_phi({d}) = {vertex_name(normalize(g, (a, d, a)))}"],
        ))

    report.section("Lambda graph")
    built = lambda_graph(g, a, domain)
    lam = lam if lam is not None else built
    expected_edges = len(g.edges) + len(g.vertices) - len(domain) + len(domain)
    report.add(CheckResult(
        "Lambda has |S|+1 vertices and |E|+|S-D|+|D| edges",
        _status(len(lam.vertices) == len(g.vertices) + 1 and len(lam.edges) == expected_edges),
        witnesses=[f"{len(lam.vertices)} vertices, {len(lam.edges)} edges"],
    ))

    report.section("lambda isomorphism")
    report.extend(verify_lambda_isomorphism(g, a, domain, lam))

    report.section("action of G on the cube complex of Lambda")
    lab = lambda_labels(g, a)
    p1 = build_P1(ctx)
    r = _relator_radius(radius, p1, report)
    lam_ball = build_ball(lam, r, with_cubes=False)
    images = {s: (s,) for s in g.vertices if s != a}
    images[ctx.z] = (lab.x,)
    images[a] = (lab.ax, lab.x)
    try:
        assignment = left_mult_assignment(p1, lam_ball, images, ctx.spell, "X_Lambda")
    except KeyError as exc:
        report.add(CheckResult("generator images lie in Lambda", FAIL, witnesses=[str(exc)]))
        return report
    report.extend(check_relators(assignment))
    report.extend(_kernel_checks(assignment, ctx.elements(ELEMENT_LENGTH), [ctx.identity], "X_Lambda"))
    return report


def verify_transvection(phi: Transvection, radius: int = 4) -> Report:
    g = phi.graph
    ctx = TransvectionContext(phi)
    a, d, ks = ctx.a, ctx.d, ctx.ks
    report = Report(f"transvection extension: {phi.describe()}")
    p3 = build_P3(ctx)

    report.section("obstructions on X")
    ball = build_ball(g, radius)
    bad = check_adjacency(naive_phi_map(ball, phi))
    report.add(CheckResult(
        f"v_w -> v_phi(w) breaks edge (v_1, v_{d})", _status((IDENTITY, (d,)) in bad),
        "the naive map is not an isometry", witnesses=[f"{len(bad)} broken edge(s) on the ball"],
    ))
    dz = ExtElement((d,), 1)
    sq = ctx.power(dz, 2)
    order = ctx.element_order(dz, 16)
    report.add(CheckResult(f"({d} z)^2 = {a}", _status(sq == ctx.gen(a)), witnesses=[f"got {sq}"]))
    report.add(CheckResult(f"{d} z has order 4", _status(order == 4), witnesses=[f"order {order}"]))
    orders = {element_order(g, w, 8) for w in elements_up_to(g, 3)}
    report.add(CheckResult(
        "finite-order elements of W are involutions", _status(orders <= {1, 2, None}),
        domain_size=len(elements_up_to(g, 3)),
        witnesses=["orders " + ", ".join(sorted(str(o or ">8") for o in orders))],
    ))
    dim_d = fixed_cells_min_dim(left_mult_map(ball, (d,)))
    dim_da = fixed_cells_min_dim(left_mult_map(ball, (d, a)))
    report.add(CheckResult(f"smallest cube preserved by {d} has dimension 1", _status(dim_d == 1),
                           witnesses=[f"got {dim_d}"]))
    report.add(CheckResult(f"smallest cube preserved by {d}{a} has dimension 2", _status(dim_da == 2),
                           witnesses=[f"got {dim_da}"]))

    report.section("kernel system (U, S')")
    theta_trivial = all(ks.theta[s] == s for s in ks.sprime)
    report.add(CheckResult("theta is trivial iff a is central", _status(theta_trivial == ks.central),
                           witnesses=[f"central={ks.central}", f"S' = {' '.join(ks.sprime)}"]))
    for r in p3.relators:
        value = ctx.evaluate_sprime(r.word)
        report.add(CheckResult(f"P3 relator {format_word(r.word)} = 1 in G", _status(value == ctx.identity),
                               witnesses=[] if value == ctx.identity else [f"got {value}"]))
    decompose_ok = all(ctx.reassemble(*ctx.decompose(e)) == e for e in ctx.elements(3))
    report.add(CheckResult("g = u_g a^eps z^delta reassembles", _status(decompose_ok),
                           domain_size=len(ctx.elements(3))))
    defect = projection_defect(ctx)
    if ks.central:
        report.add(CheckResult("projection defect", VACUOUS, "no letter outside St(a)",
                               mandatory=False, expect_vacuous=True))
    else:
        report.add(CheckResult(
            "projection p is not a homomorphism", _status(defect is not None),
            witnesses=[] if defect is None else
            [f"p(a)p({defect[0]})p(a) = {format_word(defect[1])}, p(a{defect[0]}a) = {format_word(defect[2])}"],
        ))

    report.section("action of G on Y")
    r = _relator_radius(radius, p3, report)
    yball = build_ball(ks.prime_graph, r)
    action = transvection_action_on_Y(ctx, yball, p3)
    for label in list(ks.sprime) + [a, ctx.z]:
        bad = check_adjacency(action.maps[label])
        report.add(CheckResult(f"Phi_{label} respects adjacency in Y", _status(not bad),
                               domain_size=len(action.maps[label].mapping),
                               witnesses=[f"({vertex_name(u)}, {vertex_name(w)})" for u, w in bad[:3]]))
    for label in (a, ctx.z):
        direct = projection_map(ctx, yball, ctx.gen(label))
        same = direct.mapping == action.maps[label].mapping
        report.add(CheckResult(f"Phi_{label} agrees with v_u -> v_p({label}u)", _status(same)))
    cases = set()
    for e in yball.edges:
        for u, w in (tuple(e), tuple(e)[::-1]):
            if u in action.maps[ctx.z].mapping and w in action.maps[ctx.z].mapping:
                s = normalize(ks.prime_graph, tuple(reversed(u)) + w)
                cases.add((parity(u, d), s == (d,)))
    # with S' = {d} only the s = d cases exist
    n_cases = 4 if len(ks.sprime) > 1 else 2
    report.add(CheckResult(f"all {n_cases} (h_d(u), s = d) cases of Phi_z are exercised",
                           _status(len(cases) == n_cases),
                           witnesses=[f"cases {sorted(cases)}"]))
    report.extend(check_relators(action))
    elements = ctx.elements(ELEMENT_LENGTH)
    az_group = [ctx.identity, ctx.gen(a), ctx.gen(ctx.z), ExtElement((a,), 1)]
    expected = az_group if ks.central else [ctx.identity]
    y_kernel = _kernel_checks(action, elements, expected, "Y")
    report.extend(y_kernel)
    stab = stabilizer(action, elements, IDENTITY)
    report.add(CheckResult("stabilizer of v_1 lies in <a, z>", _status(set(stab) <= set(az_group)),
                           witnesses=[_names(stab)]))
    orbits = orbit_count([action.maps[s] for s in ks.sprime], yball)
    report.add(CheckResult("U has one vertex orbit on the ball", _status(orbits == 1),
                           "cocompactness witness", witnesses=[f"{orbits} orbit(s)"]))
    if not ks.central:
        s = next(t for t in g.vertices if t in ks.hat)
        vs, vds = (s,), normalize(ks.prime_graph, (d, s))
        for label, elem, vertex in (
            ("a", ctx.gen(a), vs), ("az", ExtElement((a,), 1), vs), ("z", ctx.gen(ctx.z), vds),
        ):
            image = action.apply_word(ctx.spell(elem), vertex)
            report.add(CheckResult(f"Phi_{label} moves {vertex_name(vertex)}", _status(image != vertex),
                                   "faithfulness witness", witnesses=[f"image {vertex_name(image)}"]))
        if not any(c.failed for c in y_kernel):
            report.notes.append("non-central case: Y-kernel on tested set = {1}")
        return report

    report.section("central case: action of G on Y+")
    vplus = build_vplus(yball)
    plus = vplus_action(ctx, vplus, p3)
    for label in list(ks.sprime) + [a, ctx.z]:
        bad = check_adjacency(plus.maps[label])
        report.add(CheckResult(f"Phi_{label} respects adjacency in Y+", _status(not bad),
                               domain_size=len(plus.maps[label].mapping)))
    report.extend(check_relators(plus))
    plus_kernel = _kernel_checks(plus, elements, [ctx.identity], "Y+")
    report.extend(plus_kernel)
    if yball.complete:
        images = {e: tuple(sorted(plus.element_map(e).mapping.items())) for e in ctx.elements(len(g))}
        n = len(images)
        report.add(CheckResult(f"all {n} elements of G act by distinct maps on Y+",
                               _status(len(set(images.values())) == n),
                               "faithful on the whole (finite) group", domain_size=len(vplus.vertices)))
    if not any(c.failed for c in y_kernel + plus_kernel):
        report.notes.append("central case: Y-kernel = {1,a,z,az}; Y+ faithful on tested set")
    return report


def verify(phi: Automorphism, radius: int = 4) -> Report:
    if isinstance(phi, GraphAuto):
        return verify_graphauto(phi, radius)
    if isinstance(phi, PartialConj):
        return verify_pconj(phi, radius)
    return verify_transvection(phi, radius)
