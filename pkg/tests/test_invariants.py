import json
from fractions import Fraction
from collections import Counter

import pytest
from pydantic import ValidationError

from qinv.algebra.scalar import Scalar
from qinv.exceptions import IdentityFailure, SceneValidationError, SpecFormatError
from qinv.manifolds.coloring import coloring_count
from qinv.manifolds.library import (
    add_circle_plexus,
    add_circle_surgery,
    bundled_colors,
    lens_circle,
    lens_node,
    s1s2_circle,
    s1s2_node,
    s1s2_switch_circle,
    s3_equator,
    s3_kink,
    s3_sphere,
    s3_switch_circle,
    surgeries,
    write_bundled_scenes,
)
from qinv.manifolds.scene import SurgeryScene, save_scene
from qinv.manifolds.triangulation import lens_dual, lens_triangulation
from qinv.seeds import cyclic_cocycle
from qinv.services import (
    SurfaceSpec,
    check_colored_circle,
    check_colored_presentations,
    check_matched_scenes,
    check_torus_expansion,
    commutator_object,
    compare_manifest,
    conjugate,
    connected_sum,
    disjoint_union,
    lens_cocycle_phase,
    load_surface,
    run_identities,
    save_ledger,
    stabilize,
    state_space_dims,
    state_sum,
    surgery_invariant,
    verlinde_count,
)
from qinv.services.engine import Engine

ENGINES = ["toric_engine", "fib_engine", "z2_engine", "z3w_engine", "z4_engine"]


def empty_diagram():
    return SurgeryScene(name="s3_empty", strands=0, degrees=[])


# =============================================================================
# SPHERE AND S1 x S2
# =============================================================================


@pytest.mark.parametrize("engine_name", ENGINES)
def test_sphere_is_inverse_dimension(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    expected = engine.neutral_dim.inverse()
    (comparison,) = check_matched_scenes(engine, ["s3"])
    assert [kind for kind, _, _ in comparison.values] == ["state-sum", "state-sum", "surgery", "surgery", "surgery"]
    assert all(value == expected for _, _, value in comparison.values)


@pytest.mark.parametrize("engine_name", ["toric_engine", "z3w_engine", "z4_engine"])
def test_s1s2_is_one(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    comparisons = check_matched_scenes(engine, ["s1s2"])
    assert len(comparisons) == len(engine.group.conjugacy_classes())
    for comparison in comparisons:
        assert all(value == 1 for _, _, value in comparison.values)


# =============================================================================
# BOTH PRESENTATIONS AGREE
# =============================================================================


@pytest.mark.parametrize("engine_name", ENGINES)
def test_presentations_agree(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    for comparison in check_matched_scenes(engine):
        assert comparison.equal, comparison.values


@pytest.mark.slow
def test_nonabelian_presentations_agree(s3w_engine):
    for comparison in check_matched_scenes(s3w_engine, ["s1s2", "l2"]):
        assert comparison.equal, comparison.values


@pytest.mark.parametrize("a", ["0", "1", "2"])
def test_lens_space_cocycle_phase(z3w_engine, a):
    group = z3w_engine.group
    expected = lens_cocycle_phase(group, cyclic_cocycle(3, 1), a, 3)
    assert expected == (Scalar.one(3) if a == "0" else Scalar.zeta(3, 2))
    for scene in (lens_circle(group, 3, a), lens_node(group, 3, a)):
        assert state_sum(z3w_engine, scene).value == expected
    assert surgery_invariant(z3w_engine, surgeries("l3", group, a)[0]).value == expected


def test_cocycle_phase_needs_order_dividing_p(z3w_engine):
    with pytest.raises(ValueError):
        lens_cocycle_phase(z3w_engine.group, cyclic_cocycle(3, 1), "1", 2)


@pytest.mark.parametrize("p", [2, 3])
def test_triangulated_lens_matches_the_circle_skeleton(toric_engine, p):
    group = toric_engine.group
    assert state_sum(toric_engine, lens_dual(group, p, group.unit)).value == state_sum(
        toric_engine, lens_circle(group, p, group.unit)
    ).value


@pytest.mark.slow
@pytest.mark.parametrize("a", ["1", "2"])
def test_triangulated_lens_carries_the_cocycle(z3w_engine, a):
    group = z3w_engine.group
    value = state_sum(z3w_engine, lens_dual(group, 3, a)).value
    mirror = state_sum(z3w_engine, lens_dual(group, 3, a, mirror=True)).value
    assert mirror == value.conjugate()
    assert state_sum(z3w_engine, lens_circle(group, 3, a)).value in (value, mirror)


def test_cocycle_phase_is_the_triangulation_sum(z3w_engine):
    group = z3w_engine.group
    omega = cyclic_cocycle(3, 1)
    tri = lens_triangulation(3)
    assert tri.dijkgraaf_witten(group, omega).conjugate() == sum(
        (lens_cocycle_phase(group, omega, a, 3) for a in "12"), Scalar.one(3)
    ) * Fraction(1, 3)


def test_run_identities(toric_engine):
    report = run_identities(toric_engine, ["s3", "s1s2"])
    assert report.checked[0] == "colored circle: 4 colors"
    assert report.checked[-2] == "colored presentations: 8 cases"
    assert report.checked[-1] == "presentations: 2 structures"


# =============================================================================
# COLORED GRAPHS
# =============================================================================


@pytest.mark.parametrize("engine_name", ["toric_engine", "z4_engine"])
def test_colored_circle(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    center = engine.simples.center
    for j in engine.simples.all():
        assert check_colored_circle(engine, j.name) == center.dim(j) / engine.neutral_dim


@pytest.mark.parametrize(
    "engine_name, every_color",
    [("toric_engine", True), ("z4_engine", True), ("z3w_engine", False)],
)
def test_colored_circles_in_every_manifold(engine_name, every_color, request):
    engine = request.getfixturevalue(engine_name)
    center = engine.simples.center
    colors = None if every_color else list(bundled_colors(engine.group))
    plain = {c.name: c.values[0][2] for c in check_matched_scenes(engine)}
    comparisons = check_colored_presentations(engine, colors=colors)
    assert len(comparisons) == len(plain) * (len(colors) if colors else len(engine.simples.all()))
    assert {c.name.split("+")[0] for c in comparisons} == set(plain)
    for comparison in comparisons:
        assert comparison.equal, comparison.values
        name, color = comparison.name.split("+")
        # a circle in a ball multiplies the invariant by its dimension
        assert comparison.values[0][2] == plain[name] * center.dim(engine.simple(color))


@pytest.mark.parametrize("manifold", ["s3", "s1s2", "l3"])
def test_torus_expansion(z3w_engine, manifold):
    group = z3w_engine.group
    for g in ("0", "1"):
        if manifold == "s3" and g != "0":
            continue
        for scene in surgeries(manifold, group, g):
            assert check_torus_expansion(z3w_engine, scene) == surgery_invariant(z3w_engine, scene).value


def test_torus_expansion_fibonacci(fib_engine):
    for scene in surgeries("s1s2", fib_engine.group, fib_engine.group.unit):
        check_torus_expansion(fib_engine, scene)


def test_strand_color_of_wrong_degree(z2_engine):
    group = z2_engine.group
    scene = add_circle_plexus(s3_sphere(group), group, "S", "J1_0", "0")
    with pytest.raises(SceneValidationError, match="strand w"):
        state_sum(z2_engine, scene)


def test_unknown_graph_color(toric_engine):
    scene = add_circle_surgery(empty_diagram(), "nope", "e")
    with pytest.raises(SceneValidationError):
        surgery_invariant(toric_engine, scene)


def test_coupon_coordinates_scale_the_value(toric_engine):
    group = toric_engine.group
    values = []
    for coordinates in (["1"], ["2"]):
        scene = add_circle_plexus(s3_sphere(group), group, "S", "Je_0", "e")
        scene.nodes[-1].vertices[2].coordinates = coordinates
        values.append(state_sum(toric_engine, scene).value)
    assert values[1] == values[0] * 2
    assert not values[0].is_zero()


def test_coupon_coordinates_of_wrong_length(toric_engine):
    group = toric_engine.group
    scene = add_circle_plexus(s3_sphere(group), group, "S", "Je_0", "e")
    scene.nodes[-1].vertices[2].coordinates = ["1", "0"]
    with pytest.raises(SceneValidationError, match="coordonnées"):
        state_sum(toric_engine, scene)


# =============================================================================
# KNOTTED CIRCLES
# =============================================================================


@pytest.mark.parametrize("engine_name", ["toric_engine", "z4_engine"])
def test_equator_switches_keep_the_value(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    group = engine.group
    for j in engine.simples.all():
        flat = state_sum(engine, add_circle_plexus(s3_equator(group), group, "N", j.name, j.degree)).value
        for h in group.elements:
            scene = s3_switch_circle(group, j.name, j.degree, detour=h)
            assert state_sum(engine, scene).value == flat, (j.name, h)


@pytest.mark.parametrize(
    "engine_name",
    ["toric_engine", "z4_engine", pytest.param("z3w_engine", marks=pytest.mark.slow)],
)
def test_switch_crossings_keep_the_value(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    group = engine.group
    for g in group.elements:
        for color, degree in bundled_colors(group).items():
            flat = state_sum(engine, add_circle_plexus(s1s2_circle(group, g), group, "N", color, degree)).value
            for h in group.elements:
                scene = s1s2_switch_circle(group, g, color, degree, detour=h)
                assert state_sum(engine, scene).value == flat, (g, color, h)


def test_switch_with_mismatched_detours(z4_engine):
    group = z4_engine.group
    scene = s1s2_switch_circle(group, "1", "J1_0", "1")
    annulus = next(r for r in scene.rims if r.id == "W_A")
    annulus.germs[1].detour = "0"
    with pytest.raises(SceneValidationError, match="ne se raccordent pas"):
        state_sum(z4_engine, scene)


@pytest.mark.parametrize("engine_name", ["toric_engine", "z4_engine"])
def test_curl_multiplies_by_the_twist(engine_name, request):
    engine = request.getfixturevalue(engine_name)
    group = engine.group
    for j in engine.simples.of_degree(group.unit):
        base = state_sum(engine, add_circle_plexus(s3_sphere(group), group, "S", j.name, j.degree)).value
        nu = engine.braiding.nu(j)
        up = state_sum(engine, s3_kink(group, j.name, j.degree, positive=True)).value
        down = state_sum(engine, s3_kink(group, j.name, j.degree, positive=False)).value
        assert up * down == base * base
        assert (up, down) in {(nu * base, nu.inverse() * base), (nu.inverse() * base, nu * base)}, j.name


def test_curl_needs_a_neutral_strand(z4_engine):
    with pytest.raises(SceneValidationError):
        s3_kink(z4_engine.group, "J1_0", "1")


def test_disjoint_union_keeps_the_switches(z4_engine):
    group = z4_engine.group
    first = s1s2_switch_circle(group, "1", "J1_0", "1", detour="1")
    second = s3_sphere(group)
    union = disjoint_union(first, second)
    assert sum(len(n.switches) for n in union.nodes) == 2
    expected = state_sum(z4_engine, first).value * state_sum(z4_engine, second).value
    assert state_sum(z4_engine, union).value == expected


# =============================================================================
# MOVES AND UNIONS
# =============================================================================


def test_stabilization_on_skeleton(toric_engine):
    group = toric_engine.group
    scene = add_circle_plexus(s1s2_node(group, "e"), group, "N", "Je_3", "e")
    value = state_sum(toric_engine, scene).value
    stabilized = stabilize(scene, "w", toric_engine)
    assert len(stabilized.nodes) == len(scene.nodes) + 1
    assert state_sum(toric_engine, stabilized).value == value


def test_stabilization_on_diagram(fib_engine):
    j = fib_engine.simples.all()[-1]
    scene = add_circle_surgery(empty_diagram(), j.name, j.degree)
    value = surgery_invariant(fib_engine, scene).value
    assert value == fib_engine.simples.center.dim(j) / fib_engine.modular.delta
    stabilized = stabilize(scene, 0, fib_engine)
    assert stabilized.omega[0].coupons == 2
    assert surgery_invariant(fib_engine, stabilized).value == value


def test_conjugation_keeps_the_value(z4_engine):
    group = z4_engine.group
    for j in z4_engine.simples.of_degree("1"):
        plexus = add_circle_plexus(s3_sphere(group), group, "S", j.name, j.degree)
        moved = conjugate(plexus, "w", "1", z4_engine)
        assert moved.strands["w"].color == z4_engine.crossing.image_simple("1", j).name
        assert moved.regions == plexus.regions
        assert {g.detour for r in moved.rims for g in r.germs if g.strand == "w"} == {"1"}
        assert state_sum(z4_engine, moved).value == state_sum(z4_engine, plexus).value
        diagram = add_circle_surgery(empty_diagram(), j.name, j.degree)
        assert (
            surgery_invariant(z4_engine, conjugate(diagram, 0, "1", z4_engine)).value
            == surgery_invariant(z4_engine, diagram).value
        )


def test_conjugation_of_a_switch_circle(z4_engine):
    group = z4_engine.group
    for j in z4_engine.simples.of_degree("1"):
        scene = s1s2_switch_circle(group, "1", j.name, j.degree)
        moved = conjugate(scene, "w", "1", z4_engine)
        assert [g.detour for g in moved.rims[2].germs] == [None, "1", None]
        assert state_sum(z4_engine, moved).value == state_sum(z4_engine, scene).value


def test_conjugation_by_unknown_element(z4_engine):
    diagram = add_circle_surgery(empty_diagram(), "J0_0", "0")
    with pytest.raises(SceneValidationError):
        conjugate(diagram, 0, "x", z4_engine)


def test_gauge_leaves_the_invariants(z4_engine, z4_gauged):
    gauged = Engine(z4_gauged)
    assert Counter(gauged.modular.twists) == Counter(z4_engine.modular.twists)
    assert gauged.modular.delta == z4_engine.modular.delta
    group = z4_engine.group
    for g in group.elements:
        scene = lens_circle(group, 2, g)
        assert state_sum(gauged, scene).value == state_sum(z4_engine, scene).value
        diagram = surgeries("l2", group, g)[0]
        assert surgery_invariant(gauged, diagram).value == surgery_invariant(z4_engine, diagram).value


def test_disjoint_union_multiplies(toric_engine):
    group = toric_engine.group
    first, second = s3_sphere(group), lens_node(group, 2, "e")
    union = disjoint_union(first, second)
    assert union.balls == first.balls + second.balls
    expected = state_sum(toric_engine, first).value * state_sum(toric_engine, second).value
    assert state_sum(toric_engine, union).value == expected


def test_connected_sum(toric_engine):
    group = toric_engine.group
    first = surgeries("l2", group, "e")[1]
    second = surgeries("s1s2", group, "e")[0]
    total = connected_sum(first, second)
    assert total.strands == first.strands + second.strands
    tau1 = surgery_invariant(toric_engine, first).value
    tau2 = surgery_invariant(toric_engine, second).value
    assert surgery_invariant(toric_engine, total).value == toric_engine.modular.delta * tau1 * tau2


# =============================================================================
# LEDGERS AND WORKERS
# =============================================================================


def test_state_sum_ledger(z4_engine, tmp_path):
    scene = lens_node(z4_engine.group, 2, "1")
    result = state_sum(z4_engine, scene, ledger=True)
    assert len(result.terms) == coloring_count(scene, z4_engine.cat)
    assert result.recompute() == result.value
    data = json.loads(save_ledger(result, tmp_path / "ledger.json").read_text(encoding="utf-8"))
    assert data["kind"] == "state-sum"
    assert len(data["terms"]) == len(result.terms)


def test_surgery_ledger(toric_engine):
    scene = surgeries("s1s2", toric_engine.group, "e")[1]
    result = surgery_invariant(toric_engine, scene, ledger=True)
    assert len(result.terms) == 16
    assert result.recompute() == result.value
    assert surgery_invariant(toric_engine, scene, ledger=False).terms == []


def test_workers_do_not_change_the_sum(z4_engine, toric_engine):
    scene = s1s2_node(z4_engine.group, "1")
    one = state_sum(z4_engine, scene, ledger=True, workers=1)
    many = state_sum(z4_engine, scene, ledger=True, workers=4)
    assert many.value == one.value
    assert [t.coloring for t in many.terms] == [t.coloring for t in one.terms]

    diagram = surgeries("s1s2", toric_engine.group, "e")[1]
    one = surgery_invariant(toric_engine, diagram, ledger=True, workers=1)
    many = surgery_invariant(toric_engine, diagram, ledger=True, workers=3)
    assert many.value == one.value
    assert [t.colors for t in many.terms] == [t.colors for t in one.terms]


# =============================================================================
# MANIFESTS
# =============================================================================


def test_bundled_manifest_is_equal(toric_engine, tmp_path):
    write_bundled_scenes(tmp_path, {"ge": toric_engine.group})
    comparison = compare_manifest(toric_engine, tmp_path / "scenes" / "ge" / "l2_0.cmp")
    assert comparison.equal
    assert len(comparison.values) == 4
    colored = compare_manifest(toric_engine, tmp_path / "scenes" / "ge" / "l2_0_c0.cmp")
    assert colored.equal
    assert colored.values[0][2] == comparison.values[0][2]


def test_manifest_mismatch(toric_engine, tmp_path):
    group = toric_engine.group
    save_scene(s3_sphere(group), tmp_path / "a.scene")
    save_scene(surgeries("s1s2", group, "e")[0], tmp_path / "b.scene")
    manifest = {"name": "bad", "manifold": "s3", "structure": "e", "plexus": ["a.scene"], "surgery": ["b.scene"]}
    (tmp_path / "bad.cmp").write_text(json.dumps(manifest), encoding="utf-8")
    with pytest.raises(IdentityFailure):
        compare_manifest(toric_engine, tmp_path / "bad.cmp")


def test_manifest_with_wrong_kind(toric_engine, tmp_path):
    save_scene(s3_sphere(toric_engine.group), tmp_path / "a.scene")
    manifest = {"name": "mixed", "manifold": "s3", "structure": "e", "surgery": ["a.scene"]}
    (tmp_path / "mixed.cmp").write_text(json.dumps(manifest), encoding="utf-8")
    with pytest.raises(SceneValidationError):
        compare_manifest(toric_engine, tmp_path / "mixed.cmp")


# =============================================================================
# STATE SPACES
# =============================================================================


@pytest.mark.parametrize("genus,expected", [(0, 1), (1, 4), (2, 16)])
def test_toric_code_state_spaces(toric_engine, genus, expected):
    surface = SurfaceSpec(genus=genus, alphas=["e"] * genus, betas=["e"] * genus)
    result = state_space_dims(toric_engine, surface)
    assert result.statesum == result.surgery == expected
    assert verlinde_count(toric_engine, genus) == expected
    assert result.verlinde is not None


def test_fibonacci_torus(fib_engine):
    result = state_space_dims(fib_engine, SurfaceSpec(genus=1, alphas=["e"], betas=["e"]))
    assert result.surgery == 4


def test_graded_torus(z2_engine):
    result = state_space_dims(z2_engine, SurfaceSpec(genus=1, alphas=["1"], betas=["1"]))
    assert result.statesum == result.surgery == 1
    assert result.verlinde is None


@pytest.mark.parametrize("engine_name,alpha,beta", [("toric_engine", "e", "e"), ("z4_engine", "1", "1"), ("z4_engine", "0", "1")])
def test_commutator_object_is_central(engine_name, alpha, beta, request):
    engine = request.getfixturevalue(engine_name)
    cat, center = engine.cat, engine.simples.center
    handle = commutator_object(engine, alpha, beta)
    assert handle.degree == engine.group.commutator(alpha, beta)
    assert len(handle.obj) == len(cat.simples_of_degree(alpha)) * len(cat.simples_of_degree(beta))
    assert cat.dim_obj(handle.obj) == engine.neutral_dim ** 2
    for c in center.trivial:
        assert not handle.sigma[c].is_zero()
        for d in center.trivial:
            cd = ((c, d),)
            stepwise = cat.id_tensor(((c,),), handle.sigma[d]) @ cat.tensor(handle.sigma[c], cat.identity(((d,),)))
            assert center.sigma(handle, cd) == stepwise


def test_graded_torus_with_two_letters_per_degree(z4_engine):
    result = state_space_dims(z4_engine, SurfaceSpec(genus=1, alphas=["1"], betas=["1"]))
    assert result.statesum == result.surgery > 0


def test_marked_sphere(toric_engine):
    marks = [{"color": "Je_1"}, {"color": "Je_1", "sign": -1}]
    result = state_space_dims(toric_engine, SurfaceSpec(genus=0, marks=marks))
    assert result.surgery == 1
    single = state_space_dims(toric_engine, SurfaceSpec(genus=0, marks=[{"color": "Je_1"}]))
    assert single.surgery == single.statesum == 0


def test_relation_must_hold(z2_engine):
    with pytest.raises(SceneValidationError, match="relation"):
        state_space_dims(z2_engine, SurfaceSpec(genus=0, marks=[{"color": "J1_0"}]))


def test_unknown_mark(toric_engine):
    with pytest.raises(SceneValidationError):
        state_space_dims(toric_engine, SurfaceSpec(genus=0, marks=[{"color": "nope"}]))


def test_one_pair_per_handle():
    with pytest.raises(ValidationError):
        SurfaceSpec(genus=2, alphas=["e"], betas=["e"])


def test_surface_file(tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(json.dumps({"name": "tore", "genus": 1, "alphas": ["e"], "betas": ["e"]}), encoding="utf-8")
    assert load_surface(path).name == "tore"
    path.write_text("{}", encoding="utf-8")
    with pytest.raises(SpecFormatError):
        load_surface(path)
