from fractions import Fraction

import pytest

from qinv.algebra.scalar import Scalar

from qinv.exceptions import SceneValidationError, SpecFormatError
from qinv.fusion.group import FiniteGroup
from qinv.manifolds.coloring import coloring_count, coloring_dim, enumerate_gcolorings
from qinv.manifolds.library import (
    MANIFOLDS,
    add_circle_plexus,
    add_circle_surgery,
    bundled_colors,
    colored_matched_scenes,
    flat_structures,
    lens_circle,
    load_manifest,
    matched_scenes,
    remove_circle_plexus,
    s1s2_circle,
    s1s2_node,
    s1s2_switch_circle,
    s3_kink,
    s3_sphere,
    s3_switch_circle,
    surgeries,
    unknot,
    write_bundled_scenes,
)
from qinv.manifolds.scene import (
    GermSpec,
    PlexusScene,
    SurgeryScene,
    load_scene,
    parse_scene,
    save_scene,
    validate_plexus,
    validate_surgery,
)
from qinv.manifolds.triangulation import Gluing, Triangulation, holonomy_coloring, lens_dual, lens_triangulation
from qinv.seeds import cyclic_cocycle

GROUPS = {
    "trivial": FiniteGroup.trivial(),
    "z2": FiniteGroup.cyclic(2),
    "z3": FiniteGroup.cyclic(3),
    "s3": FiniteGroup.symmetric3(),
}


# =============================================================================
# BUNDLED SCENES
# =============================================================================


@pytest.mark.parametrize("key", sorted(GROUPS))
def test_bundled_scenes_validate(key):
    group = GROUPS[key]
    for _, _, plexus, surgery in matched_scenes(group):
        for scene in plexus:
            assert validate_plexus(scene, group) == ["flatness", "rim degree", "euler characteristic", "node wiring"]
        for scene in surgery:
            assert validate_surgery(scene, group) == ["degrees", "longitude"]


@pytest.mark.parametrize("key", ["z2", "z3"])
def test_colored_bundled_scenes_validate(key):
    group = GROUPS[key]
    found = colored_matched_scenes(group, bundled_colors(group))
    assert len(found) == len(matched_scenes(group)) * len(group.elements)
    for _, g, color, plexus, surgery in found:
        for scene in plexus:
            assert validate_plexus(scene, group)[-1] == "node wiring"
            assert scene.strands["w"].color == color
        for scene in surgery:
            assert validate_surgery(scene, group) == ["degrees", "longitude"]
            assert scene.omega[-1].color == color


@pytest.mark.parametrize("key", sorted(GROUPS))
@pytest.mark.parametrize("manifold", MANIFOLDS)
def test_flat_structures_by_brute_force(key, manifold):
    group = GROUPS[key]
    p = {"s3": 1, "s1s2": 0, "l2": 2, "l3": 3}[manifold]
    homs = [g for g in group.elements if p == 0 or group.power(g, p) == group.unit]
    orbits = {frozenset(group.conj(g, h) for h in group.elements) for g in homs}
    found = flat_structures(manifold, group)
    assert len(found) == len(orbits)
    assert {frozenset(group.conj(g, h) for h in group.elements) for g in found} == orbits


def test_s3_group_structures():
    group = GROUPS["s3"]
    assert len(flat_structures("s1s2", group)) == 3
    assert len(flat_structures("l2", group)) == 2
    assert len(flat_structures("l3", group)) == 2


def test_write_bundled_scenes(tmp_path):
    written = write_bundled_scenes(tmp_path, {"gz3": GROUPS["z3"]})
    manifests = [p for p in written if p.suffix == ".cmp"]
    structures = sum(len(flat_structures(m, GROUPS["z3"])) for m in MANIFOLDS)
    # one plain manifest and one per circle color J{alpha}_0
    assert len(manifests) == structures * (1 + len(GROUPS["z3"].elements))
    colored = load_manifest(tmp_path / "scenes" / "gz3" / "s1s2_1_c2.cmp")
    assert colored.color == "J2_0"
    assert all((tmp_path / "scenes" / "gz3" / name).exists() for name in colored.plexus + colored.surgery)
    scene = load_scene(next(p for p in written if p.name.endswith("lens_hopf.scene")))
    assert isinstance(scene, SurgeryScene)


# =============================================================================
# COLORINGS
# =============================================================================


def test_coloring_count(z4):
    scene = s1s2_circle(z4.group, "1")
    colorings = list(enumerate_gcolorings(scene, z4))
    assert coloring_count(scene, z4) == len(colorings) == 8
    # last region varies fastest
    assert colorings[0]["A"] == colorings[1]["A"]
    assert colorings[0]["S"] != colorings[1]["S"]


def test_coloring_dim(fib):
    scene = s3_sphere(fib.group)
    dims = {c["S"]: coloring_dim(scene, fib, c) for c in enumerate_gcolorings(scene, fib)}
    assert dims["1"] == 1
    assert dims["t"] == fib.dim("t") ** 2


# =============================================================================
# VALIDATION ERRORS
# =============================================================================


def test_flatness_violation():
    scene = lens_circle(GROUPS["z3"], 2, "1")
    with pytest.raises(SceneValidationError, match="flatness"):
        validate_plexus(scene, GROUPS["z3"])


def test_euler_characteristic_violation():
    scene = s3_sphere(GROUPS["z2"])
    scene.balls = 1
    with pytest.raises(SceneValidationError, match="euler"):
        validate_plexus(scene, GROUPS["z2"])


def test_monodromy_must_preserve_germs():
    group = GROUPS["z2"]
    scene = s1s2_circle(group, "0")
    scene.rims[0].monodromy = 1
    with pytest.raises(SceneValidationError):
        validate_plexus(scene, group)


def test_loose_leg_in_node():
    group = GROUPS["z2"]
    scene = s1s2_node(group, "1")
    scene.nodes[0].arcs.pop()
    with pytest.raises(SceneValidationError, match="node X"):
        validate_plexus(scene, group)


def test_label_outside_group():
    scene = s3_sphere(GROUPS["z2"], label="7")
    with pytest.raises(SceneValidationError):
        validate_plexus(scene, GROUPS["z2"])


def test_longitude_degree():
    group = GROUPS["z3"]
    assert validate_surgery(unknot("ok", "1", 3), group) == ["degrees", "longitude"]
    with pytest.raises(SceneValidationError, match="longitude"):
        validate_surgery(unknot("bad", "1", 1), group)


def test_framing_on_inner_position():
    group = GROUPS["z2"]
    scene = SurgeryScene(name="x", strands=2, word=[1], degrees=["0", "0"], framings={1: 1})
    with pytest.raises(SceneValidationError, match="framings"):
        validate_surgery(scene, group)


# =============================================================================
# COLORED CIRCLES
# =============================================================================


def test_add_then_remove_circle():
    group = GROUPS["z2"]
    base = s3_sphere(group)
    scene = add_circle_plexus(base, group, "S", "J1_0", "1", coupons=2)
    assert validate_plexus(scene, group)
    assert scene.region("S_w").label == "1"
    back, coupons = remove_circle_plexus(scene, "w")
    assert coupons == 2
    assert back.model_dump(exclude={"name"}) == base.model_dump(exclude={"name"})


def test_circle_without_coupon_is_a_circle_rim():
    group = GROUPS["z2"]
    scene = add_circle_plexus(s3_sphere(group), group, "S", "J0_1", "0", coupons=0)
    assert [r.id for r in scene.circle_rims()] == ["O_w"]
    assert scene.nodes == []
    assert validate_plexus(scene, group)


def test_remove_unknown_circle():
    with pytest.raises(SceneValidationError):
        remove_circle_plexus(s3_sphere(GROUPS["z2"]), "w")


def test_add_circle_surgery():
    group = GROUPS["z3"]
    scene = add_circle_surgery(surgeries("l3", group, "1")[0], "J2_0", "2")
    assert scene.strands == 2
    assert scene.framings[1] == 0
    assert scene.link_components() == [0]
    assert validate_surgery(scene, group)


# =============================================================================
# KNOTTED CIRCLES
# =============================================================================


@pytest.mark.parametrize("key", ["z2", "z3"])
def test_switch_circles_validate(key):
    group = GROUPS[key]
    checks = ["flatness", "rim degree", "euler characteristic", "node wiring"]
    for degree in group.elements:
        for h in group.elements:
            assert validate_plexus(s3_switch_circle(group, f"J{degree}_0", degree, detour=h), group) == checks
            for g in group.elements:
                scene = s1s2_switch_circle(group, g, f"J{degree}_0", degree, detour=h)
                assert validate_plexus(scene, group) == checks


def test_kink_validates():
    group = GROUPS["z2"]
    for positive in (True, False):
        scene = s3_kink(group, "J0_1", "0", positive=positive)
        assert validate_plexus(scene, group)[-1] == "node wiring"
        (crossing,) = scene.nodes[0].crossings
        assert crossing.positive is positive


def test_kink_of_graded_strand():
    with pytest.raises(SceneValidationError):
        s3_kink(GROUPS["z2"], "J1_0", "1")


def test_detour_on_region_germ():
    with pytest.raises(ValueError):
        GermSpec(region="A", detour="1")


def test_detour_outside_group():
    group = GROUPS["z2"]
    scene = s3_switch_circle(group, "J1_0", "1")
    scene.rims[2].germs[1].detour = "5"
    with pytest.raises(SceneValidationError):
        validate_plexus(scene, group)


def test_switch_on_unknown_strand():
    group = GROUPS["z2"]
    scene = s3_switch_circle(group, "J1_0", "1")
    scene.nodes[0].switches[0].strand = "v"
    with pytest.raises(SceneValidationError, match="Brin inconnu"):
        validate_plexus(scene, group)


def test_switch_end_without_the_strand():
    group = GROUPS["z2"]
    scene = s3_switch_circle(group, "J1_0", "1")
    scene.nodes[0].switches[0].enter = "e1"
    with pytest.raises(SceneValidationError):
        validate_plexus(scene, group)


# =============================================================================
# FILES
# =============================================================================


def test_scene_file_round_trip(tmp_path):
    group = GROUPS["z3"]
    scene = s1s2_node(group, "2")
    path = save_scene(scene, tmp_path / "s1s2.scene")
    loaded = load_scene(path)
    assert isinstance(loaded, PlexusScene)
    assert loaded == scene


def test_malformed_scene():
    with pytest.raises(SpecFormatError):
        parse_scene('{"kind": "plexus", "name": "x"}')
    with pytest.raises(SpecFormatError):
        parse_scene("not json")


# =============================================================================
# TRIANGULATIONS
# =============================================================================


@pytest.mark.parametrize("p", [2, 3, 4, 5])
def test_lens_triangulation_is_closed_with_one_vertex(p):
    tri = lens_triangulation(p)
    tri.check()
    assert tri.vertex_count() == 1
    assert len(set(tri.edge_classes().values())) == p + 1
    assert tri.euler_characteristic() == 0


@pytest.mark.parametrize("key", ["z2", "z3", "s3"])
@pytest.mark.parametrize("p", [2, 3])
def test_flat_colorings_are_the_holonomies(key, p):
    group = GROUPS[key]
    tri = lens_triangulation(p)
    generator = tri.edge_classes()[(0, 0, 1)]
    holonomies = sorted(c[generator] for c in tri.flat_colorings(group))
    assert holonomies == sorted(g for g in group.elements if group.power(g, p) == group.unit)


def test_cocycle_sums_on_lens_spaces():
    group = GROUPS["z3"]
    tri = lens_triangulation(3)
    omega = cyclic_cocycle(3, 1)
    phases = [tri.cocycle_sum(omega, holonomy_coloring(tri, group, a)) for a in "012"]
    assert phases == [Scalar.one(3), Scalar.zeta(3), Scalar.zeta(3)]
    mirrored = tri.mirrored()
    assert [mirrored.cocycle_sum(omega, holonomy_coloring(mirrored, group, a)) for a in "012"] == [
        x.conjugate() for x in phases
    ]
    assert tri.dijkgraaf_witten(group, omega) == (1 + 2 * Scalar.zeta(3)) * Fraction(1, 3)
    assert tri.dijkgraaf_witten(group, cyclic_cocycle(3, 0)) == 1


def test_holonomy_must_be_flat():
    with pytest.raises(SceneValidationError):
        holonomy_coloring(lens_triangulation(2), GROUPS["z3"], "1")


def test_open_or_unoriented_triangulations():
    with pytest.raises(SceneValidationError, match="libres"):
        Triangulation("open", [1], [Gluing((0, 0), (0, 3))]).check()
    with pytest.raises(SceneValidationError, match="orienté"):
        Triangulation("twisted", [1], [Gluing((0, 0), (0, 2)), Gluing((0, 1), (0, 3))]).check()


@pytest.mark.parametrize("key", ["trivial", "z3", "s3"])
@pytest.mark.parametrize("p", [2, 3])
def test_lens_dual_skeletons_validate(key, p):
    group = GROUPS[key]
    for g in flat_structures(f"l{p}", group):
        scene = lens_dual(group, p, g)
        assert validate_plexus(scene, group) == ["flatness", "rim degree", "euler characteristic", "node wiring"]
        assert (len(scene.regions), len(scene.rims), len(scene.nodes), scene.balls) == (p + 1, 2 * p, p, 1)
        assert all(len(node.arcs) == 6 for node in scene.nodes)
