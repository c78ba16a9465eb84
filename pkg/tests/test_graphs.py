from fractions import Fraction

import pytest

from qinv import seeds
from qinv.algebra.matrix import Mat
from qinv.algebra.scalar import parse_scalar
from qinv.exceptions import CompositionError, SceneValidationError, SpecFormatError
from qinv.fusion.morphism import obj_tensor
from qinv.graphs.files import (
    StripFile,
    evaluate_net_file,
    evaluate_strip_file,
    load_net_file,
    parse_net_file,
    save_net_file,
)
from qinv.graphs.links import BraidClosure, split_union
from qinv.graphs.net import (
    Leg,
    MultiplicityModule,
    Net,
    NetVertex,
    evaluate_net,
    evaluate_on_sphere,
    hopf_net,
    pairing_matrix,
    tetrahedron_net,
    theta_net,
    validate_net,
)
from qinv.graphs.strip import Braid, Coupon, StripDiagram, Twist, Unbraid


TETRAHEDRON_EDGES = ("ab", "ac", "ad", "bc", "bd", "cd")


def legs_of(*simples):
    return [Leg(f"e{k}", ((a,),), 1) for k, a in enumerate(simples)]


def power(m, n):
    out = m
    for _ in range(n - 1):
        out = out @ m
    return out


# =============================================================================
# MULTIPLICITY MODULES
# =============================================================================


@pytest.mark.parametrize("n", [3, 4])
def test_full_rotation_is_identity(fib, n):
    module = MultiplicityModule(fib, legs_of(*["t"] * n))
    rows = module.rotation_matrix(1)
    one_step = Mat(rows, module.dim, fib.conductor)
    assert power(one_step, n) == Mat.identity(module.dim, fib.conductor)
    assert Mat(module.rotation_matrix(n), module.dim, fib.conductor) == Mat.identity(module.dim, fib.conductor)


def test_twisted_rotation_order(z3w):
    module = MultiplicityModule(z3w, legs_of("1", "1", "1"))
    assert module.dim == 1
    assert Mat(module.rotation_matrix(3), 1, z3w.conductor) == Mat.identity(1, z3w.conductor)


def test_rotation_must_keep_the_word(fib):
    module = MultiplicityModule(fib, legs_of("t", "t", "1"))
    with pytest.raises(SceneValidationError):
        module.rotation_matrix(1)


def test_theta_pairing_is_nondegenerate(fib):
    g = Mat(pairing_matrix(fib, legs_of("t", "t", "t", "t")), 2, fib.conductor)
    assert g.is_invertible()


# =============================================================================
# NETS ON THE SPHERE
# =============================================================================


def test_theta_value_does_not_depend_on_the_face(fib):
    legs = legs_of("t", "t", "t")
    net = theta_net(legs)
    a = MultiplicityModule(fib, net.vertices[0].legs).basis()[0]
    b = MultiplicityModule(fib, net.vertices[1].legs).basis()[0]
    values = {str(evaluate_on_sphere(fib, net, {"a": a, "b": b}, infinity=k)) for k in range(len(net.faces()))}
    assert len(values) == 1


def random_vector(module, rng):
    basis = module.basis()
    out = basis[0].scale(rng.randint(1, 3))
    for vec in basis[1:]:
        out = out + vec.scale(rng.randint(-3, 3))
    return out


def test_sphericity_on_random_theta_nets(fib, rng):
    for _ in range(20):
        n = rng.randint(3, 5)
        net = theta_net(legs_of(*["t"] * n), shift=rng.randrange(n))
        a = random_vector(MultiplicityModule(fib, net.vertices[0].legs), rng)
        b = random_vector(MultiplicityModule(fib, net.vertices[1].legs), rng)
        values = {str(evaluate_on_sphere(fib, net, {"a": a, "b": b}, infinity=k)) for k in range(len(net.faces()))}
        assert len(values) == 1


def test_tetrahedron_is_planar(fib):
    t = (("t",),)
    net = tetrahedron_net({e: t for e in TETRAHEDRON_EDGES})
    validate_net(fib, net)
    assert len(net.faces()) == 4


def test_tetrahedron_recovers_the_f_symbol(fib):
    # all vertices carry the rotation-invariant vector of Hom(1, t t t)
    t = (("t",),)
    v = MultiplicityModule(fib, legs_of("t", "t", "t")).basis()[0]
    theta = evaluate_net(fib, theta_net(legs_of("t", "t", "t")), {"a": v, "b": v})
    tet = evaluate_net(fib, tetrahedron_net({e: t for e in TETRAHEDRON_EDGES}), {x: v for x in "abcd"})
    left, right, f = fib.F_matrix("t", "t", "t", "t")
    i = next(k for k, key in enumerate(left) if key[0] == "t")
    j = next(k for k, key in enumerate(right) if key[0] == "t")
    assert f[i, j] == 1 - seeds.golden()
    assert tet * fib.dim("t") == f[i, j] * theta * theta


def test_sphericity_on_random_tetrahedra(z3w, rng):
    for _ in range(20):
        x, y, z = (rng.randrange(3) for _ in range(3))
        degrees = {"ab": x, "ac": y, "ad": -x - y, "bc": z, "bd": x - z, "cd": y + z}
        net = tetrahedron_net({e: ((str(g % 3),),) for e, g in degrees.items()})
        validate_net(z3w, net)
        vectors = {v.name: random_vector(MultiplicityModule(z3w, v.legs), rng) for v in net.vertices}
        values = {str(evaluate_on_sphere(z3w, net, vectors, infinity=k)) for k in range(4)}
        assert len(values) == 1
        assert evaluate_net(z3w, net, vectors) != 0


def test_missing_vector(fib):
    with pytest.raises(SceneValidationError):
        evaluate_net(fib, theta_net(legs_of("t", "t", "t")), {})


def test_non_planar_rotation_system(fib):
    t = (("t",),)
    net = Net([NetVertex("v", [Leg("x", t, 1), Leg("y", t, 1), Leg("x", t, -1), Leg("y", t, -1)])])
    with pytest.raises(SceneValidationError):
        validate_net(fib, net)


def test_hopf_net_is_the_s_matrix(toric_engine):
    ones = toric_engine.simples.of_degree(toric_engine.group.unit)
    s = toric_engine.modular.s
    for i, a in enumerate(ones):
        for j, b in enumerate(ones):
            assert evaluate_net(toric_engine.cat, hopf_net(toric_engine.braiding, a, b), {}) == s[i, j]


def test_mirror_hopf_is_conjugate(fib_engine):
    ones = fib_engine.simples.all()
    for a in ones:
        for b in ones:
            value = evaluate_net(fib_engine.cat, hopf_net(fib_engine.braiding, a, b), {})
            mirror = evaluate_net(fib_engine.cat, hopf_net(fib_engine.braiding, a, b, mirror=True), {})
            assert mirror == value.conjugate()


# =============================================================================
# STRIP DIAGRAMS AND CLOSURES
# =============================================================================


def test_identity_coupon_closes_to_dimension(z4_engine):
    cat, center = z4_engine.cat, z4_engine.simples.center
    for j in z4_engine.simples.all():
        diagram = StripDiagram([j], [Coupon(0, 1, cat.identity(j.obj), (j,))])
        assert z4_engine.evaluator.close(diagram) == center.dim(j)


def test_mistyped_coupon(z4_engine):
    j, k = z4_engine.simples.of_degree("1")[0], z4_engine.simples.of_degree("0")[0]
    diagram = StripDiagram([j], [Coupon(0, 1, z4_engine.cat.identity(k.obj), (k,))])
    with pytest.raises(CompositionError):
        z4_engine.evaluator.close(diagram)


@pytest.mark.parametrize("framing", [1, -1])
def test_framed_unknot(fib_engine, framing):
    unit = fib_engine.group.unit
    center = fib_engine.simples.center
    for j in fib_engine.simples.of_degree(unit):
        closure = BraidClosure(1, [], [unit], {0: framing})
        expected = fib_engine.braiding.nu(j) ** framing * center.dim(j)
        assert closure.evaluate(fib_engine.evaluator, {0: j}) == expected


def test_hopf_closure_is_the_s_matrix(toric_engine):
    unit = toric_engine.group.unit
    ones = toric_engine.simples.of_degree(unit)
    s = toric_engine.modular.s
    closure = BraidClosure(2, [1, 1], [unit, unit])
    assert len(closure.components()) == 2
    for i, a in enumerate(ones):
        for j, b in enumerate(ones):
            assert closure.evaluate(toric_engine.evaluator, {0: a, 1: b}) == s[i, j]


def test_split_union_shifts_the_second_braid():
    first = BraidClosure(2, [1, 1], ["e", "e"], {0: 3})
    second = BraidClosure(2, [-1], ["e", "e"], {0: 1})
    union = split_union(first, second)
    assert union.word == [1, 1, -3]
    assert union.framings == {0: 3, 2: 1}
    assert [c[0] for c in union.components()] == [0, 1, 2]


def test_generator_out_of_range():
    with pytest.raises(SceneValidationError):
        BraidClosure(2, [2], ["e", "e"])


def test_braid_then_unbraid_is_the_identity(z4_engine):
    evaluator, crossing, cat = z4_engine.evaluator, z4_engine.crossing, z4_engine.cat
    simples = z4_engine.simples.all()
    for a in simples[::3]:
        for b in simples[1::3]:
            back = cat.identity(crossing.phi(b.degree, a).obj)
            diagram = StripDiagram([a, b], [Braid(0), Unbraid(0, source=a, psi=back)])
            top, f = evaluator.evaluate(diagram)
            assert top[0] is a and top[1] is b
            assert f == cat.identity(f.src)


def test_braid_relation(toric_engine):
    evaluator = toric_engine.evaluator
    simples = toric_engine.simples.all()
    for a in simples:
        for b in simples:
            for c in simples[1:]:
                top1, f1 = evaluator.evaluate(StripDiagram([a, b, c], [Braid(0), Braid(1), Braid(0)]))
                top2, f2 = evaluator.evaluate(StripDiagram([a, b, c], [Braid(1), Braid(0), Braid(1)]))
                assert [j.name for j in top1] == [j.name for j in top2] == [c.name, b.name, a.name]
                assert f1 == f2


@pytest.mark.slow
def test_braid_relation_fibonacci(fib_engine):
    center = fib_engine.simples.center
    j = next(k for k in fib_engine.simples.all() if center.dim(k) == seeds.golden())
    _, f1 = fib_engine.evaluator.evaluate(StripDiagram([j, j, j], [Braid(0), Braid(1), Braid(0)]))
    _, f2 = fib_engine.evaluator.evaluate(StripDiagram([j, j, j], [Braid(1), Braid(0), Braid(1)]))
    assert f1 == f2


def test_stacking_composes(z4_engine):
    evaluator = z4_engine.evaluator
    a, b = z4_engine.simples.of_degree("1")[:2]
    first = StripDiagram([a, b], [Braid(0)])
    top1, f1 = evaluator.evaluate(first)
    second = StripDiagram(top1, [Twist(0), Braid(0)])
    top2, f2 = evaluator.evaluate(second)
    top, f = evaluator.evaluate(first.then(second))
    assert [j.name for j in top] == [j.name for j in top2]
    assert f == f2 @ f1


def test_closure_is_linear_in_a_coupon(toric_engine, rng):
    evaluator, braiding, cat = toric_engine.evaluator, toric_engine.braiding, toric_engine.cat
    simples = toric_engine.simples.all()

    def closed(a, b, h):
        return evaluator.close(StripDiagram([a, b], [Coupon(0, 2, h, (a, b)), Braid(0), Braid(0)]))

    for a in simples:
        for b in simples:
            f = cat.identity(obj_tensor(a.obj, b.obj))
            g = braiding.braid(b, a) @ braiding.braid(a, b)
            x, y = Fraction(rng.randint(-4, 4), 3), Fraction(rng.randint(1, 4))
            assert closed(a, b, f.scale(x) + g.scale(y)) == x * closed(a, b, f) + y * closed(a, b, g)


# =============================================================================
# NET AND STRIP FILES
# =============================================================================


def theta_file(color, vector=None):
    first = {"name": "a", "legs": [{"edge": f"e{k}", "color": color} for k in range(3)]}
    if vector is not None:
        first["vector"] = vector
    second = {"name": "b", "legs": [{"edge": f"e{k}", "color": color, "sign": -1} for k in (2, 1, 0)]}
    return parse_net_file({"kind": "net", "name": "theta", "vertices": [first, second]})


def hopf_file(a, b):
    return parse_net_file(
        {
            "kind": "net",
            "name": "hopf",
            "crossings": [
                {"name": "f", "over": a, "under": b, "edges": ["ea2", "eb2", "eb1", "ea1"]},
                {"name": "g", "over": b, "under": a, "edges": ["eb1", "ea1", "ea2", "eb2"]},
            ],
        }
    )


def test_theta_file_matches_the_pairing(fib_engine):
    values = evaluate_net_file(fib_engine.braiding, theta_file("t"))
    expected = pairing_matrix(fib_engine.cat, legs_of("t", "t", "t"))[0][0]
    assert [v.choice for v in values] == [{"a": 0, "b": 0}]
    assert values[0].value == str(expected)


def test_fixed_vector_scales_the_value(fib_engine):
    free = evaluate_net_file(fib_engine.braiding, theta_file("t"))
    fixed = evaluate_net_file(fib_engine.braiding, theta_file("t", ["-3"]))
    assert fixed[0].choice == {"b": 0}
    assert parse_scalar(fixed[0].value) == -3 * parse_scalar(free[0].value)


def test_hopf_file_matches_the_hopf_net(toric_engine):
    cat, braiding = toric_engine.cat, toric_engine.braiding
    for a in toric_engine.simples.all():
        for b in toric_engine.simples.all():
            (value,) = evaluate_net_file(braiding, hopf_file(a.name, b.name))
            assert value.value == str(evaluate_net(cat, hopf_net(braiding, a, b), {}))


def test_net_file_errors(fib_engine):
    with pytest.raises(SceneValidationError):
        evaluate_net_file(fib_engine.braiding, theta_file("t", ["1", "2"]))
    with pytest.raises(SceneValidationError):
        evaluate_net_file(fib_engine.braiding, theta_file("nope"))
    with pytest.raises(SpecFormatError):
        parse_net_file({"kind": "net", "vertices": [{"name": "a", "legs": [], "extra": 1}]})


def test_strip_file_matches_the_diagram(toric_engine):
    evaluator = toric_engine.evaluator
    simples = toric_engine.simples.all()
    for a in simples:
        for b in simples:
            spec = parse_net_file(
                {"kind": "strip", "bottom": [a.name, b.name], "tiles": [{"tile": "braid", "at": 0}] * 2}
            )
            assert isinstance(spec, StripFile)
            expected = evaluator.close(StripDiagram([a, b], [Braid(0), Braid(0)]))
            assert evaluate_strip_file(evaluator, spec) == expected


def test_strip_file_twist_and_coupon(toric_engine):
    evaluator, center, braiding = toric_engine.evaluator, toric_engine.simples.center, toric_engine.braiding
    for j in toric_engine.simples.all():
        twisted = parse_net_file({"kind": "strip", "bottom": [j.name], "tiles": [{"tile": "twist", "at": 0}]})
        assert evaluate_strip_file(evaluator, twisted) == braiding.nu(j) * center.dim(j)
        plain = parse_net_file({"kind": "strip", "bottom": [j.name], "tiles": [{"tile": "coupon", "at": 0}]})
        assert evaluate_strip_file(evaluator, plain) == center.dim(j)

        def scaled(k):
            tile = {"tile": "coupon", "at": 0, "coordinates": [k]}
            return evaluate_strip_file(evaluator, parse_net_file({"kind": "strip", "bottom": [j.name], "tiles": [tile]}))

        assert scaled("5/2") == Fraction(5, 2) * scaled("1")


def test_strip_file_that_does_not_close(z4_engine):
    a = z4_engine.simples.of_degree("1")[0]
    spec = parse_net_file({"kind": "strip", "bottom": [a.name], "tiles": [{"tile": "coupon", "at": 0, "width": 2}]})
    with pytest.raises(SceneValidationError):
        evaluate_strip_file(z4_engine.evaluator, spec)


def test_net_file_round_trip(tmp_path):
    spec = theta_file("t")
    assert load_net_file(save_net_file(spec, tmp_path / "theta.net")) == spec
