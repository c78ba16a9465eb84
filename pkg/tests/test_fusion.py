import pytest

from qinv import seeds
from qinv.algebra.scalar import Scalar
from qinv.exceptions import (
    DimensionError,
    FusionError,
    GradingError,
    GroupAxiomError,
    PentagonError,
    PivotalError,
    SpecFormatError,
    SphericalityError,
    UnitError,
)
from qinv.fusion.group import FiniteGroup
from qinv.fusion.morphism import UNIT_OBJ, obj_tensor, word
from qinv.fusion.spec import dump_category, parse_category
from qinv.fusion.validate import validate


def random_morphism(cat, src, tgt, rng):
    n = cat.hom_dim(src, tgt)
    values = [Scalar.rational(rng.randint(-3, 3), cat.conductor) for _ in range(n)]
    return cat.from_flat(src, tgt, values)


@pytest.mark.parametrize("name", sorted(seeds.BUNDLED_CATEGORIES))
def test_dump_is_stable(name):
    text = dump_category(seeds.bundled(name))
    assert dump_category(parse_category(text)) == text


@pytest.mark.parametrize("name", sorted(seeds.BUNDLED_CATEGORIES))
def test_bundled_categories_validate(name):
    _, report = validate(seeds.bundled(name))
    assert "pentagon: ok" in report.summary()
    assert report.passed[-1] == "spherical"


EXPECTED_FAILURES = {
    "pentagon": PentagonError,
    "grading": GradingError,
    "fusion": FusionError,
    "unit": UnitError,
    "dimension": DimensionError,
    "pivotal": PivotalError,
    "spherical": SphericalityError,
}


@pytest.mark.parametrize("axiom", sorted(EXPECTED_FAILURES))
def test_mutations_fail_on_their_axiom(axiom):
    spec = seeds.mutations()[axiom]
    reparsed = parse_category(dump_category(spec))
    with pytest.raises(EXPECTED_FAILURES[axiom]):
        validate(reparsed)


def test_nonspherical_pivotal_reaches_the_sphericity_check():
    spec = seeds.mutations()["spherical"]
    with pytest.raises(SphericalityError, match=r"dim_l\(1\)"):
        validate(spec)


def test_bad_group_table():
    with pytest.raises(GroupAxiomError):
        FiniteGroup.from_table(["a", "b"], [["a", "a"], ["a", "b"]])


def test_malformed_file():
    with pytest.raises(SpecFormatError):
        parse_category('{"name": "x"}')


def test_fibonacci_dimensions(fib):
    phi = seeds.golden()
    assert fib.dim("t") == phi
    assert fib.dim_component() == 2 + phi
    _, _, f = fib.F_matrix("t", "t", "t", "t")
    assert f @ f == f.identity(2, 5)


def test_trees_and_hom_dimension(fib):
    w = ("t", "t", "t")
    assert len(fib.trees(w, "1")) == 1
    assert len(fib.trees(w, "t")) == 2
    x, y = word("t", "t"), word("t")
    assert fib.hom_dim(x, y) == 1
    assert fib.hom_dim(x, x) == 2


def test_tensor_is_associative(fib, rng):
    a, b, c = word("t", "t"), word("t"), word("t", "t")
    f = random_morphism(fib, a, a, rng)
    g = random_morphism(fib, b, obj_tensor(b, b), rng)
    h = random_morphism(fib, c, word("t"), rng)
    assert fib.tensor(fib.tensor(f, g), h) == fib.tensor(f, fib.tensor(g, h))


def test_interchange_law(fib, rng):
    x, y = word("t", "t"), word("t")
    f1, f2 = random_morphism(fib, x, x, rng), random_morphism(fib, x, x, rng)
    g1, g2 = random_morphism(fib, y, y, rng), random_morphism(fib, y, y, rng)
    assert fib.tensor(f1, g1) @ fib.tensor(f2, g2) == fib.tensor(f1 @ f2, g1 @ g2)


def test_twisted_tensor_identity_laws(z3w):
    one = z3w.identity(UNIT_OBJ)
    x = word("1", "2")
    assert z3w.tensor(one, z3w.identity(x)) == z3w.identity(x)
    assert z3w.tensor(z3w.identity(x), one) == z3w.identity(x)


@pytest.mark.parametrize("fixture", ["fib", "z3w", "z4_gauged"])
def test_traces_agree_with_dimensions(fixture, request):
    cat = request.getfixturevalue(fixture)
    for a in cat.simples:
        for b in cat.simples:
            x = word(a, b)
            ident = cat.identity(x)
            assert cat.trace(ident) == cat.dim(a) * cat.dim(b)
            assert cat.trace_left(ident) == cat.trace(ident)
            assert cat.trace_right(ident) == cat.trace(ident)


def test_word_duality_zigzag(fib):
    x = word("t", "t")
    xd = (fib.dual_word(x[0]),)
    zig = fib.tensor(fib.identity(x), fib.ev(x)) @ fib.tensor(fib.coev(x), fib.identity(x))
    assert zig == fib.identity(x)
    zig2 = fib.tensor(fib.identity(xd), fib.evt(x)) @ fib.tensor(fib.coevt(x), fib.identity(xd))
    assert zig2 == fib.identity(xd)


def test_sum_object_trace(fib):
    x = word("t") + word("1") + word("t", "t")
    assert fib.trace(fib.identity(x)) == fib.dim_obj(x)
    assert fib.trace_left(fib.identity(x)) == fib.dim_obj(x)
